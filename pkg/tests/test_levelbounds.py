import math
from fractions import Fraction
from itertools import combinations

import pytest

from chainweight import (
    Antichain,
    CustomPairwise,
    ErdosWindow,
    IntegerRatio,
    KatonaGap,
    RatioLambda,
    allowed_levels,
    best_ratio_window,
    erdos_bound,
    forbidden_pair,
    integer_ratio_levels,
    katona_bound,
    ratio_window_weight,
    residue_class_weights,
    size_bound,
    sperner_bound,
)

RATIOS = [Fraction(3, 2), Fraction(5, 3), Fraction(2), Fraction(5, 2)]


def named_conditions(n):
    conds = [Antichain()]
    conds += [ErdosWindow(k) for k in range(1, n + 1)]
    conds += [KatonaGap(k) for k in range(1, n + 1)]
    conds += [RatioLambda(r) for r in RATIOS]
    conds += [IntegerRatio(c) for c in (2, 3)]
    return conds


def exhaustive_level_optimum(n, cond):
    # Independent oracle: scan every subset of {0..n} with math.comb weights.
    best_value = -1
    best_witness = None
    for t in range(n + 2):
        for levels in combinations(range(n + 1), t):
            if any(forbidden_pair(cond, a, b) for a, b in combinations(levels, 2)):
                continue
            value = sum(math.comb(n, h) for h in levels)
            if value > best_value or (value == best_value and levels < best_witness):
                best_value = value
                best_witness = levels
    return best_value, best_witness


def as_custom(cond, n):
    pairs = frozenset(
        (a, b)
        for a in range(n + 1)
        for b in range(a + 1, n + 1)
        if forbidden_pair(cond, a, b)
    )
    return CustomPairwise(n, pairs)


def test_size_bound_examples():
    assert size_bound(4, Antichain()) == size_bound(4, Antichain())
    r = size_bound(4, Antichain())
    assert (r.value, r.witness) == (6, (2,))
    r = size_bound(6, ErdosWindow(1))
    assert (r.value, r.witness) == (35, (2, 3))
    r = size_bound(6, KatonaGap(3))
    assert (r.value, r.witness) == (22, (0, 3, 6))


def test_size_bound_matches_exhaustive_oracle():
    for n in range(0, 9):
        for cond in named_conditions(min(n, 5) or 1):
            value, witness = exhaustive_level_optimum(n, cond)
            result = size_bound(n, cond)
            assert result.value == value, (n, cond)
            assert result.witness == witness, (n, cond)
            assert allowed_levels(cond, result.witness)
            assert sum(math.comb(n, h) for h in result.witness) == result.value


def test_size_bound_custom_branch_and_bound_matches_dp():
    # The same condition compiled to a table must give the same optimum and
    # witness through the branch-and-bound route.
    for n in (5, 9, 14):
        for cond in named_conditions(5):
            direct = size_bound(n, cond)
            tabled = size_bound(n, as_custom(cond, n))
            assert tabled.method == "branch-and-bound"
            assert (tabled.value, tabled.witness) == (direct.value, direct.witness)


def test_size_bound_custom_oracle_small():
    cond = CustomPairwise(6, frozenset({(0, 1), (2, 4), (3, 6), (1, 5)}))
    value, witness = exhaustive_level_optimum(6, cond)
    result = size_bound(6, cond)
    assert (result.value, result.witness) == (value, witness)


def test_size_bound_random_custom_tables():
    import random

    rng = random.Random(424242)
    for _ in range(40):
        n = rng.randint(0, 10)
        pairs = frozenset(
            (a, b)
            for a in range(n + 1)
            for b in range(a + 1, n + 1)
            if rng.random() < rng.choice((0.15, 0.4, 0.8))
        )
        cond = CustomPairwise(n, pairs)
        value, witness = exhaustive_level_optimum(n, cond)
        result = size_bound(n, cond)
        assert (result.value, result.witness) == (value, witness), (n, pairs)


def test_size_bound_degenerate_n0():
    for cond in named_conditions(1):
        result = size_bound(0, cond)
        assert (result.value, result.witness) == (1, (0,))


def test_sperner_bound_examples():
    assert sperner_bound(4) == 6
    assert sperner_bound(1) == 1
    assert sperner_bound(5) == 10


def test_erdos_bound_examples():
    assert erdos_bound(6, 1) == 35 == math.comb(6, 2) + math.comb(6, 3)
    assert erdos_bound(5, 2) == 25 == 5 + 10 + 10
    for n in range(0, 12):
        for k in range(n, n + 4):
            if k >= 1:
                assert erdos_bound(n, k) == 2**n


def test_katona_bound_examples():
    assert katona_bound(6, 3) == 22
    for n in range(0, 16):
        assert katona_bound(n, 1) == 2**n
    for n in range(1, 31):
        assert katona_bound(n, 2) == 2 ** (n - 1)


def test_residue_class_weights_examples():
    values = dict(residue_class_weights(6, 3))
    assert values == {
        Fraction(-1): 21,
        Fraction(0): 22,
        Fraction(1): 21,
    }
    for n in range(1, 31):
        classes = residue_class_weights(n, 2)
        assert all(weight == 2 ** (n - 1) for _, weight in classes)


def test_residue_class_weights_odd_n_middle_tie():
    values = dict(residue_class_weights(7, 3))
    assert set(values) == {Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)}
    assert values[Fraction(-1, 2)] == values[Fraction(1, 2)] == 43
    assert values[Fraction(3, 2)] == 42


def test_residue_classes_partition_and_sum():
    for n in range(0, 20):
        for k in range(2, 8):
            classes = residue_class_weights(n, k)
            assert len(classes) == k
            assert sum(weight for _, weight in classes) == 2**n
            offsets = [offset for offset, _ in classes]
            assert all(-Fraction(k, 2) < o <= Fraction(k, 2) for o in offsets)


def test_centered_residue_class_dominates():
    # For n >= k, weights strictly decrease as the class offset moves away
    # from n/2; mirrored offsets always tie.
    for n in range(2, 41):
        for k in range(3, 11):
            classes = residue_class_weights(n, k)
            for (off_a, val_a), (off_b, val_b) in combinations(classes, 2):
                if abs(off_a) == abs(off_b):
                    assert val_a == val_b, (n, k, off_a, off_b)
                elif n >= k and abs(off_a) < abs(off_b):
                    assert val_a > val_b, (n, k, off_a, off_b)


def test_gap_optimum_structure():
    # Every maximal-weight gap set starts below k, steps by exactly k, and
    # ends above n - k; checked by enumerating all optimal sets.
    for n in range(1, 21):
        for k in range(1, 6):
            best_value = -1
            optima = []
            for levels in _maximal_gap_sets(n, k):
                value = sum(math.comb(n, h) for h in levels)
                if value > best_value:
                    best_value = value
                    optima = [levels]
                elif value == best_value:
                    optima.append(levels)
            assert best_value == size_bound(n, KatonaGap(k)).value
            assert best_value == katona_bound(n, k)
            for levels in optima:
                assert levels[0] < k
                assert all(b - a == k for a, b in zip(levels, levels[1:]))
                assert levels[-1] > n - k


def _maximal_gap_sets(n, k):
    # All inclusion-maximal subsets of {0..n} with consecutive gaps >= k:
    # start within k of 0, step in [k, 2k-1], end within k of n.  Optimal
    # sets are maximal because weights are positive.
    out = []

    def extend(prefix):
        last = prefix[-1]
        if last > n - k:
            out.append(tuple(prefix))
            return
        for step in range(k, 2 * k):
            if last + step <= n:
                prefix.append(last + step)
                extend(prefix)
                prefix.pop()

    for start in range(min(k, n + 1)):
        extend([start])
    return out


def test_ratio_window_weight_examples():
    assert ratio_window_weight(6, 3, Fraction(3, 2)) == 35
    assert ratio_window_weight(6, 4, Fraction(3, 2)) == 21
    # A window that holds a single term reduces to one binomial.
    assert ratio_window_weight(10, 3, Fraction(4, 3)) == math.comb(10, 3)


def test_best_ratio_window_examples():
    assert best_ratio_window(6, Fraction(3, 2)) == (35, 3)
    assert best_ratio_window(9, Fraction(2)) == (372, 4)
    for n in range(1, 12):
        assert best_ratio_window(n, Fraction(n + 1)) == (2**n - 1, 1)


def test_best_ratio_window_matches_exhaustive():
    for n in range(1, 25):
        for ratio in RATIOS:
            value, k = best_ratio_window(n, ratio)
            per_k = [ratio_window_weight(n, kk, ratio) for kk in range(1, n + 1)]
            assert value == max(per_k)
            assert k == 1 + per_k.index(max(per_k))


def test_integer_ratio_levels_examples():
    assert integer_ratio_levels(9, 2) == (4, 5, 6, 7)
    assert integer_ratio_levels(6, 2) == (3, 4, 5)
    assert integer_ratio_levels(2, 2) == (1,)


def test_integer_ratio_levels_window_attains_optimum():
    for n in range(1, 41):
        for c in (2, 3):
            levels = integer_ratio_levels(n, c)
            value, _ = best_ratio_window(n, Fraction(c))
            window_min = n // (c + 1) + 1
            assert levels == tuple(
                range(window_min, min(c * window_min - 1, n) + 1)
            )
            assert ratio_window_weight(n, window_min, Fraction(c)) == value
            assert sum(math.comb(n, h) for h in levels) == value


def test_closed_forms_agree_with_size_bound():
    for n in range(0, 31):
        assert size_bound(n, Antichain()).value == sperner_bound(n)
        for k in range(1, n + 1):
            assert size_bound(n, ErdosWindow(k)).value == erdos_bound(n, k)
            assert size_bound(n, KatonaGap(k)).value == katona_bound(n, k)
        if n >= 1:
            for ratio in RATIOS:
                assert size_bound(n, RatioLambda(ratio)).value == best_ratio_window(n, ratio)[0]
            for c in (2, 3):
                assert (
                    size_bound(n, IntegerRatio(c)).value
                    == best_ratio_window(n, Fraction(c))[0]
                )


def test_bound_monotone_in_ratio():
    grid = sorted(
        {Fraction(p, q) for p in range(2, 8) for q in range(1, 5) if Fraction(p, q) > 1}
    )
    for n in range(1, 31, 3):
        values = [best_ratio_window(n, r)[0] for r in grid]
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_complement_symmetry_for_difference_conditions():
    conds = [Antichain()] + [ErdosWindow(k) for k in (1, 2, 3)] + [
        KatonaGap(k) for k in (2, 3, 4)
    ]
    for n in range(1, 16):
        for cond in conds:
            result = size_bound(n, cond)
            mirrored = tuple(sorted(n - h for h in result.witness))
            assert allowed_levels(cond, mirrored)
            assert sum(math.comb(n, h) for h in mirrored) == result.value


def test_preconditions_rejected():
    with pytest.raises(ValueError):
        sperner_bound(-1)
    with pytest.raises(ValueError):
        erdos_bound(5, 0)
    with pytest.raises(ValueError):
        katona_bound(5, 0)
    with pytest.raises(ValueError):
        residue_class_weights(5, 1)
    with pytest.raises(ValueError):
        ratio_window_weight(5, 0, Fraction(3, 2))
    with pytest.raises(ValueError):
        ratio_window_weight(5, 6, Fraction(3, 2))
    with pytest.raises(ValueError):
        ratio_window_weight(5, 2, Fraction(1))
    with pytest.raises(ValueError):
        best_ratio_window(0, Fraction(3, 2))
    with pytest.raises(ValueError):
        integer_ratio_levels(5, 1)
