"""Counting and maximizing nested ell-chains inside union-of-levels families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .binom import binomial
from .conditions import Condition, level_conflicts, normalize_levels

DEFAULT_NODE_BUDGET = 10**8


class SearchBudgetExceeded(RuntimeError):
    """The level-set search passed its node budget before finishing."""


@dataclass(frozen=True)
class ChainCountResult:
    """An exact ell-chain count with the level set that attains it."""

    count: int
    levels: tuple[int, ...]
    ell: int


def count_chains_levels(n: int, levels: Iterable[int], ell: int) -> int:
    """Number of ell-chains G_1 < ... < G_ell inside the union of the given levels of 2^[n].

    Computed over level sequences: u_1(h) = 1, u_j(h) = sum over lower chosen
    levels h' of C(h, h') * u_{j-1}(h'), and the total is
    sum_h C(n, h) * u_ell(h).  Returns 0 when fewer than ell levels are given.
    """
    if ell < 1:
        raise ValueError(f"ell must be a positive integer, got {ell}")
    hs = normalize_levels(levels)
    if hs and hs[-1] > n:
        raise ValueError(f"levels must lie in [0, {n}], got {hs}")
    return _count_from_sorted(n, hs, ell)


def _count_from_sorted(n: int, hs: tuple[int, ...], ell: int) -> int:
    if len(hs) < ell:
        return 0
    u = [1] * len(hs)
    for _ in range(ell - 1):
        u = [
            sum(binomial(hs[i], hs[j]) * u[j] for j in range(i))
            for i in range(len(hs))
        ]
    return sum(binomial(n, hs[i]) * u[i] for i in range(len(hs)))


def optimal_levels_for_chains(
    n: int,
    cond: Condition,
    ell: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ChainCountResult:
    """Exact maximum of count_chains_levels over all level sets allowed by cond.

    The witness is the lexicographically smallest maximizer (the empty set
    when no allowed set reaches a positive count).  Depth-first enumeration
    over levels with an admissible pruning bound: a branch dies when even
    adding every remaining compatible level cannot beat the incumbent.
    Raises SearchBudgetExceeded after node_budget search nodes.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if ell < 1:
        raise ValueError(f"ell must be a positive integer, got {ell}")
    conflicts = level_conflicts(cond, n)
    best_count = 0
    best_witness: tuple[int, ...] = ()
    nodes = 0

    # Include-first ascending branching makes the first positive maximizer
    # found the lexicographically smallest one; zero-count ties are settled
    # by initializing the incumbent with the empty set.
    def dfs(avail: int, chosen: list[int]) -> None:
        nonlocal best_count, best_witness, nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceeded(
                f"level search exceeded {node_budget} nodes at n={n}, ell={ell}"
            )
        reachable = chosen + _bit_levels(avail)
        if _count_from_sorted(n, tuple(reachable), ell) <= best_count:
            return
        if avail == 0:
            count = _count_from_sorted(n, tuple(chosen), ell)
            if count > best_count:
                best_count = count
                best_witness = tuple(chosen)
            return
        h = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << h)
        chosen.append(h)
        dfs(rest & ~conflicts[h], chosen)
        chosen.pop()
        dfs(rest, chosen)

    dfs((1 << (n + 1)) - 1, [])
    return ChainCountResult(best_count, best_witness, ell)


def _bit_levels(mask: int) -> list[int]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


def window_chain_count(n: int, k: int, ell: int, i: int) -> int:
    """Number of ell-chains in the union of the k+1 consecutive levels {i, ..., i+k}."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not 0 <= i <= n - k:
        raise ValueError(f"need 0 <= i <= n - k, got i={i}, n={n}, k={k}")
    if not 1 <= ell <= k + 1:
        raise ValueError(f"need 1 <= ell <= k + 1, got ell={ell}")
    return _count_from_sorted(n, tuple(range(i, i + k + 1)), ell)


def best_window_for_chains(n: int, k: int, ell: int) -> tuple[int, tuple[int, ...]]:
    """Maximum of window_chain_count over all window positions, with every argmax.

    Returns (count, positions) where positions lists each window start i
    attaining the maximum, in ascending order.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if not 1 <= ell <= k + 1:
        raise ValueError(f"need 1 <= ell <= k + 1, got ell={ell}")
    best_count = -1
    argmax: list[int] = []
    for i in range(n - k + 1):
        count = window_chain_count(n, k, ell, i)
        if count > best_count:
            best_count = count
            argmax = [i]
        elif count == best_count:
            argmax.append(i)
    return best_count, tuple(argmax)
