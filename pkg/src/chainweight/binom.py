"""Exact binomial coefficients and multiplicative weights of nested chains."""

from __future__ import annotations

import math
import threading
from typing import Sequence

# Pascal rows 0..(_CACHE_ROWS - 1) are materialized on demand; the hot loops
# in the optimizers re-query the same small rows constantly.  Larger inputs
# go straight to math.comb so memory stays bounded.
_CACHE_ROWS = 512

_rows: list[list[int]] = [[1]]
_lock = threading.Lock()


def binomial(n: int, k: int) -> int:
    """C(n, k); returns 0 whenever k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    if n >= _CACHE_ROWS:
        return math.comb(n, k)
    if n >= len(_rows):
        with _lock:
            while len(_rows) <= n:
                prev = _rows[-1]
                row = [1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1]
                _rows.append(row)
    return _rows[n][k]


def chain_weight(n: int, sizes: Sequence[int]) -> int:
    """Number of nested tuples G_1 < ... < G_t of subsets of [n] with the given sizes.

    Equals C(n, s_t) * C(s_t, s_{t-1}) * ... * C(s_2, s_1).  A single size s
    reduces to C(n, s).
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be nonempty")
    for lo, hi in zip(sizes, sizes[1:]):
        if lo >= hi:
            raise ValueError(f"sizes must be strictly increasing, got {sizes}")
    if sizes[0] < 0 or sizes[-1] > n:
        raise ValueError(f"sizes must lie in [0, {n}], got {sizes}")
    weight = binomial(n, sizes[-1])
    for lo, hi in zip(sizes, sizes[1:]):
        weight *= binomial(hi, lo)
    return weight
