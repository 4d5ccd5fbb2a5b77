"""Combinatorics of photon configurations.

Mode indices are 1-based everywhere they are visible: a mode sequence such as
``(1, 1, 3)`` means two photons in mode 1 and one in mode 3, and has the
occupation vector ``(2, 0, 1)``.
"""

from __future__ import annotations

import math
from itertools import combinations_with_replacement

import numpy as np

from .errors import DimensionTooLarge, EnumerationTooLarge, IndexOutOfRange, PatternMismatch

MAX_SEQUENCES = 10**7
MAX_FACTORIAL_ARG = 33


def factorial(k: int) -> int:
    """Exact ``k!`` for photon counts, refusing ``k > 33``."""
    if k < 0:
        raise ValueError(f"factorial of negative number {k}")
    if k > MAX_FACTORIAL_ARG:
        raise DimensionTooLarge(f"photon count {k} exceeds factorial cap {MAX_FACTORIAL_ARG}")
    return math.factorial(k)


def factorial_product(counts) -> int:
    """``prod_i counts[i]!``"""
    out = 1
    for c in counts:
        out *= factorial(int(c))
    return out


def count_sequences(n: int, modes: int) -> int:
    """``|G_{n,N}| = C(n + N - 1, n)``."""
    return math.comb(n + modes - 1, n)


def enumerate_sequences(n: int, modes: int, limit: int = MAX_SEQUENCES) -> list[tuple[int, ...]]:
    """All non-decreasing sequences of length ``n`` over ``1..modes``.

    Sequences are returned in lexicographic order, each exactly once.

    Raises
    ------
    EnumerationTooLarge
        If there would be more than ``limit`` sequences.
    """
    if n < 0 or modes < 1:
        raise ValueError(f"need n >= 0 and modes >= 1, got n={n}, modes={modes}")
    size = count_sequences(n, modes)
    if size > limit:
        raise EnumerationTooLarge(f"|G_({n},{modes})| = {size} exceeds {limit}")
    return list(combinations_with_replacement(range(1, modes + 1), n))


def multiplicities(w, modes: int) -> tuple[int, ...]:
    """Occupation vector of a mode sequence: how often each mode appears."""
    counts = [0] * modes
    for v in w:
        if not 1 <= v <= modes:
            raise IndexOutOfRange(f"mode index {v} outside 1..{modes}")
        counts[v - 1] += 1
    return tuple(counts)


def sequence_from_occupation(counts) -> tuple[int, ...]:
    """Inverse of :func:`multiplicities`: the sorted sequence with these counts."""
    out: list[int] = []
    for mode, c in enumerate(counts, start=1):
        if c < 0:
            raise ValueError(f"negative occupation {c} in mode {mode}")
        out.extend([mode] * int(c))
    return tuple(out)


def mu(w, modes: int) -> int:
    """``prod_i m_i(w)!`` for the multiplicities ``m_i`` of ``w``."""
    return factorial_product(multiplicities(w, modes))


def build_submatrix(m, row_pattern, col_pattern) -> np.ndarray:
    """Matrix whose row ``i`` is repeated ``row_pattern[i]`` times, column ``j`` ``col_pattern[j]`` times.

    Repeated rows (and columns) appear in ascending mode order, so
    ``build_submatrix(L, (1, 1, 1), (0, 2, 1))`` has columns 2, 2, 3 of ``L``.
    """
    a = np.asarray(m, dtype=np.complex128)
    rows = np.asarray(row_pattern, dtype=np.int64)
    cols = np.asarray(col_pattern, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PatternMismatch(f"expected a square matrix, got shape {a.shape}")
    if rows.shape != (a.shape[0],) or cols.shape != (a.shape[0],):
        raise PatternMismatch(
            f"pattern lengths {rows.shape}, {cols.shape} do not match matrix order {a.shape[0]}"
        )
    if (rows < 0).any() or (cols < 0).any():
        raise PatternMismatch("patterns must be non-negative")
    if rows.sum() != cols.sum():
        raise PatternMismatch(f"pattern totals differ: {rows.sum()} vs {cols.sum()}")
    idx = np.arange(a.shape[0])
    return a[np.ix_(np.repeat(idx, rows), np.repeat(idx, cols))]
