"""Permanents of complex square matrices.

Three independent evaluators are provided:

* :func:`per_naive` sums every diagonal explicitly (``n!`` terms),
* :func:`per_ryser` uses inclusion-exclusion over column subsets,
* :func:`per_glynn` uses the +/-1 sign-vector formula.

Both fast evaluators walk their subsets in Gray-code order, so consecutive
terms differ by one column and the row sums are updated in place. The walk is
split into a low block, whose row sums are produced at once with a cumulative
sum, and a high block iterated in Python; every product of row sums is still
taken over the Gray-code sequence.
"""

from __future__ import annotations

from itertools import islice, permutations

import numpy as np

from .errors import DimensionTooLarge, MultiplicityMismatch, NotUnitary
from .fock import build_submatrix

MAX_NAIVE_DIM = 10
MAX_EXACT_DIM = 24
UNITARY_ATOL = 1e-10

# Bits handled by the vectorised inner block of the Gray-code walk.
_LOW_BITS = 14
_NAIVE_CHUNK = 40320


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square ``complex128`` array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def unitarity_deviation(m) -> float:
    """Largest absolute entry of ``m^dagger m - I``."""
    a = as_matrix(m)
    if a.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def as_unitary(m, atol: float = UNITARY_ATOL) -> np.ndarray:
    """Validate that ``m`` is unitary to within ``atol`` (max-entry norm).

    Returns the matrix as a ``complex128`` array.

    Raises
    ------
    NotUnitary
        If ``max |U^dagger U - I| > atol``.
    """
    a = as_matrix(m)
    dev = unitarity_deviation(a)
    if dev > atol:
        raise NotUnitary(f"matrix is not unitary: max|U^dagger U - I| = {dev:.3e}")
    return a


def _check_dim(n: int, cap: int, name: str) -> None:
    if n > cap:
        raise DimensionTooLarge(f"{name}: order {n} exceeds cap {cap}")


def per_naive(m, max_dim: int = MAX_NAIVE_DIM) -> complex:
    """Permanent as the plain sum over all ``n!`` diagonals."""
    a = as_matrix(m)
    n = a.shape[0]
    _check_dim(n, max_dim, "per_naive")
    if n == 0:
        return 1.0 + 0.0j
    rows = np.arange(n)
    total = 0.0 + 0.0j
    perms = permutations(range(n))
    while True:
        chunk = list(islice(perms, _NAIVE_CHUNK))
        if not chunk:
            break
        cols = np.array(chunk, dtype=np.intp)
        total += a[rows, cols].prod(axis=1).sum()
    return complex(total)


def _lowest_bit(k: np.ndarray) -> np.ndarray:
    # index of the lowest set bit of each k > 0
    return np.frexp((k & -k).astype(np.float64))[1] - 1


def _gray_signed_sum(base: np.ndarray, steps: np.ndarray) -> complex:
    """Return ``sum_S (-1)^|S| prod_i (base_i + sum_{j in S} steps_ij)``.

    ``S`` runs over all subsets of the columns of ``steps`` in Gray-code
    order.
    """
    n, m = steps.shape
    b = min(m, _LOW_BITS)
    h = m - b

    k = np.arange(1, 1 << b, dtype=np.int64)
    flip = _lowest_bit(k)
    gray = k ^ (k >> 1)
    entering = ((gray >> flip) & 1).astype(bool)
    deltas = steps[:, flip].T * np.where(entering, 1.0, -1.0)[:, None]
    low = np.empty((1 << b, n), dtype=np.complex128)
    low[0] = base
    low[1:] = base + np.cumsum(deltas, axis=0)
    low_sign = np.where(np.arange(1 << b) & 1, -1.0, 1.0)

    high = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    for kh in range(1 << h):
        if kh:
            j = (kh & -kh).bit_length() - 1
            col = steps[:, b + j]
            if ((kh ^ (kh >> 1)) >> j) & 1:
                high += col
            else:
                high -= col
        term = low_sign @ np.prod(low + high, axis=1)
        total += -term if kh & 1 else term
    return complex(total)


def per_ryser(m, max_dim: int = MAX_EXACT_DIM) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula, ``O(n 2^n)``.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Complex square matrix. ``n = 0`` gives 1.
    max_dim : int
        Refuse orders above this.

    Returns
    -------
    complex
    """
    a = as_matrix(m)
    n = a.shape[0]
    _check_dim(n, max_dim, "per_ryser")
    if n == 0:
        return 1.0 + 0.0j
    s = _gray_signed_sum(np.zeros(n, dtype=np.complex128), a)
    return -s if n & 1 else s


def per_glynn(m, max_dim: int = MAX_EXACT_DIM) -> complex:
    """Permanent by Glynn's formula with the first sign held at +1."""
    a = as_matrix(m)
    n = a.shape[0]
    _check_dim(n, max_dim, "per_glynn")
    if n == 0:
        return 1.0 + 0.0j
    # Flipping delta_j from +1 to -1 moves each row sum by -2 a_ij.
    s = _gray_signed_sum(a.sum(axis=1), -2.0 * a[:, 1:])
    return s / float(1 << (n - 1))


_METHODS = {"naive": per_naive, "ryser": per_ryser, "glynn": per_glynn}


def permanent(m, method: str = "ryser", max_dim: int | None = None) -> complex:
    """Dispatch to one of ``"naive"``, ``"ryser"`` or ``"glynn"``."""
    try:
        fn = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown permanent method {method!r}") from None
    return fn(m) if max_dim is None else fn(m, max_dim=max_dim)


def per_repeated(m, row_mult, col_mult, max_dim: int = MAX_EXACT_DIM) -> complex:
    """Permanent of the index-repeated matrix ``m[(1^r1, 2^r2, ...)|(1^c1, ...)]``.

    Row ``i`` of ``m`` is repeated ``row_mult[i]`` times and column ``j`` is
    repeated ``col_mult[j]`` times; the expanded matrix is materialised and
    handed to :func:`per_glynn`. Expanded matrices have large, nearly
    cancelling Ryser terms; the signed sums in Glynn's formula stay smaller
    and lose about two fewer digits.
    """
    a = as_matrix(m)
    rows = [int(x) for x in row_mult]
    cols = [int(x) for x in col_mult]
    if sum(rows) != sum(cols):
        raise MultiplicityMismatch(
            f"row multiplicities sum to {sum(rows)}, column multiplicities to {sum(cols)}"
        )
    _check_dim(sum(rows), max_dim, "per_repeated")
    return per_glynn(build_submatrix(a, rows, cols), max_dim=max_dim)
