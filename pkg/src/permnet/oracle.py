"""Brute-force reference path for network transforms.

Each input photon group ``(a_i^dagger)^{n_i}`` is expanded with the multinomial
theorem. A term of the full expansion is labelled by a contingency table
``t[i][j]`` (photons sent from input mode ``i`` to output mode ``j``) with
prescribed row sums ``n_i``. Summing those terms directly gives the output
state without ever forming a permanent; this module deliberately imports
nothing from the permanent or sequence-enumeration code.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from .errors import DimensionMismatch, DimensionTooLarge, EnumerationTooLarge, NotUnitary
from .state import FockState

MAX_TABLES = 10**7
MAX_ORACLE_PHOTONS = 10


def _weak_compositions(n: int, parts: int):
    # Ordered so that the matching non-decreasing mode sequences are lexicographic.
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _weak_compositions(n - first, parts - 1):
            yield (first, *rest)


def count_tables(inp, modes: int | None = None) -> int:
    modes = len(inp) if modes is None else modes
    return math.prod(math.comb(int(n) + modes - 1, int(n)) for n in inp)


def enumerate_tables(inp, modes: int | None = None, limit: int = MAX_TABLES) -> list[tuple[tuple[int, ...], ...]]:
    """All non-negative integer tables whose row ``i`` sums to ``inp[i]``.

    ``modes`` is the number of columns (default ``len(inp)``). Tables are
    ordered lexicographically, row by row.
    """
    occ = [int(x) for x in inp]
    if any(x < 0 for x in occ):
        raise ValueError(f"negative occupation in {occ}")
    modes = len(occ) if modes is None else modes
    size = count_tables(occ, modes)
    if size > limit:
        raise EnumerationTooLarge(f"{size} contingency tables exceed {limit}")
    rows = [list(_weak_compositions(n, modes)) for n in occ]
    return list(product(*rows))


def _checked_unitary(u) -> np.ndarray:
    a = np.asarray(u, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))) > 1e-10:
        raise NotUnitary("matrix is not unitary to 1e-10")
    return a


def oracle_transform(u, inp, max_photons: int = MAX_ORACLE_PHOTONS) -> FockState:
    """``U |inp>`` by direct multinomial expansion over contingency tables."""
    a = _checked_unitary(u)
    modes = a.shape[0]
    occ = tuple(int(x) for x in inp)
    if len(occ) != modes:
        raise DimensionMismatch(f"input has length {len(occ)}, network has {modes} modes")
    if sum(occ) > max_photons:
        raise DimensionTooLarge(f"{sum(occ)} photons exceed oracle cap {max_photons}")

    in_weight = math.sqrt(math.prod(math.factorial(n) for n in occ))
    amps: dict[tuple[int, ...], complex] = {}
    for table in enumerate_tables(occ, modes):
        out = tuple(sum(row[j] for row in table) for j in range(modes))
        weight = in_weight * math.sqrt(math.prod(math.factorial(m) for m in out))
        term = 1.0 + 0.0j
        for i, row in enumerate(table):
            for j, t in enumerate(row):
                if t:
                    weight /= math.factorial(t)
                    term *= a[j, i] ** t
        amps[out] = amps.get(out, 0.0) + weight * term
    return FockState(modes, amps)


def oracle_matrix_element(u, out, inp, max_photons: int = MAX_ORACLE_PHOTONS) -> complex:
    """Amplitude of ``|out>`` in :func:`oracle_transform`; zero if absent."""
    state = oracle_transform(u, inp, max_photons)
    key = tuple(int(x) for x in out)
    if len(key) != state.modes:
        raise DimensionMismatch(f"output has length {len(key)}, network has {state.modes} modes")
    return state[key] if key in state else 0.0 + 0.0j


def haar_random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed ``dim x dim`` unitary, deterministic in ``seed``.

    QR-decomposes a matrix of i.i.d. standard complex Gaussians and absorbs
    the phases of ``R``'s diagonal into ``Q``.
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
