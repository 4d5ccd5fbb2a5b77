"""Fock-basis action of a passive linear network, written with permanents.

The network unitary ``U`` maps creation operators as
``a_i^dagger -> sum_k U[k, i] a_k^dagger``; column ``i`` describes where a
photon entering mode ``i`` goes. With ``n`` photons in, the amplitude of an
output pattern is the permanent of ``U`` with rows repeated by the output
occupations and columns by the input occupations, divided by the square root
of the occupation factorials.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, DimensionTooLarge, PhotonDeficit
from .fock import enumerate_sequences, factorial_product, multiplicities
from .permanent import MAX_EXACT_DIM, as_unitary, per_repeated
from .state import PRUNE_ATOL, FockState

MAX_TRANSFORM_PHOTONS = 12


def _occupation(v, modes: int, name: str) -> tuple[int, ...]:
    occ = tuple(int(x) for x in v)
    if len(occ) != modes:
        raise DimensionMismatch(f"{name} has length {len(occ)}, network has {modes} modes")
    if any(x < 0 for x in occ):
        raise ValueError(f"{name} has negative occupations: {occ}")
    return occ


def _matrix_element(u: np.ndarray, out, inp, max_photons: int) -> complex:
    n = sum(inp)
    if sum(out) != n:
        return 0.0 + 0.0j
    if n > max_photons:
        raise DimensionTooLarge(f"{n} photons exceed the permanent cap {max_photons}")
    norm = math.sqrt(factorial_product(inp) * factorial_product(out))
    return per_repeated(u, out, inp, max_dim=max_photons) / norm


def matrix_element(u, out, inp, max_photons: int = MAX_EXACT_DIM) -> complex:
    """Amplitude ``<out| U |inp>`` for Fock occupation vectors.

    Returns exactly zero, without evaluating any permanent, when the photon
    numbers of ``out`` and ``inp`` differ.

    Parameters
    ----------
    u : array_like, shape (N, N)
        Network unitary.
    out, inp : sequence of int
        Output and input occupations, length ``N``.
    max_photons : int
        Largest admissible total photon number (the permanent order).
    """
    a = as_unitary(u)
    modes = a.shape[0]
    return _matrix_element(
        a, _occupation(out, modes, "out"), _occupation(inp, modes, "in"), max_photons
    )


def permanent_of_unitary(u, max_dim: int = MAX_EXACT_DIM) -> complex:
    """``per U`` obtained as the amplitude ``<1,...,1| U |1,...,1>``."""
    a = as_unitary(u)
    ones = (1,) * a.shape[0]
    return _matrix_element(a, ones, ones, max_dim)


def _transform_basis(u: np.ndarray, inp: tuple[int, ...], max_photons: int) -> dict:
    n = sum(inp)
    if n > max_photons:
        raise DimensionTooLarge(f"{n} input photons exceed the transform cap {max_photons}")
    modes = u.shape[0]
    in_norm = factorial_product(inp)
    amps = {}
    for w in enumerate_sequences(n, modes):
        out = multiplicities(w, modes)
        amps[out] = per_repeated(u, out, inp) / math.sqrt(in_norm * factorial_product(out))
    return amps


def transform_state(u, inp, max_photons: int = MAX_TRANSFORM_PHOTONS) -> FockState:
    """Full output state ``U |inp>`` expanded over every output pattern.

    Output patterns are visited as non-decreasing mode sequences in
    lexicographic order; amplitudes below ``PRUNE_ATOL`` are dropped.
    """
    a = as_unitary(u)
    occ = _occupation(inp, a.shape[0], "in")
    return FockState(a.shape[0], _transform_basis(a, occ, max_photons)).pruned(PRUNE_ATOL)


def transform_superposition(u, state: FockState, max_photons: int = MAX_TRANSFORM_PHOTONS) -> FockState:
    """Apply ``U`` to an arbitrary superposition of Fock states, by linearity."""
    a = as_unitary(u)
    if state.modes != a.shape[0]:
        raise DimensionMismatch(f"state has {state.modes} modes, network has {a.shape[0]}")
    out = FockState(a.shape[0])
    for occ, coeff in state.items():
        if coeff == 0:
            continue
        for k, amp in _transform_basis(a, occ, max_photons).items():
            out.add(k, coeff * amp)
    return out.pruned(PRUNE_ATOL)


def partial_matrix_element(u, detected, inp, max_photons: int = MAX_EXACT_DIM) -> tuple[int, complex]:
    """Project modes ``2..N`` of ``U |inp>`` onto ``|detected>``.

    Whatever photons are not detected must sit in mode 1, so the projection
    is a single Fock state of mode 1.

    Returns
    -------
    remaining : int
        Photon number left in mode 1.
    amplitude : complex
        Coefficient of ``|remaining>``; equal to
        ``matrix_element(u, (remaining, *detected), inp)``.

    Raises
    ------
    PhotonDeficit
        If more photons are detected than were sent in.
    """
    a = as_unitary(u)
    modes = a.shape[0]
    occ = _occupation(inp, modes, "in")
    det = tuple(int(x) for x in detected)
    if len(det) != modes - 1:
        raise DimensionMismatch(f"detected pattern has length {len(det)}, expected {modes - 1}")
    if any(x < 0 for x in det):
        raise ValueError(f"negative detected occupations: {det}")
    remaining = sum(occ) - sum(det)
    if remaining < 0:
        raise PhotonDeficit(f"{sum(det)} photons detected but only {sum(occ)} sent in")
    return remaining, _matrix_element(a, (remaining, *det), occ, max_photons)
