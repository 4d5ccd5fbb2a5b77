"""Entanglement generated by a beam splitter acting on random product states.

The entangling power of a two-mode network ``U`` is the linear entropy
``L = 2 (1 - Tr rho_1^2)`` of ``U |psi_1, psi_2>``, averaged over the two
single-mode input states. Inputs with ``N + 1`` Fock levels are drawn with
hyperspherical amplitudes::

    c_i = exp(1j phi_i) cos(theta_{i+1}) prod_{j <= i} sin(theta_j),
    theta_{N+1} = 0,  phi_0 = 0,

where the phases are uniform on ``[0, 2 pi)`` and the angles, each on
``[0, pi/2]``, follow the surface measure of the ``N``-sphere,
``prod_k sin(theta_k)^(N - k)``. For qubits the average has the closed form
``(3/64) (1 - p^2) (13 + 9 p^2)`` in terms of ``p = per U``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import betaincinv

from .errors import DimensionTooLarge, NotNormalized, OutOfRange
from .fock import factorial
from .permanent import MAX_EXACT_DIM, as_unitary, per_repeated
from .state import FockState
from .transform import partial_matrix_element, transform_state

NORM_ATOL = 1e-12
MIN_MC_SAMPLES = 1000
_MC_CHUNK = 1 << 16
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BeamSplitter:
    """Two-mode network ``[[T, R], [-R*, T*]]``."""

    T: complex
    R: complex

    def __post_init__(self):
        object.__setattr__(self, "T", complex(self.T))
        object.__setattr__(self, "R", complex(self.R))
        total = abs(self.T) ** 2 + abs(self.R) ** 2
        if abs(total - 1.0) > NORM_ATOL:
            raise ValueError(f"|T|^2 + |R|^2 = {total!r}, expected 1")

    @classmethod
    def from_permanent(cls, per: float, t_phase: float = 0.0, r_phase: float = 0.0) -> "BeamSplitter":
        """Beam splitter with ``|T|^2 - |R|^2 = per`` and the given phases."""
        if not -1.0 <= per <= 1.0:
            raise OutOfRange(f"permanent {per} outside [-1, 1]")
        t = math.sqrt((1.0 + per) / 2.0)
        r = math.sqrt((1.0 - per) / 2.0)
        return cls(t * np.exp(1j * t_phase), r * np.exp(1j * r_phase))

    @classmethod
    def balanced(cls) -> "BeamSplitter":
        return cls(1 / SQRT2, 1 / SQRT2)

    @property
    def matrix(self) -> np.ndarray:
        T, R = self.T, self.R
        return np.array([[T, R], [-R.conjugate(), T.conjugate()]], dtype=np.complex128)

    @property
    def permanent(self) -> float:
        return abs(self.T) ** 2 - abs(self.R) ** 2


@dataclass(frozen=True)
class ProductStateCoefficients:
    """Fock coefficients ``c`` and ``d`` of the input ``|psi_1> (x) |psi_2>``."""

    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.complex128).ravel()
        d = np.asarray(self.d, dtype=np.complex128).ravel()
        if c.shape != d.shape or c.size < 2:
            raise ValueError(f"c and d need equal length >= 2, got {c.size} and {d.size}")
        for name, v in (("c", c), ("d", d)):
            norm = float(np.vdot(v, v).real)
            if abs(norm - 1.0) > NORM_ATOL:
                raise NotNormalized(f"sum |{name}_i|^2 = {norm!r}, expected 1")
            if abs(v[0].imag) > NORM_ATOL or v[0].real < -NORM_ATOL:
                raise ValueError(f"{name}_0 must be real and non-negative, got {v[0]}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def N(self) -> int:
        """Highest Fock level of each input."""
        return self.c.size - 1

    def state(self) -> FockState:
        amps = {
            (i, j): ci * dj
            for i, ci in enumerate(self.c)
            for j, dj in enumerate(self.d)
            if ci != 0 and dj != 0
        }
        return FockState(2, amps)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


def reduced_purity(state: FockState) -> float:
    """``Tr rho_1^2`` for a two-mode pure state, tracing out mode 2."""
    if state.modes != 2:
        raise ValueError(f"need a two-mode state, got {state.modes} modes")
    a = state.to_array()
    rho = a @ a.conj().T
    return float(np.sum(np.abs(rho) ** 2))


def linear_entropy(state: FockState) -> float:
    """``2 (1 - Tr rho_1^2)`` of a normalised two-mode pure state."""
    norm = state.norm2()
    if abs(norm - 1.0) > 1e-8:
        raise NotNormalized(f"state norm^2 = {norm!r}")
    return 2.0 * (1.0 - reduced_purity(state))


def qubit_output_state(coeffs: ProductStateCoefficients, bs: BeamSplitter) -> FockState:
    """Closed-form output of a beam splitter fed two qubit superpositions."""
    if coeffs.N != 1:
        raise ValueError(f"qubit inputs need N = 1, got N = {coeffs.N}")
    c0, c1 = coeffs.c
    d0, d1 = coeffs.d
    T, R = bs.T, bs.R
    Tc, Rc = T.conjugate(), R.conjugate()
    return FockState(
        2,
        {
            (0, 0): c0 * d0,
            (1, 0): c0 * d1 * R + c1 * d0 * T,
            (0, 1): c0 * d1 * Tc - c1 * d0 * Rc,
            (2, 0): c1 * d1 * SQRT2 * T * R,
            (0, 2): -c1 * d1 * SQRT2 * Tc * Rc,
            (1, 1): c1 * d1 * (abs(T) ** 2 - abs(R) ** 2),
        },
    )


def qubit_power_analytic(per):
    """Entangling power ``(3/64)(1 - per^2)(13 + 9 per^2)`` for qubit inputs.

    Exact when ``per`` is an ``int`` or :class:`fractions.Fraction`.
    """
    if not -1 <= per <= 1:
        raise OutOfRange(f"permanent {per} outside [-1, 1]")
    p2 = per * per
    return 3 * (1 - p2) * (13 + 9 * p2) / 64


def averaged_power_analytic_qubit(bs: BeamSplitter) -> float:
    return qubit_power_analytic(min(1.0, max(-1.0, bs.permanent)))


def _sin_power_angles(power: int, u: np.ndarray) -> np.ndarray:
    # Inverse CDF of the density proportional to sin(theta)^power on [0, pi/2]:
    # sin(theta)^2 is Beta((power + 1) / 2, 1/2) distributed.
    if power == 0:
        return u * (np.pi / 2)
    if power == 1:
        return np.arccos(1.0 - u)
    return np.arcsin(np.sqrt(betaincinv((power + 1) / 2.0, 0.5, u)))


def sample_coefficients(N: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` coefficient vectors of length ``N + 1`` (one per row)."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    u = rng.random((size, N))
    theta = np.empty((size, N))
    for k in range(1, N + 1):
        theta[:, k - 1] = _sin_power_angles(N - k, u[:, k - 1])
    phi = rng.uniform(0.0, 2.0 * np.pi, (size, N))

    sin_prod = np.ones((size, N + 1))
    sin_prod[:, 1:] = np.cumprod(np.sin(theta), axis=1)
    cos_next = np.ones((size, N + 1))
    cos_next[:, :N] = np.cos(theta)
    phase = np.ones((size, N + 1), dtype=np.complex128)
    phase[:, 1:] = np.exp(1j * phi)
    return phase * cos_next * sin_prod


def sample_product_state(N: int, seed: int) -> np.ndarray:
    """One party's coefficients ``c_0..c_N``, deterministic in ``seed``."""
    return sample_coefficients(N, 1, np.random.default_rng(seed))[0]


def _transfer_tensor(u: np.ndarray, N: int) -> np.ndarray:
    """``W[n1, n2, k1, k2] = <k1, k2| U |n1, n2>`` for ``n1, n2 <= N``."""
    kmax = 2 * N + 1
    w = np.zeros((N + 1, N + 1, kmax, kmax), dtype=np.complex128)
    for n1 in range(N + 1):
        for n2 in range(N + 1):
            for (k1, k2), amp in transform_state(u, (n1, n2), max_photons=2 * N).items():
                w[n1, n2, k1, k2] = amp
    return w


def _entropies(w: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    a = np.einsum("bi,bj,ijkl->bkl", c, d, w)
    rho = np.einsum("bkl,bml->bkm", a, a.conj())
    return 2.0 * (1.0 - np.sum(np.abs(rho) ** 2, axis=(1, 2)))


def _mc_worker(w: np.ndarray, N: int, count: int, seed_seq: np.random.SeedSequence) -> tuple[float, float]:
    rng = np.random.default_rng(seed_seq)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < count:
        b = min(_MC_CHUNK, count - done)
        c = sample_coefficients(N, b, rng)
        d = sample_coefficients(N, b, rng)
        ent = _entropies(w, c, d)
        total += float(ent.sum())
        total_sq += float(np.dot(ent, ent))
        done += b
    return total, total_sq


def entanglement_power_mc(u, N: int, samples: int, seed: int, workers: int = 1) -> McEstimate:
    """Monte Carlo estimate of the averaged linear entropy of ``U |psi_1, psi_2>``.

    Parameters
    ----------
    u : array_like, shape (2, 2)
        Two-mode unitary.
    N : int
        Highest Fock level of each input state.
    samples : int
        Number of independent input pairs (at least 1000).
    seed : int
        Root seed. Worker ``w`` uses the ``w``-th spawned child sequence.
    workers : int
        Number of threads. The estimate is bit-reproducible for a fixed
        ``(samples, seed, workers)``.

    Returns
    -------
    McEstimate
        Mean and standard error (sample std / sqrt(samples)).
    """
    a = as_unitary(u)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 unitary, got shape {a.shape}")
    if samples < MIN_MC_SAMPLES:
        raise ValueError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    workers = max(1, min(int(workers), samples))
    w = _transfer_tensor(a, N)

    children = np.random.SeedSequence(seed).spawn(workers)
    base, extra = divmod(samples, workers)
    counts = [base + (i < extra) for i in range(workers)]
    if workers == 1:
        parts = [_mc_worker(w, N, counts[0], children[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda i: _mc_worker(w, N, counts[i], children[i]), range(workers)))

    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    mean = total / samples
    var = max(0.0, (total_sq - samples * mean * mean) / (samples - 1))
    return McEstimate(mean=mean, std_error=math.sqrt(var / samples), samples=samples, seed=seed)


def phase_average_tensor(i: int, j: int, k: int, l: int) -> float:
    """Average of ``exp(1j (phi_i + phi_j - phi_k - phi_l))`` over uniform phases."""
    pair = (i == k and j == l) + (i == l and j == k)
    return pair * (0.5 if i == j else 1.0)


def amplitude_moments(N: int) -> tuple[float, float]:
    """``(E|c_i|^4, E|c_i|^2 |c_j|^2)`` for ``i != j`` over the ``N``-sphere."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    denom = (N + 1) * (N + 3)
    return 3 / denom, 1 / denom


def coefficient_moment(i: int, j: int, k: int, l: int, N: int) -> float:
    """``E[c_i^* c_j^* c_k c_l]`` under the hyperspherical measure."""
    for idx in (i, j, k, l):
        if not 0 <= idx <= N:
            raise OutOfRange(f"index {idx} outside 0..{N}")
    pair = (i == k and j == l) + (i == l and j == k)
    return pair * (1.5 if i == j else 1.0) / ((N + 1) * (N + 3))


def purity_via_permanents(coeffs: ProductStateCoefficients, bs: BeamSplitter) -> float:
    """``Tr rho_1^2`` assembled from permanents of the beam-splitter matrix.

    Full amplitudes ``<k1, k2| U |psi_1, psi_2>`` are summed from
    ``per U[(1^k1, 2^k2)|(1^n1, 2^n2)]`` over inputs with ``n1 + n2 = k1 + k2``.
    The mode-1 vectors ``<k2| U |psi_1, psi_2>`` come from partial matrix
    elements. Their overlaps give ``rho_2``, and
    ``Tr rho_1^2 = Tr rho_2^2 = sum rho_2[k2, k2'] rho_2[k2', k2]``.
    """
    N = coeffs.N
    if 2 * N > MAX_EXACT_DIM:
        raise DimensionTooLarge(f"N = {N} needs permanents of order {2 * N} > {MAX_EXACT_DIM}")
    u = bs.matrix
    c, d = coeffs.c, coeffs.d
    kmax = 2 * N

    full = np.zeros((kmax + 1, kmax + 1), dtype=np.complex128)
    for k1 in range(kmax + 1):
        for k2 in range(kmax + 1 - k1):
            for n1 in range(N + 1):
                n2 = k1 + k2 - n1
                if not 0 <= n2 <= N or c[n1] == 0 or d[n2] == 0:
                    continue
                norm = math.sqrt(factorial(k1) * factorial(k2) * factorial(n1) * factorial(n2))
                full[k1, k2] += c[n1] * d[n2] * per_repeated(u, (k1, k2), (n1, n2)) / norm

    partial = np.zeros((kmax + 1, kmax + 1), dtype=np.complex128)  # [k2, remaining]
    for k2 in range(kmax + 1):
        for n1 in range(N + 1):
            for n2 in range(N + 1):
                if n1 + n2 < k2 or c[n1] == 0 or d[n2] == 0:
                    continue
                rem, amp = partial_matrix_element(u, (k2,), (n1, n2))
                partial[k2, rem] += c[n1] * d[n2] * amp

    rho2_full = full.T @ full.conj()  # [k2, k2'] = sum_k1 A[k1,k2] A*[k1,k2']
    rho2_partial = partial @ partial.conj().T  # [k2, k2'] = <v_k2' | v_k2>
    return float(np.sum(rho2_full * rho2_partial.T).real)
