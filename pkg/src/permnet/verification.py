"""Seeded invariant suites, shared by the ``verify`` command and the tests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .entanglement import (
    BeamSplitter,
    amplitude_moments,
    entanglement_power_mc,
    phase_average_tensor,
    qubit_power_analytic,
    sample_coefficients,
)
from .oracle import haar_random_unitary, oracle_transform
from .permanent import per_ryser
from .transform import transform_state

# Floor for "within k standard errors" when the sampled quantity is constant.
SE_FLOOR = 1e-12


@dataclass
class Check:
    name: str
    passed: bool
    deviation: float
    tolerance: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: deviation {self.deviation:.3e} (tolerance {self.tolerance:.3e})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "deviation": float(self.deviation),
            "tolerance": float(self.tolerance),
        }


def _within_se(name: str, estimate: complex, expected: complex, se: float, k: float = 3.0) -> Check:
    dev = abs(estimate - expected)
    tol = max(k * se, SE_FLOOR)
    return Check(name, dev <= tol, dev, tol)


def unit_disk_suite(count: int = 1000, orders=range(2, 7), seed: int = 0) -> list[Check]:
    """``|per U| <= 1`` for ``count`` Haar unitaries spread over ``orders``."""
    orders = list(orders)
    seeds = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    worst = {n: 0.0 for n in orders}
    for idx, s in enumerate(seeds):
        n = orders[idx % len(orders)]
        worst[n] = max(worst[n], abs(per_ryser(haar_random_unitary(n, int(s)))))
    return [
        Check(f"unit disk, order {n}: max |per U| - 1", w <= 1 + 1e-10, w - 1.0, 1e-10)
        for n, w in worst.items()
    ]


def oracle_suite(unitaries: int = 50, max_modes: int = 3, max_photons: int = 5, seed: int = 0) -> list[Check]:
    """Permanent path against multinomial expansion, every input with ``n <= max_photons``."""
    checks = []
    for modes in range(1, max_modes + 1):
        seeds = np.random.SeedSequence([seed, modes]).generate_state(unitaries, dtype=np.uint64)
        worst_amp = 0.0
        worst_norm = 0.0
        for s in seeds:
            u = haar_random_unitary(modes, int(s))
            for n in range(max_photons + 1):
                for w in combinations_with_replacement(range(modes), n):
                    inp = tuple(w.count(m) for m in range(modes))
                    perm_state = transform_state(u, inp)
                    worst_amp = max(worst_amp, perm_state.max_abs_diff(oracle_transform(u, inp)))
                    worst_norm = max(worst_norm, abs(perm_state.norm2() - 1.0))
        checks.append(Check(f"oracle, N={modes}: max amplitude difference", worst_amp <= 1e-10, worst_amp, 1e-10))
        checks.append(Check(f"oracle, N={modes}: max |norm^2 - 1|", worst_norm <= 1e-10, worst_norm, 1e-10))
    return checks


def moment_checks(N: int, samples: int, seed: int) -> list[Check]:
    """Empirical amplitude moments and phase averages against closed forms."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, N]))
    c = sample_coefficients(N, samples, rng)
    quartic, cross = amplitude_moments(N)
    p = np.abs(c) ** 2
    checks = []
    for i in range(N + 1):
        x = p[:, i] ** 2
        checks.append(_within_se(f"N={N}: E|c_{i}|^4", x.mean(), quartic, x.std(ddof=1) / np.sqrt(samples)))
    for i in range(N + 1):
        for j in range(i + 1, N + 1):
            x = p[:, i] * p[:, j]
            checks.append(
                _within_se(f"N={N}: E|c_{i}|^2|c_{j}|^2", x.mean(), cross, x.std(ddof=1) / np.sqrt(samples))
            )

    z = np.ones_like(c)
    nz = p > 0
    z[nz] = c[nz] / np.sqrt(p[nz])
    pairs = list(combinations_with_replacement(range(N + 1), 2))
    for i, j in pairs:
        zij = z[:, i] * z[:, j]
        for k, l in pairs:
            x = zij * np.conj(z[:, k] * z[:, l])
            mean = x.mean()
            se = np.sqrt(np.sum(np.abs(x - mean) ** 2) / (samples - 1) / samples)
            checks.append(
                _within_se(f"N={N}: phase average ({i},{j},{k},{l})", mean, phase_average_tensor(i, j, k, l), se)
            )
    return checks


def moments_suite(Ns=(1, 2, 3), samples: int = 10**6, seed: int = 0) -> list[Check]:
    checks = []
    for N in Ns:
        checks.extend(moment_checks(N, samples, seed))
    return checks


def power_suite(pers=(0.0, 0.3, 0.5, 0.8), samples: int = 10**6, seed: int = 0, workers: int = 1) -> list[Check]:
    """Exact closed-form values plus Monte Carlo against the closed form."""
    checks = [
        Check("closed form at per=0 equals 39/64", qubit_power_analytic(0) == 39 / 64,
              abs(qubit_power_analytic(0) - 39 / 64), 0.0),
        Check("closed form at per=+1 is 0", qubit_power_analytic(1) == 0, abs(qubit_power_analytic(1)), 0.0),
        Check("closed form at per=-1 is 0", qubit_power_analytic(-1) == 0, abs(qubit_power_analytic(-1)), 0.0),
    ]
    grid = np.round(np.arange(0, 101) / 100, 2)
    vals = [qubit_power_analytic(float(g)) for g in grid]
    sym = max(abs(qubit_power_analytic(float(g)) - qubit_power_analytic(float(-g))) for g in grid)
    checks.append(Check("closed form symmetric in per", sym == 0.0, sym, 0.0))
    rise = max(0.0, max(b - a for a, b in zip(vals, vals[1:])))
    checks.append(Check("closed form non-increasing in |per|", rise == 0.0, rise, 0.0))
    for per in pers:
        est = entanglement_power_mc(BeamSplitter.from_permanent(per).matrix, 1, samples, seed, workers)
        checks.append(_within_se(f"Monte Carlo N=1, per={per}", est.mean, qubit_power_analytic(per), est.std_error))
    return checks


SUITES = {
    "unit-disk": unit_disk_suite,
    "oracle": oracle_suite,
    "moments": moments_suite,
    "power": power_suite,
}
