"""Exit criteria, one test per criterion at the stated tolerance and runtime."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from permnet import (
    BeamSplitter,
    FockState,
    ProductStateCoefficients,
    entanglement_power_mc,
    haar_random_unitary,
    matrix_element,
    oracle_transform,
    per_glynn,
    per_naive,
    per_ryser,
    purity_via_permanents,
    qubit_output_state,
    qubit_power_analytic,
    reduced_purity,
    sample_coefficients,
    transform_state,
    transform_superposition,
)
from permnet import cli
from permnet.verification import moments_suite

pytestmark = pytest.mark.acceptance


def occupations(n, modes):
    from itertools import combinations_with_replacement

    for w in combinations_with_replacement(range(modes), n):
        yield tuple(w.count(m) for m in range(modes))


def test_1_hong_ou_mandel(acceptance_report):
    t0 = time.perf_counter()
    hom = abs(matrix_element(np.array([[1, 1], [-1, 1]]) / math.sqrt(2), (1, 1), (1, 1)))
    worst = 0.0
    for seed in range(200):
        u = haar_random_unitary(2, seed)
        per_direct = u[0, 0] * u[1, 1] + u[0, 1] * u[1, 0]
        worst = max(worst, abs(matrix_element(u, (1, 1), (1, 1)) - per_direct))
    dt = time.perf_counter() - t0
    ok = hom <= 1e-12 and worst <= 1e-12 and dt < 1
    acceptance_report(1, ok, f"|<11|U_50:50|11>| = {hom:.1e}, max |<11|U|11> - per U| = {worst:.1e} over 200, {dt:.2f}s")
    assert ok


def test_2_unit_disk(acceptance_report):
    t0 = time.perf_counter()
    worst = 0.0
    for seed in range(1000):
        worst = max(worst, abs(per_ryser(haar_random_unitary(2 + seed % 5, seed))))
    dt = time.perf_counter() - t0
    ok = worst <= 1 + 1e-10 and dt < 5
    acceptance_report(2, ok, f"max |per U| = {worst:.6f} over 1000 unitaries of order 2-6, {dt:.2f}s")
    assert ok


def test_3_algorithm_agreement(acceptance_report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for k in range(500):
        n = 1 + k % 8
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        ref = per_naive(m)
        for value in (per_ryser(m), per_glynn(m)):
            worst = max(worst, abs(value - ref) / (1 + abs(ref)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 30
    acceptance_report(3, ok, f"max relative deviation {worst:.1e} over 500 matrices n<=8, {dt:.2f}s")
    assert ok


def test_4_oracle_equivalence(acceptance_report):
    t0 = time.perf_counter()
    worst_amp = worst_norm = 0.0
    cases = 0
    for modes in (1, 2, 3):
        for seed in range(50):
            u = haar_random_unitary(modes, 1000 * modes + seed)
            for n in range(6):
                for inp in occupations(n, modes):
                    state = transform_state(u, inp)
                    worst_amp = max(worst_amp, state.max_abs_diff(oracle_transform(u, inp)))
                    worst_norm = max(worst_norm, abs(state.norm2() - 1))
                    cases += 1
    dt = time.perf_counter() - t0
    ok = worst_amp <= 1e-10 and worst_norm <= 1e-10 and dt < 120
    acceptance_report(
        4, ok, f"{cases} transforms: max amplitude diff {worst_amp:.1e}, max |norm^2-1| {worst_norm:.1e}, {dt:.1f}s"
    )
    assert ok


def test_5_two_qubit_output(acceptance_report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    s2 = math.sqrt(2)
    worst_literal = worst_perm = 0.0
    for _ in range(100):
        c0, c1 = sample_coefficients(1, 1, rng)[0]
        d0, d1 = sample_coefficients(1, 1, rng)[0]
        t_abs = rng.uniform(0, 1)
        T = t_abs * np.exp(1j * rng.uniform(0, 2 * np.pi))
        R = math.sqrt(1 - t_abs**2) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        bs = BeamSplitter(T, R)
        co = ProductStateCoefficients([c0, c1], [d0, d1])
        literal = FockState(2, {
            (0, 0): c0 * d0,
            (1, 0): c0 * d1 * R + c1 * d0 * T,
            (0, 1): c0 * d1 * np.conj(T) - c1 * d0 * np.conj(R),
            (2, 0): c1 * d1 * s2 * T * R,
            (0, 2): -c1 * d1 * s2 * np.conj(T) * np.conj(R),
            (1, 1): c1 * d1 * (abs(T) ** 2 - abs(R) ** 2),
        })
        out = qubit_output_state(co, bs)
        worst_literal = max(worst_literal, out.max_abs_diff(literal))
        worst_perm = max(worst_perm, out.max_abs_diff(transform_superposition(bs.matrix, co.state())))
    dt = time.perf_counter() - t0
    ok = worst_literal <= 1e-12 and worst_perm <= 1e-12 and dt < 1
    acceptance_report(5, ok, f"max diff vs literal {worst_literal:.1e}, vs permanent path {worst_perm:.1e}, {dt:.2f}s")
    assert ok


def test_6_closed_form_values(acceptance_report):
    t0 = time.perf_counter()
    exact = qubit_power_analytic(0) == Fraction(39, 64) and qubit_power_analytic(0.0) == 39 / 64
    zeros = qubit_power_analytic(1) == 0 and qubit_power_analytic(-1) == 0
    zeros = zeros and qubit_power_analytic(1.0) == 0.0 and qubit_power_analytic(-1.0) == 0.0
    grid = [k / 100 for k in range(101)]
    vals = [qubit_power_analytic(p) for p in grid]
    symmetric = all(qubit_power_analytic(p) == qubit_power_analytic(-p) for p in grid)
    monotone = all(b <= a for a, b in zip(vals, vals[1:]))
    dt = time.perf_counter() - t0
    ok = exact and zeros and symmetric and monotone and dt < 1
    acceptance_report(
        6, ok, f"P(0)=39/64 {exact}, P(+-1)=0 {zeros}, symmetric {symmetric}, non-increasing {monotone}, {dt:.3f}s"
    )
    assert ok


def test_7_monte_carlo_power(acceptance_report):
    t0 = time.perf_counter()
    parts = []
    ok = True
    for per in (0.0, 0.3, 0.5, 0.8):
        est = entanglement_power_mc(BeamSplitter.from_permanent(per).matrix, 1, 10**6, seed=7)
        expected = qubit_power_analytic(per)
        dev = abs(est.mean - expected)
        ok &= dev <= 3 * est.std_error and dev < 2e-3
        parts.append(f"per={per}: {est.mean:.5f} vs {expected:.5f} ({dev / est.std_error:.2f} se)")
    dt = time.perf_counter() - t0
    ok &= dt < 120
    acceptance_report(7, ok, "; ".join(parts) + f", {dt:.1f}s")
    assert ok


def test_8_moment_formulas(acceptance_report):
    t0 = time.perf_counter()
    checks = moments_suite(Ns=(1, 2, 3), samples=10**6, seed=8)
    dt = time.perf_counter() - t0
    failed = [c.name for c in checks if not c.passed]
    ok = not failed and dt < 60
    acceptance_report(8, ok, f"{len(checks) - len(failed)}/{len(checks)} moment and phase checks within 3 se, {dt:.1f}s"
                      + (f"; failed: {failed}" if failed else ""))
    assert ok


def test_9_purity_paths(acceptance_report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    worst = 0.0
    for k in range(100):
        N = 1 + k % 2
        co = ProductStateCoefficients(sample_coefficients(N, 1, rng)[0], sample_coefficients(N, 1, rng)[0])
        bs = BeamSplitter.from_permanent(rng.uniform(-1, 1), rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi))
        direct = FockState(2)
        for occ, amp in co.state().items():
            direct = direct + amp * oracle_transform(bs.matrix, occ)
        worst = max(worst, abs(purity_via_permanents(co, bs) - reduced_purity(direct)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 60
    acceptance_report(9, ok, f"max |purity(permanents) - purity(direct partial trace)| = {worst:.1e} over 100, {dt:.2f}s")
    assert ok


@pytest.mark.parametrize("suite", ["unit-disk", "oracle", "moments", "power"])
def test_10_verify_suites(acceptance_report, suite, capsys):
    t0 = time.perf_counter()
    code = cli.main(["verify", suite, "--output", "/dev/null"])
    capsys.readouterr()
    dt = time.perf_counter() - t0
    acceptance_report(10, code == 0, f"`permnet verify {suite}` exit code {code}, {dt:.1f}s")
    assert code == 0
