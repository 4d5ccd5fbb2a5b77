import importlib
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permnet import (
    DimensionTooLarge,
    MultiplicityMismatch,
    NotUnitary,
    as_unitary,
    haar_random_unitary,
    per_glynn,
    per_naive,
    per_repeated,
    per_ryser,
    permanent,
)

from conftest import random_complex, rel_dev

ALL = [per_naive, per_ryser, per_glynn]


@pytest.mark.parametrize("per", ALL)
def test_identity(per):
    assert per(np.eye(2)) == 1


@pytest.mark.parametrize("per", ALL)
def test_empty_matrix(per):
    assert per(np.empty((0, 0))) == 1


@pytest.mark.parametrize("per", ALL)
def test_scalar(per):
    z = 0.3 - 1.7j
    assert np.isclose(per(np.array([[z]])), z)


@pytest.mark.parametrize("per", ALL)
def test_all_ones_3x3(per):
    assert np.isclose(per(np.ones((3, 3))), 6)


@pytest.mark.parametrize("per", ALL)
def test_beam_splitter(per, generic_bs):
    t, r, bs = generic_bs
    assert abs(per(bs) - (abs(t) ** 2 - abs(r) ** 2)) < 1e-14


def _exact_permanent(rows):
    # Independent exact oracle on Gaussian-integer entries.
    n = len(rows)
    total = 0
    for sigma in itertools.permutations(range(n)):
        term = 1
        for i in range(n):
            term *= rows[i][sigma[i]]
        total += term
    return total


def test_against_exact_integer_oracle(rng):
    for n in range(1, 8):
        re = rng.integers(-3, 4, (n, n))
        im = rng.integers(-3, 4, (n, n))
        rows = [[complex(int(re[i, j]), int(im[i, j])) for j in range(n)] for i in range(n)]
        ref = _exact_permanent(rows)
        m = re + 1j * im
        for per in ALL:
            assert rel_dev(per(m), ref) < 1e-12


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_ryser_glynn_match_naive(rng, n):
    for _ in range(5):
        m = random_complex(rng, n)
        ref = per_naive(m)
        assert rel_dev(per_ryser(m), ref) <= 1e-10
        assert rel_dev(per_glynn(m), ref) <= 1e-10


def test_gray_code_blocks_cover_high_bits(rng, monkeypatch):
    # Force the Python-level high block to do real work on a small matrix.
    pm = importlib.import_module("permnet.permanent")

    m = random_complex(rng, 7)
    ref = per_naive(m)
    monkeypatch.setattr(pm, "_LOW_BITS", 2)
    assert rel_dev(per_ryser(m), ref) < 1e-12
    assert rel_dev(per_glynn(m), ref) < 1e-12


def test_dimension_caps():
    with pytest.raises(DimensionTooLarge):
        per_naive(np.eye(11))
    with pytest.raises(DimensionTooLarge):
        per_ryser(np.eye(25))
    with pytest.raises(DimensionTooLarge):
        per_glynn(np.eye(25))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        per_ryser(np.ones((2, 3)))


def test_dispatch():
    m = np.array([[1, 2], [3, 4]])
    assert permanent(m, "naive") == permanent(m, "glynn") == permanent(m) == 10
    with pytest.raises(ValueError):
        permanent(m, "bogus")


def _permutation_matrix(rng, n):
    return np.eye(n)[rng.permutation(n)]


def test_permutation_diagonal_factorisation(rng):
    for n in range(1, 7):
        a = random_complex(rng, n)
        p = _permutation_matrix(rng, n)
        dvec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs = per_ryser(p @ a @ np.diag(dvec))
        assert per_ryser(p) == 1
        rhs = per_ryser(p) * per_ryser(a) * np.prod(dvec)
        assert rel_dev(lhs, rhs) <= 1e-10


def test_permanent_is_not_similarity_invariant(rng):
    # per(O S O^T) != per(S) in general, unlike the determinant.
    s = random_complex(rng, 3)
    o = np.linalg.qr(rng.standard_normal((3, 3)))[0]
    assert abs(per_ryser(o @ s @ o.T) - per_ryser(s)) > 1e-3
    assert np.isclose(np.linalg.det(o @ s @ o.T), np.linalg.det(s))


matrices = st.integers(1, 8).flatmap(
    lambda n: st.lists(
        st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
        min_size=n * n,
        max_size=n * n,
    ).map(lambda xs: np.array(xs, dtype=complex).reshape(n, n))
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_transpose_symmetry(m):
    assert rel_dev(per_ryser(m.T), per_ryser(m)) <= 1e-10 * (1 + np.abs(m).sum() ** m.shape[0])


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_row_multilinearity(m, data):
    n = m.shape[0]
    i = data.draw(st.integers(0, n - 1))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    part = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    a, b = m.copy(), m.copy()
    a[i] = part
    b[i] = m[i] - part
    scale = 1 + np.prod(np.abs(m).sum(axis=1) + np.abs(part).sum())
    assert abs(per_ryser(a) + per_ryser(b) - per_ryser(m)) <= 1e-10 * scale


def test_unit_disk_sample():
    for seed in range(200):
        u = haar_random_unitary(2 + seed % 5, seed)
        assert abs(per_ryser(u)) <= 1 + 1e-10


def test_as_unitary():
    u = haar_random_unitary(4, 1)
    assert np.array_equal(as_unitary(u), u)
    with pytest.raises(NotUnitary):
        as_unitary(np.array([[1, 1], [0, 1]]))


def test_repeated_beam_splitter(generic_bs):
    t, r, bs = generic_bs
    assert np.isclose(per_repeated(bs, (1, 1), (1, 1)), abs(t) ** 2 - abs(r) ** 2)
    # rows (T, R) twice: per [[T, R], [T, R]] = 2 T R
    assert np.isclose(per_repeated(bs, (2, 0), (1, 1)), 2 * t * r)


def test_repeated_empty(rng):
    assert per_repeated(random_complex(rng, 4), (0,) * 4, (0,) * 4) == 1


def test_repeated_errors(rng):
    m = random_complex(rng, 2)
    with pytest.raises(MultiplicityMismatch):
        per_repeated(m, (1, 1), (2, 1))
    with pytest.raises(DimensionTooLarge):
        per_repeated(m, (13, 12), (12, 13))


def test_repeated_matches_naive_expansion(rng):
    m = random_complex(rng, 3)
    rows, cols = (2, 0, 1), (0, 2, 1)
    expanded = m[np.ix_([0, 0, 2], [1, 1, 2])]
    assert rel_dev(per_repeated(m, rows, cols), per_naive(expanded)) < 1e-12
