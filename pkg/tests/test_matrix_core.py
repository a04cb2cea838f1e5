from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from python.helpers import matrix_core as mc
from python.helpers.errors import NoConvergence, NotHermitian
from python.helpers.matrix_core import RandomModel

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=2, max_value=8)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, m=st.integers(min_value=1, max_value=8))
def test_jacobi_matches_eigh(seed, m):
    a = mc.random_hermitian(RandomModel(seed), m, scale=3.0)
    dec = mc.hermitian_eigendecomposition(a)
    assert_allclose(dec.eigenvalues, np.linalg.eigh(a)[0], atol=1e-12 * (1 + np.linalg.norm(a)))
    assert_allclose(dec.reconstruct(), a, atol=1e-12 * (1 + np.linalg.norm(a)))
    assert_allclose(dec.unitary.conj().T @ dec.unitary, np.eye(m), atol=1e-12)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 8])
def test_jacobi_converges_on_seeded_inputs(m):
    for seed in range(200):
        a = mc.random_hermitian(RandomModel(seed), m)
        dec = mc.hermitian_eigendecomposition(a)
        assert np.all(np.diff(dec.eigenvalues) >= 0)
        assert np.linalg.norm(dec.unitary @ dec.unitary.conj().T - np.eye(m)) <= 1e-10
        assert np.linalg.norm(dec.reconstruct() - a) <= 1e-9


def test_jacobi_on_a_complex_projection():
    a = 0.5 * np.array([[1, 1j], [-1j, 1]], dtype=np.complex128)
    dec = mc.hermitian_eigendecomposition(a)
    assert_allclose(dec.eigenvalues, [0.0, 1.0], atol=1e-14)
    assert_allclose(dec.reconstruct(), a, atol=1e-14)


def test_jacobi_diagonal_input_needs_no_sweeps():
    dec = mc.hermitian_eigendecomposition(np.diag([3.0, -1.0, 2.0]).astype(np.complex128))
    assert dec.sweeps == 0
    assert_allclose(dec.eigenvalues, [-1.0, 2.0, 3.0])


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        mc.hermitian_eigendecomposition(np.array([[0, 1], [0, 0]], dtype=np.complex128))
    with pytest.raises(NotHermitian):
        mc.hermitian_eigendecomposition(np.ones((2, 3), dtype=np.complex128))


def test_jacobi_reports_exhausted_sweeps():
    a = np.array([[1, 1j], [-1j, 2]], dtype=np.complex128)
    with pytest.raises(NoConvergence) as info:
        mc.hermitian_eigendecomposition(a, max_sweeps=0)
    assert info.value.sweeps == 0


def test_spectral_projections_resolve_identity(model):
    a = mc.random_hermitian(model, 5)
    projections = mc.spectral_projections(a)
    dec = mc.hermitian_eigendecomposition(a)
    assert_allclose(sum(projections), np.eye(5), atol=1e-12)
    assert_allclose(sum(mu * p for mu, p in zip(dec.eigenvalues, projections)), a, atol=1e-12)
    for p in projections:
        assert_allclose(p @ p, p, atol=1e-12)


def test_singular_values_and_condition(model):
    x = mc.random_matrix(model, 4)
    assert_allclose(mc.singular_values(x), np.linalg.svd(x, compute_uv=False), rtol=1e-8)
    assert mc.condition_number(np.eye(3, dtype=np.complex128)) == pytest.approx(1.0)
    assert mc.condition_number(np.zeros((2, 2), dtype=np.complex128)) == float("inf")


def test_matrix_units_and_blocks():
    e = mc.matrix_unit(3, 0, 2)
    assert e[0, 2] == 1 and np.count_nonzero(e) == 1
    assert mc.matrix_unit(2, 1, 3, cols=4).shape == (2, 4)
    block = mc.direct_sum(np.eye(2), 2 * np.eye(1))
    assert_allclose(block, np.diag([1, 1, 2]))
    assert_allclose(mc.embed_top_left(np.ones((1, 1)), 3), mc.matrix_unit(3, 0, 0))
    with pytest.raises(ValueError):
        mc.embed_top_left(np.ones((3, 3)), 2)


def _exact_power_is_zero(entries, power):
    n = len(entries)
    result = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(power):
        result = [[sum(result[i][k] * entries[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return all(v == 0 for row in result for v in row)


@settings(max_examples=30, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=5),
    values=st.lists(st.integers(min_value=-5, max_value=5), min_size=25, max_size=25),
    strict=st.booleans(),
)
def test_is_nilpotent_agrees_with_exact_oracle(n, values, strict):
    # strictly upper triangular integer matrices are nilpotent; adding a nonzero diagonal entry is not
    entries = [[Fraction(values[i * 5 + j]) if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    if not strict:
        entries[n - 1][n - 1] = Fraction(1)
    x = np.array([[float(v) for v in row] for row in entries], dtype=np.complex128)
    assert mc.is_nilpotent(x) == _exact_power_is_zero(entries, n)


def test_random_model_is_deterministic():
    a, b = RandomModel(11), RandomModel(11)
    assert_allclose(a.complex_normal((3, 3)), b.complex_normal((3, 3)))
    assert a.position == b.position == 1
    first = [m.uniform() for m in RandomModel(5).fork(3)]
    second = [m.uniform() for m in RandomModel(5).fork(3)]
    assert first == second
    assert len(set(first)) == 3


@settings(max_examples=25, deadline=None)
@given(seed=seeds, m=dims)
def test_orthogonal_selfadjoint_pairs(seed, m):
    a, b = mc.random_orthogonal_selfadjoint_pair(RandomModel(seed), m)
    assert mc.is_hermitian(a) and mc.is_hermitian(b)
    assert np.linalg.norm(a @ b) <= 1e-12
    assert np.linalg.norm(b @ a) <= 1e-12
    assert np.linalg.norm(a) > 0 and np.linalg.norm(b) > 0


@settings(max_examples=25, deadline=None)
@given(seed=seeds, m=dims)
def test_zero_product_pairs_are_one_sided(seed, m):
    a, b = mc.random_zero_product_pair(RandomModel(seed), m)
    scale = (1 + np.linalg.norm(a)) * (1 + np.linalg.norm(b))
    assert np.linalg.norm(a @ b) <= 1e-12 * scale
    assert np.linalg.norm(b @ a) > 1e-6 * scale


@settings(max_examples=25, deadline=None)
@given(seed=seeds, m=dims)
def test_rank_one_projection_pairs(seed, m):
    p, q = mc.random_rank_one_projection_pair(RandomModel(seed), m)
    for x in (p, q):
        assert_allclose(x @ x, x, atol=1e-12)
        assert np.trace(x).real == pytest.approx(1.0)
        assert mc.is_hermitian(x)
    assert np.linalg.norm(p @ q) <= 1e-12
    assert np.linalg.norm(q @ p) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(seed=seeds, m=dims)
def test_rank_one_idempotent_pairs(seed, m):
    e, f = mc.random_rank_one_idempotent_pair(RandomModel(seed), m)
    for x in (e, f):
        assert np.linalg.norm(x @ x - x) <= 1e-9 * (1 + np.linalg.norm(x)) ** 2
        assert np.trace(x).real == pytest.approx(1.0)
    assert np.linalg.norm(e @ f) <= 1e-9 * (1 + np.linalg.norm(e)) * (1 + np.linalg.norm(f))


@settings(max_examples=25, deadline=None)
@given(seed=seeds, m=dims, cap=st.sampled_from([1.0, 10.0, 100.0]))
def test_random_similarity_respects_condition_cap(seed, m, cap):
    S = mc.random_similarity(RandomModel(seed), m, cap)
    assert np.linalg.cond(S) <= cap * (1 + 1e-9)


def test_random_unitary_is_unitary(model):
    u = mc.random_unitary(model, 6)
    assert_allclose(u.conj().T @ u, np.eye(6), atol=1e-12)
