import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import make_spec, relative_error, sample_points, standard_form_fixture
from python.helpers import holo
from python.helpers import matrix_core as mc
from python.helpers.errors import DegreeZero, LinearizationMismatch, OutOfDomain, SingularFrame
from python.helpers.holo import HoloFunction, LinearMapMatrix, StandardFormSpec
from python.helpers.matrix_core import RandomModel


def test_standard_form_matches_explicit_sum(standard_spec, model):
    for x in sample_points(model, standard_spec.m, 5):
        expected = sum(
            lam * np.linalg.inv(standard_spec.S) @ np.linalg.matrix_power(x, n) @ standard_spec.S
            for n, lam in enumerate(standard_spec.lambdas, start=1)
        )
        assert relative_error(standard_spec(x), expected) <= 1e-12
        assert_allclose(
            sum(standard_spec.term(n, x) for n in range(1, standard_spec.degree + 1)),
            standard_spec.apply(x),
            atol=1e-12,
        )


def test_standard_form_domain_and_frame():
    spec = StandardFormSpec((1,), np.eye(2))
    with pytest.raises(OutOfDomain):
        spec(np.eye(2))
    with pytest.raises(SingularFrame):
        StandardFormSpec((1,), np.array([[1, 1], [1, 1]], dtype=np.complex128))
    empty = StandardFormSpec((), np.eye(2))
    assert_allclose(empty(0.5 * np.eye(2)), np.zeros((2, 2)))


def test_holo_function_checks_the_ball():
    H = HoloFunction.from_callable(lambda x: x, 2, radius=0.5)
    with pytest.raises(OutOfDomain):
        H(0.6 * np.eye(2))
    with pytest.raises(ValueError):
        H(np.zeros((3, 3)))


@pytest.mark.parametrize("seed", range(20))
def test_extraction_round_trip(seed):
    spec = standard_form_fixture(seed)
    H = HoloFunction.from_standard_form(spec)
    model = RandomModel(seed)
    for x in sample_points(model, spec.m, 100):
        comps = holo.evaluate_components(H, x, spec.degree)
        assert np.linalg.norm(comps[0]) <= 1e-9
        assert relative_error(comps.sum(axis=0), H(x)) <= 1e-8


def test_extract_component_isolates_a_degree(standard_spec, standard_function, model):
    P2 = holo.extract_component(standard_function, 2)
    assert P2.degree == 2 and P2.nodes == 2 * holo.DEFAULT_N_MAX + 2
    for x in sample_points(model, 3, 3):
        assert relative_error(P2(x), standard_spec.term(2, x)) <= 1e-10
        assert relative_error(P2(2 * x), 4 * P2(x)) <= 1e-10


def test_aliasing_warning():
    assert holo.aliasing_warning(3, 4).startswith("AliasingRisk")
    assert holo.aliasing_warning(10, 4) is None
    with pytest.raises(ValueError):
        holo.extract_component(HoloFunction.zero(2), -1)


def test_active_degrees_follow_nonzero_lambdas():
    H = HoloFunction.from_standard_form(make_spec(4, 3, (1, 0, 0.25)))
    norms = holo.component_norm_estimates(H, 4)
    assert holo.active_degrees(norms) == [1, 3]
    assert holo.estimate_degree_cutoff(HoloFunction.zero(3), 4) == []


def test_probe_set_is_fixed():
    first, second = holo.probe_set(4), holo.probe_set(4)
    assert len(first) == 8
    for a, b in zip(first, second):
        assert_allclose(a, b)
        assert mc.spectral_norm(a) == pytest.approx(1.0)


def test_polarization_of_a_square(model):
    H = HoloFunction.from_callable(lambda x: x @ x, 2)
    T = holo.polarize(holo.extract_component(H, 2))
    x, y = sample_points(model, 2, 2)
    assert relative_error(T(x, y), (x @ y + y @ x) / 2) <= 1e-10
    assert relative_error(T(x, x), x @ x) <= 1e-10
    with pytest.raises(ValueError):
        T(x)
    with pytest.raises(DegreeZero):
        holo.polarize(holo.extract_component(H, 0))


def test_polarized_square_on_matrix_units():
    T = holo.polarize(holo.extract_component(HoloFunction.from_callable(lambda x: x @ x, 2), 2))
    e11, e12 = mc.matrix_unit(2, 0, 0), mc.matrix_unit(2, 0, 1)
    assert_allclose(T(e11, e12), e12 / 2, atol=1e-12)


def test_polarized_cube_is_symmetric(model):
    H = HoloFunction.from_callable(lambda x: x @ x @ x, 3)
    T = holo.polarize(holo.extract_component(H, 3))
    for _ in range(5):
        x, y, z = sample_points(model, 3, 3)
        assert relative_error(T(x, y, z), T(z, x, y)) <= 1e-10
        assert relative_error(T(x, y, z), T(y, x, z)) <= 1e-10
    for x in sample_points(model, 3, 50):
        assert relative_error(T(x, x, x), x @ x @ x) <= 1e-10


@pytest.mark.parametrize("seed", range(0, 20, 4))
def test_components_do_not_depend_on_node_count(seed):
    spec = standard_form_fixture(seed)
    H = HoloFunction.from_standard_form(spec)
    model = RandomModel(seed)
    for n in range(1, spec.degree + 1):
        coarse = holo.extract_component(H, n, nodes=2 * spec.degree + 2)
        fine = holo.extract_component(H, n, nodes=2 * spec.degree + 9)
        for x in sample_points(model, spec.m, 5):
            assert relative_error(coarse(x), fine(x)) <= 1e-9


def test_default_nodes_cover_every_default_degree(model):
    # a degree-5 term must not fold onto the linear component
    spec = StandardFormSpec((1, 0, 0, 0, 1), np.eye(2, dtype=np.complex128))
    P1 = holo.extract_component(HoloFunction.from_standard_form(spec), 1)
    for x in sample_points(model, 2, 5):
        assert relative_error(P1(x), spec.term(1, x)) <= 1e-11


def test_explicit_rho_outside_the_ball():
    P1 = holo.extract_component(HoloFunction.from_callable(lambda x: x, 2), 1, rho=2.0)
    with pytest.raises(OutOfDomain):
        P1(0.9 * np.eye(2, dtype=np.complex128))
    assert_allclose(P1(0.1 * np.eye(2, dtype=np.complex128)), 0.1 * np.eye(2), atol=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_linearization_reproduces_components(seed):
    spec = standard_form_fixture(seed)
    H = HoloFunction.from_standard_form(spec)
    model = RandomModel(seed)
    for n in range(1, spec.degree + 1):
        T = holo.linearize(holo.extract_component(H, n), model)
        for x in sample_points(model, spec.m, 50):
            assert relative_error(T(np.linalg.matrix_power(x, n)), spec.term(n, x)) <= 1e-9


def test_linearization_rejects_entrywise_square(model):
    H = HoloFunction.from_callable(lambda x: x * x, 3)
    with pytest.raises(LinearizationMismatch) as info:
        holo.linearize(holo.extract_component(H, 2), model)
    assert info.value.degree == 2
    assert info.value.witness is not None
    assert info.value.residual > 1e-9
    with pytest.raises(DegreeZero):
        holo.linearize(holo.extract_component(H, 0), model)


def test_linear_map_helpers(model):
    S = mc.random_similarity(model, 3, 10.0)
    x = mc.random_matrix(model, 3)
    identity = LinearMapMatrix.identity(3)
    assert_allclose(identity(x), x)
    assert_allclose(identity.with_transposed_input()(x), x.T)
    assert_allclose(identity.conjugated(S)(x), S @ x @ np.linalg.inv(S), atol=1e-12)
    assert_allclose(identity.scaled(2j)(x), 2j * x)
    assert identity.frobenius_norm() == pytest.approx(3.0)
    with pytest.raises(ValueError):
        LinearMapMatrix(2, 2, np.zeros((2, 2, 3, 3)))


def test_direct_sum_function():
    f = HoloFunction.from_callable(lambda x: x, 2)
    g = HoloFunction.from_callable(lambda x: x.T, 2, radius=0.5)
    h = holo.direct_sum_function(f, g)
    x = np.array([[0, 0.1], [0.2, 0]], dtype=np.complex128)
    assert (h.m, h.s, h.radius) == (2, 4, 0.5)
    assert_allclose(h(x), mc.direct_sum(x, x.T))


def test_extract_components_share_nodes(standard_spec, standard_function, model):
    components = holo.extract_components(standard_function, 4)
    assert [P.degree for P in components] == [0, 1, 2, 3, 4]
    assert {P.nodes for P in components} == {10}
    x = sample_points(model, 3, 1)[0]
    assert np.linalg.norm(components[0](x)) <= 1e-12
    assert np.linalg.norm(components[4](x)) <= 1e-10
    assert relative_error(components[3](x), standard_spec.term(3, x)) <= 1e-10
