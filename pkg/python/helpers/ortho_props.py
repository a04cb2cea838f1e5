"""
Randomized property testers for orthogonal additivity, orthogonal
multiplicativity and zero-product preservation.

Every tester draws its trial inputs sequentially from a RandomModel, scores
each trial with a relative residual (a +1 regularizer in the denominators)
and reduces in trial order to a Verdict carrying the worst witness. A Verdict
is sampled evidence, not a proof.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from python.helpers import matrix_core as mc
from python.helpers.holo import HoloFunction, HomogeneousComponent
from python.helpers.matrix_core import ComplexMatrix, RandomModel

DEFAULT_TRIALS = 200

Pair = tuple[ComplexMatrix, ComplexMatrix]
PairSampler = Callable[[RandomModel, int], Pair]


@dataclass(frozen=True)
class Witness:
    a: ComplexMatrix
    b: ComplexMatrix
    residual: float
    detail: dict[str, Any] | None = None


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    trials: int
    max_residual: float
    tolerance: float
    witness: Witness | None = None

    def __post_init__(self):
        # passed <=> no witness <=> max_residual within tolerance
        if self.passed != (self.witness is None) or self.passed != (self.max_residual <= self.tolerance):
            raise ValueError(f"inconsistent verdict for {self.name}")


def reduce_trials(
    name: str,
    pairs: Sequence[Pair],
    score: Callable[[ComplexMatrix, ComplexMatrix], float | tuple[float, dict[str, Any]]],
    tol: float,
    workers: int = 1,
) -> Verdict:
    """Score every pair and keep the first worst one (trial-index order)."""
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda pair: score(*pair), pairs))
    else:
        results = [score(a, b) for a, b in pairs]

    worst, worst_index, worst_detail = 0.0, -1, None
    for index, result in enumerate(results):
        residual, detail = result if isinstance(result, tuple) else (result, None)
        # NaN or overflow counts as an unbounded failure
        residual = float(residual) if math.isfinite(residual) else math.inf
        if residual > worst:
            worst, worst_index, worst_detail = residual, index, detail

    passed = worst <= tol
    witness = None
    if not passed:
        a, b = pairs[worst_index]
        witness = Witness(a=a, b=b, residual=worst, detail=worst_detail)
    return Verdict(name=name, passed=passed, trials=len(pairs), max_residual=worst, tolerance=tol, witness=witness)


def sample_pairs(
    sampler: PairSampler,
    model: RandomModel,
    m: int,
    trials: int,
    scale: float,
) -> list[Pair]:
    """Pairs rescaled so each factor has spectral norm uniform in (0, scale]."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pairs = []
    for _ in range(trials):
        a, b = sampler(model, m)
        t = scale * (1.0 - float(model.uniform()))
        norm = max(mc.spectral_norm(a), mc.spectral_norm(b), 1e-300)
        pairs.append((a * (t / norm), b * (t / norm)))
    return pairs


def _product_residual(x: ComplexMatrix, y: ComplexMatrix) -> float:
    return mc.frobenius_norm(x @ y) / ((1.0 + mc.frobenius_norm(x)) * (1.0 + mc.frobenius_norm(y)))


def test_orthogonal_additivity(
    H: HoloFunction,
    trials: int = DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    model = model if model is not None else RandomModel()
    pairs = sample_pairs(mc.random_orthogonal_selfadjoint_pair, model, H.m, trials, H.radius / 4)

    def score(a, b):
        total = H(a + b)
        return mc.frobenius_norm(total - H(a) - H(b)) / (1.0 + mc.frobenius_norm(total))

    return reduce_trials("orthogonal_additivity", pairs, score, tol, workers)


def test_orthogonal_multiplicativity(
    H: HoloFunction,
    trials: int = DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    model = model if model is not None else RandomModel()
    pairs = sample_pairs(mc.random_orthogonal_selfadjoint_pair, model, H.m, trials, H.radius / 4)
    return reduce_trials(
        "orthogonal_multiplicativity",
        pairs,
        lambda a, b: _product_residual(H(a), H(b)),
        tol,
        workers,
    )


def test_zero_product_preservation(
    H: HoloFunction,
    trials: int = DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    model = model if model is not None else RandomModel()
    pairs = sample_pairs(mc.random_zero_product_pair, model, H.m, trials, H.radius / 4)
    return reduce_trials(
        "zero_product_preservation",
        pairs,
        lambda a, b: _product_residual(H(a), H(b)),
        tol,
        workers,
    )


def test_component_cross_orthogonality(
    components: Sequence[HomogeneousComponent],
    trials: int = DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    """P_m(x) P_n(y) = 0 for orthogonal self-adjoint x, y and every degree pair."""
    if not components:
        raise ValueError("no components to test")
    model = model if model is not None else RandomModel()
    m = components[0].m
    pairs = sample_pairs(mc.random_orthogonal_selfadjoint_pair, model, m, trials, 1.0)

    def score(x, y):
        left = [P(x) for P in components]
        right = [P(y) for P in components]
        worst, degrees = 0.0, None
        for P, px in zip(components, left):
            for Q, qy in zip(components, right):
                residual = _product_residual(px, qy)
                if residual > worst:
                    worst, degrees = residual, (P.degree, Q.degree)
        return worst, {"degrees": degrees}

    return reduce_trials("component_cross_orthogonality", pairs, score, tol, workers)


def test_component_additivity(
    components: Sequence[HomogeneousComponent],
    trials: int = DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    """Each P_n is orthogonally additive on self-adjoint elements."""
    if not components:
        raise ValueError("no components to test")
    model = model if model is not None else RandomModel()
    m = components[0].m
    pairs = sample_pairs(mc.random_orthogonal_selfadjoint_pair, model, m, trials, 1.0)

    def score(a, b):
        worst, degree = 0.0, None
        for P in components:
            total = P(a + b)
            residual = mc.frobenius_norm(total - P(a) - P(b)) / (1.0 + mc.frobenius_norm(total))
            if residual > worst:
                worst, degree = residual, P.degree
        return worst, {"degree": degree}

    return reduce_trials("component_additivity", pairs, score, tol, workers)


def constant_term_residual(H: HoloFunction) -> float:
    """||P_0||_F = ||H(0)||_F."""
    return mc.frobenius_norm(H(np.zeros((H.m, H.m), dtype=np.complex128)))


def transpose_witness(m: int) -> Pair:
    """Orthogonal rank-one projections a, b in M_m with a b^t = a != 0."""
    if m < 2:
        raise ValueError("transpose witness needs m >= 2")
    a = 0.5 * np.array([[1, 1j], [-1j, 1]], dtype=np.complex128)
    b = 0.5 * np.array([[1, -1j], [1j, 1]], dtype=np.complex128)
    return mc.embed_top_left(a, m), mc.embed_top_left(b, m)
