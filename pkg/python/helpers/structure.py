"""
Classification of orthogonally multiplicative maps on M_m.

Linear maps fall into two cases: a nilpotent range, or m = s and
theta(x) = lam * S^-1 y S with y = x or x^t. Holomorphic maps are classified by
linearizing their homogeneous components, anchoring on the first component
whose range has nonzero trace, and fitting every other component to the
anchor's similarity.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

from python.helpers import holo
from python.helpers import matrix_core as mc
from python.helpers import ortho_props as op
from python.helpers.errors import (
    DimensionMismatch,
    HypothesisFailed,
    HypothesisViolated,
    Inconclusive,
    MixedForm,
    NotAutomorphism,
    ReconstructionFailed,
    SingularFrame,
)
from python.helpers.holo import HoloFunction, LinearMapMatrix, StandardFormSpec
from python.helpers.log import Log
from python.helpers.matrix_core import ComplexMatrix, RandomModel
from python.helpers.ortho_props import Verdict
from python.helpers.print_style import PrintStyle

RECOVERY_TOL = 1e-8
ANCHOR_TOL = 1e-6


class LinearTag(str, Enum):
    NILPOTENT_RANGE = "NilpotentRange"
    SIMILARITY = "Similarity"
    TRANSPOSE_SIMILARITY = "TransposeSimilarity"


class Tag(str, Enum):
    ZERO_TRACE_RANGE = "ZeroTraceRange"
    STANDARD = "Standard"
    TRANSPOSE_STANDARD = "TransposeStandard"


@dataclass(frozen=True)
class LinearClassification:
    tag: LinearTag
    lam: complex | None = None
    S: ComplexMatrix | None = None
    evidence: dict[str, Any] = field(default_factory=dict)

    @property
    def transpose(self) -> bool:
        return self.tag == LinearTag.TRANSPOSE_SIMILARITY

    def reconstruct(self, x: ComplexMatrix) -> ComplexMatrix:
        """lam * S^-1 y S; only defined for the similarity tags."""
        if self.S is None or self.lam is None:
            raise ValueError("nilpotent-range maps have no reconstruction")
        y = mc.transpose(x) if self.transpose else x
        return self.lam * (np.linalg.solve(self.S, y) @ self.S)


@dataclass(frozen=True)
class ClassifyParams:
    n_max: int = 8
    nodes: int = 0
    tol_construct: float = 1e-12
    tol_verify: float = 1e-9
    tol_decide: float = 1e-6
    tol_nilpotent: float = 1e-9
    tol_zero_component: float = 1e-9
    trials: int = 200
    seed: int = 0
    anchor: int | None = None
    linearize_samples: int = 32
    anchor_samples: int = 16
    verify_samples: int = 20
    workers: int = 1

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.anchor is not None and not 1 <= self.anchor <= self.n_max:
            raise ValueError(f"anchor must lie in 1..{self.n_max}")

    @property
    def resolved_nodes(self) -> int:
        return self.nodes if self.nodes > 0 else 2 * self.n_max + 2

    @classmethod
    def from_settings(cls, settings: dict[str, Any], **overrides) -> "ClassifyParams":
        names = cls.__dataclass_fields__.keys()
        values = {k: v for k, v in settings.items() if k in names}
        values.update({k: v for k, v in overrides.items() if k in names})
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class Classification:
    tag: Tag
    lambdas: tuple[complex, ...] = ()
    S: ComplexMatrix | None = None
    k_anchor: int | None = None
    report: dict[str, Any] = field(default_factory=dict)

    @property
    def transpose(self) -> bool:
        return self.tag == Tag.TRANSPOSE_STANDARD

    def standard_form(self, radius: float = 1.0) -> StandardFormSpec:
        if self.S is None:
            raise ValueError(f"{self.tag.value} has no standard form")
        return StandardFormSpec(self.lambdas, self.S, self.transpose, radius)


# ---------------------------------------------------------------------------
# Hypothesis checks on linear maps
# ---------------------------------------------------------------------------


def _relative(x: ComplexMatrix, y: ComplexMatrix) -> float:
    return mc.frobenius_norm(x - y) / (1.0 + mc.frobenius_norm(y))


def test_jordan_relation(
    theta: LinearMapMatrix,
    trials: int = op.DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    """theta(1) commutes with theta(a), theta(1)theta(a^2) = theta(a)^2, and the Jordan identity."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    model = model if model is not None else RandomModel()
    pairs = []
    for _ in range(trials):
        a, b = mc.random_matrix(model, theta.m), mc.random_matrix(model, theta.m)
        pairs.append((a / mc.frobenius_norm(a), b / mc.frobenius_norm(b)))
    one = theta(np.eye(theta.m, dtype=np.complex128))

    def score(a, b):
        ta, tb = theta(a), theta(b)
        ta2 = theta(a @ a)
        residuals = {
            "commute": mc.frobenius_norm(one @ ta - ta @ one),
            "square": max(
                mc.frobenius_norm(one @ ta2 - ta @ ta),
                mc.frobenius_norm(ta2 @ one - ta @ ta),
            ),
            "jordan": mc.frobenius_norm(one @ theta(a @ b + b @ a) - ta @ tb - tb @ ta),
        }
        scale = (1.0 + mc.frobenius_norm(one)) * (1.0 + mc.frobenius_norm(ta)) * (1.0 + mc.frobenius_norm(tb))
        relation = max(residuals, key=residuals.__getitem__)
        return residuals[relation] / scale, {"relation": relation}

    return op.reduce_trials("jordan_relation", pairs, score, tol, workers)


def _pair_orthogonality(
    name: str,
    theta: LinearMapMatrix,
    sampler: op.PairSampler,
    trials: int,
    tol: float,
    model: RandomModel | None,
    workers: int,
    both_orders: bool,
) -> Verdict:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    model = model if model is not None else RandomModel()
    pairs = [sampler(model, theta.m) for _ in range(trials)]

    def score(p, q):
        tp, tq = theta(p), theta(q)
        residual = op._product_residual(tp, tq)
        if both_orders:
            residual = max(residual, op._product_residual(tq, tp))
        return residual

    return op.reduce_trials(name, pairs, score, tol, workers)


def test_projection_orthogonality(
    theta: LinearMapMatrix,
    trials: int = op.DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    """theta(p) theta(q) = 0 for orthogonal rank-one projections p, q."""
    return _pair_orthogonality(
        "projection_orthogonality",
        theta,
        mc.random_rank_one_projection_pair,
        trials,
        tol,
        model,
        workers,
        both_orders=True,
    )


def test_idempotent_orthogonality(
    theta: LinearMapMatrix,
    trials: int = op.DEFAULT_TRIALS,
    tol: float = 1e-9,
    model: RandomModel | None = None,
    workers: int = 1,
) -> Verdict:
    """theta(e) theta(f) = 0 for rank-one idempotents with ef = 0. Fails for transposes."""
    return _pair_orthogonality(
        "idempotent_orthogonality",
        theta,
        mc.random_rank_one_idempotent_pair,
        trials,
        tol,
        model,
        workers,
        both_orders=False,
    )


# ---------------------------------------------------------------------------
# Range conditions
# ---------------------------------------------------------------------------


def has_trivial_multiplication(theta: LinearMapMatrix, tol: float = 1e-9) -> bool:
    # bilinear in the unit images, so checking all unit pairs is exhaustive
    images = [image for _, image in theta.units()]
    return all(op._product_residual(x, y) <= tol for x in images for y in images)


def range_flags(
    images: Sequence[ComplexMatrix],
    tol: float = 1e-9,
    tol_nilpotent: float = mc.DEFAULT_NILPOTENT_TOL,
) -> dict[str, bool]:
    """Trace-zero, nilpotency and trivial multiplication over a sample of range elements."""
    images = list(images)
    return {
        "trace_zero": all(abs(np.trace(y)) <= tol * (1.0 + mc.frobenius_norm(y)) for y in images),
        "nilpotent": all(mc.is_nilpotent(y, tol_nilpotent) for y in images),
        "trivial_multiplication": all(op._product_residual(x, y) <= tol for x in images for y in images),
    }


def range_sample(theta: LinearMapMatrix, model: RandomModel, samples: int = 16) -> list[ComplexMatrix]:
    images = [image for _, image in theta.units()]
    images.extend(theta(mc.random_matrix(model, theta.m)) for _ in range(samples))
    return images


# ---------------------------------------------------------------------------
# Similarity recovery
# ---------------------------------------------------------------------------


def _idempotent_probe(m: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    # ab = 0 while ba = E_21
    a = mc.matrix_unit(m, 0, 0)
    b = mc.matrix_unit(m, 1, 0) + mc.matrix_unit(m, 1, 1)
    return a, b


def detect_antihomomorphism(Phi: LinearMapMatrix, tol: float = 1e-6) -> bool:
    """True when Phi reverses the zero product of (E_11, E_21 + E_22)."""
    if Phi.m < 2:
        raise Inconclusive("need m >= 2 to tell products apart", products=None)
    a, b = _idempotent_probe(Phi.m)
    reference = mc.frobenius_norm(Phi(mc.matrix_unit(Phi.m, 1, 0)))
    if reference == 0.0:
        raise Inconclusive("Phi(E_21) = 0", products=(0.0, 0.0))
    pa, pb = Phi(a), Phi(b)
    forward = mc.frobenius_norm(pa @ pb) / reference
    backward = mc.frobenius_norm(pb @ pa) / reference
    if (forward > tol) == (backward > tol):
        raise Inconclusive(
            f"Phi(a)Phi(b) = {forward:.3e}, Phi(b)Phi(a) = {backward:.3e}: neither order vanishes alone",
            products=(forward, backward),
        )
    return forward > tol


def _check_automorphism(Phi: LinearMapMatrix, tol: float):
    m = Phi.m
    eye = np.eye(m, dtype=np.complex128)
    residual = _relative(Phi(eye), eye)
    if residual > tol:
        raise NotAutomorphism(f"Phi(I) != I (residual {residual:.3e})", pair=None, residual=residual)
    for i in range(m):
        for j in range(m):
            left = Phi.image(i, j)
            for k in range(m):
                for l in range(m):
                    product = left @ Phi.image(k, l)
                    expected = Phi.image(i, l) if j == k else np.zeros_like(product)
                    residual = _relative(product, expected)
                    if residual > tol:
                        raise NotAutomorphism(
                            f"Phi(E_{i + 1}{j + 1}) Phi(E_{k + 1}{l + 1}) breaks the unit relations (residual {residual:.3e})",
                            pair=((i, j), (k, l)),
                            residual=residual,
                        )


def recover_similarity(
    Phi: LinearMapMatrix,
    tol: float = 1e-6,
    verify_tol: float = RECOVERY_TOL,
    gauge_tol: float = 1e-12,
) -> ComplexMatrix:
    """S with Phi(x) = S^-1 x S, read off the images of the matrix units."""
    if Phi.m != Phi.s:
        raise NotAutomorphism(f"Phi maps M_{Phi.m} into M_{Phi.s}", pair=None, residual=None)
    _check_automorphism(Phi, tol)
    m = Phi.m
    f11 = Phi.image(0, 0)
    # F_11 w for w = e_j is column j; take the longest one
    column = int(np.argmax(np.linalg.norm(f11, axis=0)))
    s1 = f11[:, column] / np.linalg.norm(f11[:, column])
    lead = s1[np.flatnonzero(np.abs(s1) > gauge_tol)[0]]
    s1 = s1 * (np.conj(lead) / abs(lead))

    R = np.empty((m, m), dtype=np.complex128)
    R[:, 0] = s1
    for i in range(1, m):
        R[:, i] = Phi.image(i, 0) @ s1
    cond = float(np.linalg.cond(R))
    if not np.isfinite(cond) or cond > holo.SINGULAR_CONDITION:
        raise SingularFrame(f"recovered frame is numerically singular (cond = {cond:.3g})", condition=cond)
    S = np.linalg.inv(R)

    for (i, j), image in Phi.units():
        residual = _relative(R @ mc.matrix_unit(m, i, j) @ S, image)
        if residual > verify_tol:
            raise NotAutomorphism(
                f"recovered similarity misses Phi(E_{i + 1}{j + 1}) (residual {residual:.3e})",
                pair=((i, j),),
                residual=residual,
            )
    return S


def reconstruction_residual(
    theta: LinearMapMatrix,
    lam: complex,
    S: ComplexMatrix,
    transpose: bool = False,
    S_inv: ComplexMatrix | None = None,
) -> float:
    """Worst relative miss of lam * S^-1 E S (or E^t) over the matrix units."""
    S_inv = np.linalg.inv(S) if S_inv is None else S_inv
    form = LinearMapMatrix.identity(theta.m)
    if transpose:
        form = form.with_transposed_input()
    # x -> S^-1 (lam y) S
    expected = form.scaled(lam).conjugated(S_inv, S)
    return max((_relative(expected.image(i, j), image) for (i, j), image in theta.units()), default=0.0)


# ---------------------------------------------------------------------------
# Linear classification
# ---------------------------------------------------------------------------


def classify_linear_map(
    theta: LinearMapMatrix,
    tol: float = 1e-6,
    model: RandomModel | None = None,
    trials: int = 64,
    tol_nilpotent: float = mc.DEFAULT_NILPOTENT_TOL,
    workers: int = 1,
    tol_construct: float = 1e-12,
) -> LinearClassification:
    model = model if model is not None else RandomModel()
    gate_model, range_model, idempotent_model = model.fork(3)
    m, s = theta.m, theta.s

    gate = test_projection_orthogonality(theta, trials, tol, gate_model, workers)
    if not gate.passed:
        witness = gate.witness
        raise HypothesisViolated(
            f"theta(p) theta(q) != 0 for orthogonal rank-one projections (residual {gate.max_residual:.3e})",
            p=witness.a if witness else None,
            q=witness.b if witness else None,
            residual=gate.max_residual,
        )

    flags = range_flags(range_sample(theta, range_model), tol, tol_nilpotent)
    evidence: dict[str, Any] = {"m": m, "s": s, "hypothesis": gate, "range": flags}
    if s > m:
        raise DimensionMismatch(
            f"theta maps M_{m} into the larger M_{s}",
            m=m,
            s=s,
            diagnostics=flags,
        )
    if flags["nilpotent"]:
        return LinearClassification(LinearTag.NILPOTENT_RANGE, evidence=evidence)
    if s != m:
        raise DimensionMismatch(
            f"range of theta is not nilpotent but M_{m} -> M_{s} with s < m",
            m=m,
            s=s,
            diagnostics=flags,
        )

    one = theta(np.eye(m, dtype=np.complex128))
    lam = complex(np.trace(one) / m)
    scalar_residual = _relative(lam * np.eye(m), one)
    if abs(lam) <= tol or scalar_residual > tol:
        raise ReconstructionFailed(
            f"theta(1) is not a nonzero scalar (lam = {lam:.6g}, residual {scalar_residual:.3e})",
            residual=scalar_residual,
            lam=lam,
        )

    Phi = theta.scaled(1.0 / lam)
    transpose = detect_antihomomorphism(Phi, tol)
    S = recover_similarity(Phi.with_transposed_input() if transpose else Phi, tol, gauge_tol=tol_construct)
    residual = reconstruction_residual(theta, lam, S, transpose)
    if residual > tol:
        raise ReconstructionFailed(
            f"lam S^-1 x S misses theta on the matrix units (residual {residual:.3e})",
            residual=residual,
        )

    evidence["reconstruction_residual"] = residual
    evidence["idempotents"] = test_idempotent_orthogonality(theta, trials, tol, idempotent_model, workers)
    tag = LinearTag.TRANSPOSE_SIMILARITY if transpose else LinearTag.SIMILARITY
    return LinearClassification(tag, lam, S, evidence)


def fit_component(
    T: LinearMapMatrix,
    S: ComplexMatrix,
    transpose: bool = False,
    tol: float = 1e-6,
    zero_tol: float = 1e-9,
    S_inv: ComplexMatrix | None = None,
) -> complex:
    """lam with T(x) = lam S^-1 y S on the matrix units, 0 for a vanishing T."""
    if T.frobenius_norm() <= zero_tol:
        return 0j
    if T.s != T.m:
        raise MixedForm(f"M_{T.m} -> M_{T.s} component has no similarity form", degrees=None, detail="dimension")
    lam = complex(np.trace(T(np.eye(T.m, dtype=np.complex128))) / T.m)
    residual = reconstruction_residual(T, lam, S, transpose, S_inv)
    if residual > tol:
        raise MixedForm(
            f"component is neither zero nor lam S^-1 {'x^t' if transpose else 'x'} S (residual {residual:.3e})",
            degrees=None,
            detail={"lam": lam, "residual": residual},
        )
    return lam


# ---------------------------------------------------------------------------
# Holomorphic classification
# ---------------------------------------------------------------------------


def _verification_sample(model: RandomModel, m: int, count: int, radius: float) -> list[ComplexMatrix]:
    sample = []
    for k in range(count):
        x = mc.random_hermitian(model, m) if k % 2 == 0 else mc.random_matrix(model, m)
        t = 0.5 * radius * (1.0 - float(model.uniform()))
        sample.append(x * (t / max(mc.spectral_norm(x), 1e-300)))
    return sample


def _find_anchor(
    maps: dict[int, LinearMapMatrix],
    candidates: Sequence[int],
    directions: Sequence[ComplexMatrix],
    tol: float,
) -> tuple[int | None, dict[int, float]]:
    traces: dict[int, float] = {}
    for n in candidates:
        T = maps[n]
        value = max(abs(np.trace(T(np.linalg.matrix_power(d, n)))) for d in directions)
        traces[n] = float(value)
        if value > tol * (1.0 + T.frobenius_norm()):
            return n, traces
    return None, traces


def classify_holomorphic(
    H: HoloFunction,
    params: ClassifyParams | None = None,
    log: Log | None = None,
) -> Classification:
    params = params if params is not None else ClassifyParams()
    log = log if log is not None else Log()
    gate_model, linearize_model, anchor_model, linear_model, verify_model, zero_product_model = RandomModel(
        params.seed
    ).fork(6)
    m, s = H.m, H.s
    nodes = params.resolved_nodes
    report: dict[str, Any] = {"m": m, "s": s, "nodes": nodes, "verdicts": {}}

    # hypothesis gate
    for tester in (op.test_orthogonal_additivity, op.test_orthogonal_multiplicativity):
        verdict = tester(H, params.trials, params.tol_decide, gate_model, params.workers)
        report["verdicts"][verdict.name] = verdict
        log.log("verdict", verdict.name, "passed" if verdict.passed else "failed", max_residual=verdict.max_residual)
        if not verdict.passed:
            raise HypothesisFailed(
                f"{verdict.name} fails (residual {verdict.max_residual:.3e})",
                verdict=verdict,
                reason=verdict.name,
            )

    # components
    warning = holo.aliasing_warning(nodes, params.n_max)
    if warning:
        log.log("warning", "aliasing", warning)
        report["warnings"] = [warning]
    norms = holo.component_norm_estimates(H, params.n_max, nodes)
    report["component_norms"] = norms
    if norms[0] > params.tol_decide * (1.0 + max(norms)):
        raise HypothesisFailed(f"P_0 != 0 (norm {norms[0]:.3e})", verdict=None, reason="constant_term")
    zero_level = params.tol_zero_component * (1.0 + max(norms))
    active = holo.active_degrees(norms, params.tol_zero_component)
    report["active_degrees"] = active
    log.log("step", "components", f"active degrees {active}", norms=norms)

    maps = {
        n: holo.linearize(holo.extract_component(H, n, nodes), linearize_model, params.linearize_samples, params.tol_verify)
        for n in active
    }
    log.log("step", "linearize", f"{len(maps)} components linearized")

    # anchor
    if params.anchor is not None and params.anchor not in maps:
        raise ReconstructionFailed(f"forced anchor degree {params.anchor} is inactive", residual=None)
    directions = [np.eye(m, dtype=np.complex128)] + [
        mc.random_hermitian(anchor_model, m, 0.5) for _ in range(params.anchor_samples)
    ]
    candidates = [params.anchor] if params.anchor is not None else active
    k, traces = _find_anchor(maps, candidates, directions, ANCHOR_TOL)
    report["anchor_traces"] = traces
    log.log("step", "anchor", f"anchor degree {k}", traces=traces)

    verify = _verification_sample(verify_model, m, params.verify_samples, H.radius)
    if k is None:
        if params.anchor is not None:
            raise ReconstructionFailed(f"forced anchor degree {params.anchor} has a trace-zero range", residual=None)
        values = [H(x) for x in verify]
        worst = max(abs(np.trace(y)) / (1.0 + mc.frobenius_norm(y)) for y in values)
        if worst > params.tol_decide:
            raise ReconstructionFailed(f"sampled H(x) has nonzero trace ({worst:.3e})", residual=worst)
        report["trace_residual"] = worst
        report["range"] = range_flags(values, params.tol_decide, params.tol_nilpotent)
        if s > m:
            report["diagnostics"] = f"s = {s} > m = {m}"
        log.log("info", "result", Tag.ZERO_TRACE_RANGE.value, **report["range"])
        report["log"] = log.output()
        return Classification(Tag.ZERO_TRACE_RANGE, report=report)

    try:
        linear = classify_linear_map(
            maps[k],
            params.tol_decide,
            linear_model,
            min(params.trials, 64),
            params.tol_nilpotent,
            params.workers,
            params.tol_construct,
        )
    except DimensionMismatch as e:
        raise MixedForm(
            f"degree-{k} component has nonzero trace but no similarity form: {e.message}",
            degrees=[k],
            detail=e.to_dict(),
        ) from e
    if linear.tag == LinearTag.NILPOTENT_RANGE:
        raise ReconstructionFailed(f"degree-{k} component has nonzero trace and a nilpotent range", residual=None)
    transpose = linear.transpose
    S = linear.S
    S_inv = np.linalg.inv(S)
    log.log("step", "similarity", linear.tag.value, degree=k, lam=linear.lam)

    lambdas = [0j] * params.n_max
    mixed = []
    for n, T in maps.items():
        try:
            lambdas[n - 1] = fit_component(T, S, transpose, params.tol_decide, zero_level, S_inv)
        except MixedForm:
            mixed.append(n)
    if mixed:
        raise MixedForm(f"components of degree {mixed} do not share the anchor's form", degrees=mixed, detail=None)
    while lambdas and lambdas[-1] == 0:
        lambdas.pop()
    log.log("step", "fit", f"lambdas for degrees 1..{len(lambdas)}")

    form = StandardFormSpec(tuple(lambdas), S, transpose, H.radius)
    residual = max(_relative(form.apply(x), H(x)) for x in verify)
    report["reconstruction_residual"] = residual
    if residual > params.tol_decide:
        raise ReconstructionFailed(f"reconstructed form misses H (residual {residual:.3e})", residual=residual)
    log.log("step", "reconstruct", "verified", residual=residual)

    zero_product = op.test_zero_product_preservation(H, params.trials, params.tol_verify, zero_product_model, params.workers)
    report["verdicts"][zero_product.name] = zero_product
    log.log("verdict", zero_product.name, "passed" if zero_product.passed else "failed", max_residual=zero_product.max_residual)
    if transpose and zero_product.passed:
        message = "transpose form preserved zero products on every sampled pair"
        PrintStyle.warning(message)
        log.log("warning", zero_product.name, message)

    tag = Tag.TRANSPOSE_STANDARD if transpose else Tag.STANDARD
    log.log("info", "result", tag.value, k_anchor=k)
    report["log"] = log.output()
    return Classification(tag, tuple(lambdas), S, k, report)
