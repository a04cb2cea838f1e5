"""
Holomorphic matrix functions and their homogeneous Taylor components.

A ``HoloFunction`` is an evaluator on the operator-norm ball B(0; r) of M_m
with values in M_s. Components are recovered with a roots-of-unity
discretization of the Cauchy integral, rescaled by homogeneity so that the
quadrature circle always stays inside the ball. Components can be polarized
into symmetric multilinear maps or linearized as P(x) = T(x^n).
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from python.helpers import matrix_core as mc
from python.helpers.errors import DegreeZero, LinearizationMismatch, OutOfDomain, SingularFrame
from python.helpers.matrix_core import ComplexMatrix, RandomModel
from python.helpers.print_style import PrintStyle

Evaluator = Callable[[ComplexMatrix], ComplexMatrix]

SINGULAR_CONDITION = 1e12
# extract_component uses 2*max(n, DEFAULT_N_MAX)+2 nodes unless told otherwise
DEFAULT_N_MAX = 8
DEFAULT_RHO_RULE = "radius / (2 * (1 + ||x||))"


# ---------------------------------------------------------------------------
# Linear maps M_m -> M_s
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearMapMatrix:
    """A linear map stored as its images of the matrix units; images[i, j] = T(E_ij)."""

    m: int
    s: int
    images: np.ndarray  # shape (m, m, s, s)

    def __post_init__(self):
        if self.images.shape != (self.m, self.m, self.s, self.s):
            raise ValueError(
                f"images must have shape {(self.m, self.m, self.s, self.s)}, got {self.images.shape}"
            )

    def __call__(self, x: ComplexMatrix) -> ComplexMatrix:
        return np.einsum("ij,ijkl->kl", np.asarray(x, dtype=np.complex128), self.images)

    @classmethod
    def from_function(cls, f: Evaluator, m: int, s: int | None = None) -> "LinearMapMatrix":
        first = np.asarray(f(mc.matrix_unit(m, 0, 0)), dtype=np.complex128)
        s = s if s is not None else first.shape[0]
        images = np.zeros((m, m, s, s), dtype=np.complex128)
        for i in range(m):
            for j in range(m):
                images[i, j] = first if (i, j) == (0, 0) else f(mc.matrix_unit(m, i, j))
        return cls(m, s, images)

    @classmethod
    def from_units(cls, m: int, s: int, units: dict[tuple[int, int], ComplexMatrix]) -> "LinearMapMatrix":
        images = np.zeros((m, m, s, s), dtype=np.complex128)
        for (i, j), image in units.items():
            images[i, j] = image
        return cls(m, s, images)

    @classmethod
    def identity(cls, m: int) -> "LinearMapMatrix":
        return cls.from_function(lambda x: x, m)

    def image(self, i: int, j: int) -> ComplexMatrix:
        return self.images[i, j]

    def scaled(self, c: complex) -> "LinearMapMatrix":
        return LinearMapMatrix(self.m, self.s, self.images * c)

    def with_transposed_input(self) -> "LinearMapMatrix":
        """x -> T(x^t)."""
        return LinearMapMatrix(self.m, self.s, np.ascontiguousarray(self.images.transpose(1, 0, 2, 3)))

    def conjugated(self, S: ComplexMatrix, S_inv: ComplexMatrix | None = None) -> "LinearMapMatrix":
        """x -> S T(x) S^-1."""
        S_inv = np.linalg.inv(S) if S_inv is None else S_inv
        return LinearMapMatrix(self.m, self.s, S @ self.images @ S_inv)

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.images))

    def units(self):
        for i in range(self.m):
            for j in range(self.m):
                yield (i, j), self.images[i, j]


# ---------------------------------------------------------------------------
# Holomorphic functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HoloFunction:
    evaluator: Evaluator
    m: int
    s: int
    radius: float = 1.0
    name: str = "anonymous"

    def __call__(self, x: ComplexMatrix) -> ComplexMatrix:
        x = mc.as_matrix(x)
        if x.shape != (self.m, self.m):
            raise ValueError(f"{self.name}: expected a {self.m}x{self.m} input, got {x.shape}")
        norm = mc.spectral_norm(x)
        if norm >= self.radius:
            raise OutOfDomain(
                f"{self.name}: ||x||_2 = {norm:.6g} is outside B(0; {self.radius:.6g})",
                norm=norm,
                radius=self.radius,
            )
        return self.evaluate_unchecked(x)

    def evaluate_unchecked(self, x: ComplexMatrix) -> ComplexMatrix:
        return np.asarray(self.evaluator(x), dtype=np.complex128)

    @classmethod
    def from_callable(cls, f: Evaluator, m: int, s: int | None = None, radius: float = 1.0, name: str = "callable") -> "HoloFunction":
        return cls(f, m, s if s is not None else m, radius, name)

    @classmethod
    def from_linear_map(cls, theta: LinearMapMatrix, radius: float = 1.0, name: str = "linear") -> "HoloFunction":
        return cls(theta, theta.m, theta.s, radius, name)

    @classmethod
    def from_standard_form(cls, spec: "StandardFormSpec", name: str | None = None) -> "HoloFunction":
        label = name or ("transpose-standard-form" if spec.transpose else "standard-form")
        return cls(spec.apply, spec.m, spec.m, spec.radius, label)

    @classmethod
    def zero(cls, m: int, s: int | None = None, radius: float = 1.0) -> "HoloFunction":
        s = s if s is not None else m
        return cls(lambda x: np.zeros((s, s), dtype=np.complex128), m, s, radius, "zero")


def direct_sum_function(f: HoloFunction, g: HoloFunction, name: str | None = None) -> HoloFunction:
    """x -> f(x) ⊕ g(x)."""
    if f.m != g.m:
        raise ValueError("direct sum needs a common domain")
    return HoloFunction(
        lambda x: mc.direct_sum(f.evaluate_unchecked(x), g.evaluate_unchecked(x)),
        f.m,
        f.s + g.s,
        min(f.radius, g.radius),
        name or f"{f.name}+{g.name}",
    )


@dataclass(frozen=True)
class StandardFormSpec:
    """H(x) = sum_n lambdas[n-1] S^-1 y^n S with y = x or x^t."""

    lambdas: tuple[complex, ...]
    S: ComplexMatrix
    transpose: bool = False
    radius: float = 1.0
    S_inv: ComplexMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        S = mc.as_matrix(self.S)
        if S.shape[0] != S.shape[1]:
            raise ValueError(f"S must be square, got {S.shape}")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        cond = float(np.linalg.cond(S))
        if not np.isfinite(cond) or cond > SINGULAR_CONDITION:
            raise SingularFrame(f"S is numerically singular (cond = {cond:.3g})", condition=cond)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "lambdas", tuple(complex(v) for v in self.lambdas))
        object.__setattr__(self, "S_inv", np.linalg.inv(S))

    @property
    def m(self) -> int:
        return self.S.shape[0]

    @property
    def degree(self) -> int:
        return len(self.lambdas)

    def apply(self, x: ComplexMatrix) -> ComplexMatrix:
        y = mc.transpose(x) if self.transpose else np.asarray(x, dtype=np.complex128)
        m = self.m
        if not self.lambdas:
            return np.zeros((m, m), dtype=np.complex128)
        # Horner: y (l1 + y (l2 + ... y lN))
        eye = np.eye(m, dtype=np.complex128)
        acc = self.lambdas[-1] * eye
        for lam in reversed(self.lambdas[:-1]):
            acc = acc @ y + lam * eye
        acc = acc @ y
        return self.S_inv @ acc @ self.S

    def term(self, n: int, x: ComplexMatrix) -> ComplexMatrix:
        """lambda_n S^-1 y^n S for a single degree."""
        if n < 1 or n > self.degree:
            return np.zeros((self.m, self.m), dtype=np.complex128)
        y = mc.transpose(x) if self.transpose else np.asarray(x, dtype=np.complex128)
        return self.lambdas[n - 1] * (self.S_inv @ np.linalg.matrix_power(y, n) @ self.S)

    def __call__(self, x: ComplexMatrix) -> ComplexMatrix:
        return eval_standard_form(self, x)


def eval_standard_form(spec: StandardFormSpec, x: ComplexMatrix) -> ComplexMatrix:
    x = mc.as_matrix(x)
    if x.shape != (spec.m, spec.m):
        raise ValueError(f"expected a {spec.m}x{spec.m} input, got {x.shape}")
    norm = mc.spectral_norm(x)
    if norm >= spec.radius:
        raise OutOfDomain(
            f"||x||_2 = {norm:.6g} is outside B(0; {spec.radius:.6g})",
            norm=norm,
            radius=spec.radius,
        )
    return spec.apply(x)


# ---------------------------------------------------------------------------
# Homogeneous components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousComponent:
    degree: int
    evaluator: Evaluator
    m: int
    s: int
    nodes: int = 0
    rho: float | None = None  # None: DEFAULT_RHO_RULE at each evaluation point
    radius: float = 1.0

    def __call__(self, x: ComplexMatrix) -> ComplexMatrix:
        return np.asarray(self.evaluator(mc.as_matrix(x)), dtype=np.complex128)


def default_rho(radius: float, norm: float) -> float:
    return radius / (2.0 * (1.0 + norm))


def aliasing_warning(nodes: int, degree: int) -> str | None:
    if nodes < 2 * degree:
        return (
            f"AliasingRisk: {nodes} quadrature nodes for degree {degree}; "
            f"components of degree >= {nodes} fold onto lower degrees (use at least {2 * degree})"
        )
    return None


def _node_values(H: HoloFunction, x: ComplexMatrix, nodes: int, rho: float | None) -> tuple[np.ndarray, float]:
    norm = mc.spectral_norm(x)
    r = rho if rho is not None else default_rho(H.radius, norm)
    if r * norm >= H.radius:
        raise OutOfDomain(
            f"quadrature circle of radius {r * norm:.6g} leaves B(0; {H.radius:.6g})",
            rho=r,
            norm=norm,
            radius=H.radius,
        )
    omega = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    values = np.stack([H.evaluate_unchecked(r * w * x) for w in omega])
    return values, r


def evaluate_components(
    H: HoloFunction,
    x: ComplexMatrix,
    n_max: int,
    nodes: int | None = None,
    rho: float | None = None,
) -> np.ndarray:
    """P_0(x) .. P_{n_max}(x) from one set of quadrature values, shape (n_max+1, s, s)."""
    nodes = nodes if nodes is not None else 2 * n_max + 2
    values, r = _node_values(H, mc.as_matrix(x), nodes, rho)
    # numpy's forward FFT carries exp(-2 pi i k n / N), the Cauchy kernel sign
    coefficients = np.fft.fft(values, axis=0) / nodes
    degrees = np.arange(n_max + 1)
    return coefficients[degrees % nodes] / (r ** degrees)[:, None, None]


def extract_component(
    H: HoloFunction,
    n: int,
    nodes: int | None = None,
    rho: float | None = None,
) -> HomogeneousComponent:
    """P_n by N-point roots-of-unity quadrature of the Cauchy integral."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    nodes = nodes if nodes is not None else 2 * max(n, DEFAULT_N_MAX) + 2
    if nodes < 1:
        raise ValueError("need at least one quadrature node")
    warning = aliasing_warning(nodes, n)
    if warning:
        PrintStyle.warning(warning)

    kernel = np.exp(-2j * np.pi * np.arange(nodes) * n / nodes)

    def evaluator(x: ComplexMatrix) -> ComplexMatrix:
        values, r = _node_values(H, x, nodes, rho)
        return np.tensordot(kernel, values, axes=1) / (nodes * r**n)

    return HomogeneousComponent(degree=n, evaluator=evaluator, m=H.m, s=H.s, nodes=nodes, rho=rho, radius=H.radius)


def extract_components(
    H: HoloFunction,
    n_max: int,
    nodes: int | None = None,
    rho: float | None = None,
) -> list[HomogeneousComponent]:
    nodes = nodes if nodes is not None else 2 * n_max + 2
    return [extract_component(H, n, nodes, rho) for n in range(n_max + 1)]


def probe_set(m: int, count: int = 6) -> list[ComplexMatrix]:
    """Fixed unit-spectral-norm probes: identity, E_11 and seeded random matrices."""
    model = RandomModel(seed=7919 + m)
    probes = [np.eye(m, dtype=np.complex128), mc.matrix_unit(m, 0, 0)]
    for _ in range(count):
        x = model.complex_normal((m, m))
        probes.append(x / mc.spectral_norm(x))
    return probes


def component_norm_estimates(
    H: HoloFunction,
    n_max: int,
    nodes: int | None = None,
    probes: Sequence[ComplexMatrix] | None = None,
) -> list[float]:
    """Sampled sup over probes of ||P_n(probe)||_F for n = 0..n_max."""
    probes = probes if probes is not None else probe_set(H.m)
    norms = np.zeros(n_max + 1)
    for probe in probes:
        comps = evaluate_components(H, probe, n_max, nodes)
        norms = np.maximum(norms, np.linalg.norm(comps, axis=(1, 2)))
    return [float(v) for v in norms]


def active_degrees(norms: Sequence[float], tol: float = 1e-9) -> list[int]:
    """Degrees >= 1 whose norm estimate clears tol relative to the largest component."""
    level = tol * (1.0 + max(norms, default=0.0))
    return [n for n in range(1, len(norms)) if norms[n] > level]


def estimate_degree_cutoff(H: HoloFunction, n_max: int, tol: float = 1e-9, nodes: int | None = None) -> list[int]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return active_degrees(component_norm_estimates(H, n_max, nodes), tol)


# ---------------------------------------------------------------------------
# Polarization and linearization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricMultilinear:
    """T(x_1..x_n) recovered from an n-homogeneous P by polarization."""

    component: HomogeneousComponent

    @property
    def degree(self) -> int:
        return self.component.degree

    def __call__(self, *xs: ComplexMatrix) -> ComplexMatrix:
        n = self.degree
        if len(xs) != n:
            raise ValueError(f"expected {n} arguments, got {len(xs)}")
        xs = tuple(mc.as_matrix(x) for x in xs)
        total = np.zeros((self.component.s, self.component.s), dtype=np.complex128)
        for signs in itertools.product((1.0, -1.0), repeat=n):
            point = sum(e * x for e, x in zip(signs, xs))
            total += math.prod(signs) * self.component(point)
        return total / (2**n * math.factorial(n))


def polarize(P: HomogeneousComponent) -> SymmetricMultilinear:
    if P.degree == 0:
        raise DegreeZero("polarization needs degree >= 1")
    return SymmetricMultilinear(P)


def linearization_sample(model: RandomModel, m: int, count: int = 32) -> list[ComplexMatrix]:
    """Random points (half Hermitian) plus every E_ii and E_ii + E_ij."""
    sample = []
    for k in range(count):
        if k % 2 == 0:
            sample.append(mc.random_hermitian(model, m, scale=0.5))
        else:
            x = mc.random_matrix(model, m)
            sample.append(0.5 * x / mc.spectral_norm(x))
    for i in range(m):
        sample.append(mc.matrix_unit(m, i, i))
        for j in range(m):
            if i != j:
                sample.append(mc.matrix_unit(m, i, i) + mc.matrix_unit(m, i, j))
    return sample


def linearize(
    P: HomogeneousComponent,
    model: RandomModel | None = None,
    samples: int = 32,
    tol: float = 1e-9,
) -> LinearMapMatrix:
    """Linear T with P(x) = T(x^n), built on the idempotents E_ii and E_ii + E_ij."""
    n = P.degree
    if n == 0:
        raise DegreeZero("linearization needs degree >= 1")
    m = P.m
    images = np.zeros((m, m, P.s, P.s), dtype=np.complex128)
    for i in range(m):
        e_ii = mc.matrix_unit(m, i, i)
        base = P(e_ii)
        images[i, i] = base
        for j in range(m):
            if i != j:
                images[i, j] = P(e_ii + mc.matrix_unit(m, i, j)) - base
    T = LinearMapMatrix(m, P.s, images)

    model = model if model is not None else RandomModel(seed=0)
    worst, witness = 0.0, None
    for x in linearization_sample(model, m, samples):
        value = P(x)
        residual = mc.frobenius_norm(T(np.linalg.matrix_power(x, n)) - value) / (1.0 + mc.frobenius_norm(value))
        if residual > worst:
            worst, witness = residual, x
    if worst > tol:
        raise LinearizationMismatch(
            f"degree-{n} component is not of the form T(x^{n}) (residual {worst:.3e})",
            witness=witness,
            residual=worst,
            degree=n,
        )
    return T