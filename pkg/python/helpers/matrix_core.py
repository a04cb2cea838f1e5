"""
Dense complex matrix toolkit.

Matrices are plain ``numpy`` arrays of dtype complex128. This module adds the
pieces the rest of the library needs on top of numpy: a cyclic Jacobi
eigensolver for Hermitian matrices, matrix units and block helpers, and
seeded generators for the structured inputs the property testers consume
(orthogonal self-adjoint pairs, one-sided zero-product pairs, rank-one
projections and idempotents, similarities with a bounded condition number).
"""

from dataclasses import dataclass, field
from typing import TypeAlias

import numpy as np
import numpy.typing as npt

from python.helpers.errors import NotHermitian, NoConvergence

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]

DEFAULT_NILPOTENT_TOL = 1e-9
DEFAULT_MAX_SWEEPS = 60


def as_matrix(x) -> ComplexMatrix:
    a = np.array(x, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def adjoint(x: ComplexMatrix) -> ComplexMatrix:
    return np.conj(x).T


def transpose(x: ComplexMatrix) -> ComplexMatrix:
    return np.ascontiguousarray(x.T)


def frobenius_norm(x: ComplexMatrix) -> float:
    return float(np.linalg.norm(x))


def spectral_norm(x: ComplexMatrix) -> float:
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def is_hermitian(a: ComplexMatrix, tol: float = 1e-10) -> bool:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return frobenius_norm(a - adjoint(a)) <= tol * (1.0 + frobenius_norm(a))


def matrix_unit(m: int, i: int, j: int, cols: int | None = None) -> ComplexMatrix:
    """E_ij with zero-based indices."""
    e = np.zeros((m, cols if cols is not None else m), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def embed_top_left(x: ComplexMatrix, m: int) -> ComplexMatrix:
    """x ⊕ 0 inside M_m."""
    r, c = x.shape
    if r > m or c > m:
        raise ValueError(f"cannot embed a {r}x{c} block into M_{m}")
    out = np.zeros((m, m), dtype=np.complex128)
    out[:r, :c] = x
    return out


def direct_sum(x: ComplexMatrix, y: ComplexMatrix) -> ComplexMatrix:
    out = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), dtype=np.complex128)
    out[: x.shape[0], : x.shape[1]] = x
    out[x.shape[0] :, x.shape[1] :] = y
    return out


# ---------------------------------------------------------------------------
# Hermitian spectral decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: npt.NDArray[np.float64]  # ascending
    unitary: ComplexMatrix  # columns are orthonormal eigenvectors
    sweeps: int = 0

    def reconstruct(self) -> ComplexMatrix:
        return (self.unitary * self.eigenvalues) @ adjoint(self.unitary)


def _off_diagonal_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def hermitian_eigendecomposition(
    a: ComplexMatrix,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    tol: float = 1e-15,
) -> SpectralDecomposition:
    """Cyclic Jacobi eigensolver for complex Hermitian matrices.

    Each rotation first removes the phase of a[p, q] and then applies a real
    plane rotation that annihilates it, so the accumulated transform stays
    unitary. Sweeps stop once the off-diagonal mass is below
    ``tol * ||a||_F``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix is not square: {a.shape}", shape=a.shape)
    scale = frobenius_norm(a)
    if frobenius_norm(a - adjoint(a)) > 1e-10 * (1.0 + scale):
        raise NotHermitian(
            "matrix is not Hermitian",
            asymmetry=frobenius_norm(a - adjoint(a)),
        )

    work = (a + adjoint(a)) / 2
    vectors = np.eye(n, dtype=np.complex128)
    # roundoff floor grows with the number of off-diagonal entries
    threshold = max(tol, 4 * n * np.finfo(float).eps) * max(scale, np.finfo(float).tiny)

    sweeps = 0
    while _off_diagonal_norm(work) > threshold:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps",
                sweeps=sweeps,
                off_diagonal=_off_diagonal_norm(work),
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                r = abs(apq)
                if r <= threshold * 1e-3:
                    continue
                phase = apq / r
                app = work[p, p].real
                aqq = work[q, q].real
                theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                g = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128,
                )
                idx = [p, q]
                work[:, idx] = work[:, idx] @ g
                work[idx, :] = adjoint(g) @ work[idx, :]
                vectors[:, idx] = vectors[:, idx] @ g
                work[p, q] = 0.0
                work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real

    eigenvalues = np.real(np.diag(work)).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralDecomposition(
        eigenvalues=eigenvalues[order],
        unitary=vectors[:, order],
        sweeps=sweeps,
    )


def spectral_projections(a: ComplexMatrix, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> list[ComplexMatrix]:
    """Rank-one projections p_i with a = sum mu_i p_i and sum p_i = I."""
    dec = hermitian_eigendecomposition(a, max_sweeps=max_sweeps)
    cols = dec.unitary
    return [np.outer(cols[:, i], np.conj(cols[:, i])) for i in range(cols.shape[1])]


def singular_values(x: ComplexMatrix, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> npt.NDArray[np.float64]:
    """Descending singular values from the spectrum of adjoint(x)·x."""
    gram = adjoint(x) @ x
    dec = hermitian_eigendecomposition((gram + adjoint(gram)) / 2, max_sweeps=max_sweeps)
    return np.sqrt(np.clip(dec.eigenvalues, 0.0, None))[::-1]


def condition_number(x: ComplexMatrix) -> float:
    sigma = singular_values(x)
    if sigma[-1] <= 0.0:
        return float("inf")
    return float(sigma[0] / sigma[-1])


def is_nilpotent(x: ComplexMatrix, tol: float = DEFAULT_NILPOTENT_TOL) -> bool:
    # Cayley-Hamilton: a nilpotent s x s matrix satisfies x^s = 0
    x = as_matrix(x)
    s = x.shape[0]
    if x.shape[0] != x.shape[1]:
        raise ValueError(f"is_nilpotent needs a square matrix, got {x.shape}")
    power = np.linalg.matrix_power(x, s)
    return frobenius_norm(power) <= tol * (1.0 + frobenius_norm(x)) ** s


# ---------------------------------------------------------------------------
# Seeded generators
# ---------------------------------------------------------------------------


@dataclass
class RandomModel:
    """Deterministic random stream. Not thread-safe; fork instead of sharing."""

    seed: int = 0
    sequence: np.random.SeedSequence = field(init=False, repr=False)
    generator: np.random.Generator = field(init=False, repr=False)
    position: int = field(default=0, init=False)

    def __post_init__(self):
        self.sequence = np.random.SeedSequence(self.seed)
        self.generator = np.random.Generator(np.random.PCG64(self.sequence))

    def _tick(self) -> np.random.Generator:
        self.position += 1
        return self.generator

    def fork(self, n: int = 1) -> list["RandomModel"]:
        return [
            RandomModel(int(child.generate_state(1, dtype=np.uint64)[0]))
            for child in self.sequence.spawn(n)
        ]

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self._tick().uniform(low, high, size)

    def normal(self, size=None):
        return self._tick().standard_normal(size)

    def integers(self, low: int, high: int, size=None):
        return self._tick().integers(low, high, size)

    def permutation(self, n: int):
        return self._tick().permutation(n)

    def complex_normal(self, shape) -> ComplexMatrix:
        g = self._tick()
        return (g.standard_normal(shape) + 1j * g.standard_normal(shape)) / np.sqrt(2.0)


def random_matrix(model: RandomModel, m: int, s: int | None = None) -> ComplexMatrix:
    return model.complex_normal((m, s if s is not None else m))


def random_hermitian(model: RandomModel, m: int, scale: float = 1.0) -> ComplexMatrix:
    g = model.complex_normal((m, m))
    h = (g + adjoint(g)) / 2
    return h * (scale / max(spectral_norm(h), 1e-300))


def random_unitary(model: RandomModel, m: int) -> ComplexMatrix:
    q, r = np.linalg.qr(model.complex_normal((m, m)))
    d = np.diag(r)
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phases


def _nonzero_uniform(model: RandomModel, size: int) -> npt.NDArray[np.float64]:
    # uniform on [-1, 1] without zero: magnitude in (0, 1], random sign
    magnitude = 1.0 - model.uniform(0.0, 1.0, size)
    sign = np.where(model.uniform(0.0, 1.0, size) < 0.5, -1.0, 1.0)
    return sign * magnitude


def random_orthogonal_selfadjoint_pair(model: RandomModel, m: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Hermitian a, b with ab = ba = 0: disjoint-support diagonals under one unitary."""
    if m < 2:
        raise ValueError("orthogonal pairs need m >= 2")
    u = random_unitary(model, m)
    perm = model.permutation(m)
    split = int(model.integers(1, m))
    da = np.zeros(m)
    db = np.zeros(m)
    da[perm[:split]] = _nonzero_uniform(model, split)
    db[perm[split:]] = _nonzero_uniform(model, m - split)
    a = (u * da) @ adjoint(u)
    b = (u * db) @ adjoint(u)
    return (a + adjoint(a)) / 2, (b + adjoint(b)) / 2


def random_zero_product_pair(model: RandomModel, m: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    """a, b with ab = 0 (ba generally nonzero): a = c·Π with Π killing the column space of b."""
    if m < 2:
        raise ValueError("zero-product pairs need m >= 2")
    rank = int(model.integers(1, m))
    left = model.complex_normal((m, rank))
    b = left @ model.complex_normal((rank, m))
    q, _ = np.linalg.qr(left)
    projector = np.eye(m, dtype=np.complex128) - q @ adjoint(q)
    a = model.complex_normal((m, m)) @ projector
    return a, b


def random_rank_one_projection_pair(model: RandomModel, m: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Orthogonal rank-one projections read off a random Hermitian spectrum."""
    if m < 2:
        raise ValueError("projection pairs need m >= 2")
    projections = spectral_projections(random_hermitian(model, m))
    i, j = (int(k) for k in model.permutation(m)[:2])
    return projections[i], projections[j]


def random_rank_one_idempotent_pair(model: RandomModel, m: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Rank-one idempotents e = u v*/(v*u), f = w z*/(z*w) with ef = 0 (v*w = 0)."""
    if m < 2:
        raise ValueError("idempotent pairs need m >= 2")
    u = model.complex_normal(m)
    v = model.complex_normal(m)
    w = model.complex_normal(m)
    w = w - v * (np.vdot(v, w) / np.vdot(v, v))
    z = model.complex_normal(m)
    e = np.outer(u, np.conj(v)) / np.vdot(v, u)
    f = np.outer(w, np.conj(z)) / np.vdot(z, w)
    return e, f


def random_similarity(model: RandomModel, m: int, cond_cap: float = 100.0) -> ComplexMatrix:
    """U·diag(sigma)·V with sigma log-uniform in [1, cond_cap]."""
    if cond_cap < 1.0:
        raise ValueError("cond_cap must be >= 1")
    u = random_unitary(model, m)
    v = random_unitary(model, m)
    sigma = np.exp(model.uniform(0.0, np.log(cond_cap), m)) if cond_cap > 1.0 else np.ones(m)
    return (u * sigma) @ v
