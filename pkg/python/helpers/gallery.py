"""
Named example maps with their expected behavior as executable checks.

nilpotent-range  M_2 -> M_2, T(E_11) = E_12 and every other unit to 0
embed-k2         M_k -> M_{k+2}, first row and first column spread into a
                 strictly upper triangular pattern
direct-sum       M_k -> M_{2k+2}, x (+) embed-k2(x)
"""

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from python.helpers import matrix_core as mc
from python.helpers import ortho_props as op
from python.helpers import structure
from python.helpers.errors import DimensionMismatch, UsageError
from python.helpers.holo import HoloFunction, LinearMapMatrix
from python.helpers.matrix_core import RandomModel

Check = Callable[["GalleryEntry", RandomModel, int], tuple[bool, Any]]


@dataclass(frozen=True)
class Expectation:
    name: str
    check: Check


@dataclass(frozen=True)
class ExpectationResult:
    name: str
    passed: bool
    detail: Any = None


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    map: LinearMapMatrix
    expectations: tuple[Expectation, ...] = ()
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def function(self) -> HoloFunction:
        return HoloFunction.from_linear_map(self.map, name=self.name)


# ---------------------------------------------------------------------------
# Shared checks
# ---------------------------------------------------------------------------


def _multiplicative(entry: GalleryEntry, model: RandomModel, trials: int):
    verdict = op.test_orthogonal_multiplicativity(entry.function, trials, 1e-9, model)
    return verdict.passed, verdict


def _jordan(entry: GalleryEntry, model: RandomModel, trials: int):
    verdict = structure.test_jordan_relation(entry.map, trials, 1e-9, model)
    return verdict.passed, verdict


def _dimension_mismatch(entry: GalleryEntry, model: RandomModel, trials: int):
    try:
        result = structure.classify_linear_map(entry.map, model=model, trials=min(trials, 64))
    except DimensionMismatch as e:
        return True, e.to_dict()
    return False, {"tag": result.tag.value}


def _unit(entry: GalleryEntry, i: int, j: int):
    return entry.map.image(i, j)


# ---------------------------------------------------------------------------
# nilpotent-range
# ---------------------------------------------------------------------------


def _images_nilpotent(entry: GalleryEntry, model: RandomModel, trials: int):
    return all(mc.is_nilpotent(image) for _, image in entry.map.units()), None


def _identity_image(entry: GalleryEntry, model: RandomModel, trials: int):
    image = entry.map(np.eye(2, dtype=np.complex128))
    return bool(np.array_equal(image, mc.matrix_unit(2, 0, 1))), image


def _nilpotent_tag(entry: GalleryEntry, model: RandomModel, trials: int):
    result = structure.classify_linear_map(entry.map, model=model, trials=min(trials, 64))
    return result.tag == structure.LinearTag.NILPOTENT_RANGE, {"tag": result.tag.value}


def _zero_trace_tag(entry: GalleryEntry, model: RandomModel, trials: int):
    params = structure.ClassifyParams(n_max=2, trials=min(trials, 64), seed=int(model.integers(0, 2**31)))
    result = structure.classify_holomorphic(entry.function, params)
    return result.tag == structure.Tag.ZERO_TRACE_RANGE, {"tag": result.tag.value, "range": result.report.get("range")}


def gallery_nilpotent_range() -> GalleryEntry:
    theta = LinearMapMatrix.from_units(2, 2, {(0, 0): mc.matrix_unit(2, 0, 1)})
    return GalleryEntry(
        "nilpotent-range",
        theta,
        (
            Expectation("orthogonal_multiplicativity", _multiplicative),
            Expectation("jordan_relation", _jordan),
            Expectation("images_nilpotent", _images_nilpotent),
            Expectation("identity_image", _identity_image),
            Expectation("linear_tag", _nilpotent_tag),
            Expectation("holomorphic_tag", _zero_trace_tag),
        ),
    )


# ---------------------------------------------------------------------------
# embed-k2
# ---------------------------------------------------------------------------


def _embed(k: int, x: np.ndarray) -> np.ndarray:
    out = np.zeros((k + 2, k + 2), dtype=np.complex128)
    out[0, 1 : k + 1] = x[0, :]
    out[1 : k + 1, k + 1] = x[:, 0]
    return out


def _e11_squared(entry: GalleryEntry, model: RandomModel, trials: int):
    k = entry.map.m
    square = _unit(entry, 0, 0) @ _unit(entry, 0, 0)
    return bool(np.array_equal(square, mc.matrix_unit(k + 2, 0, k + 1))), square


def _e11_cubed(entry: GalleryEntry, model: RandomModel, trials: int):
    image = _unit(entry, 0, 0)
    return bool(not np.any(image @ image @ image)), None


def _nontrivial_multiplication(entry: GalleryEntry, model: RandomModel, trials: int):
    return not structure.has_trivial_multiplication(entry.map), None


def _idempotent_pair_products(entry: GalleryEntry, model: RandomModel, trials: int):
    # (E_11, E_21 + E_22): ab = 0, ba = E_21; both image products are recorded
    k = entry.map.m
    a = mc.matrix_unit(k, 0, 0)
    b = mc.matrix_unit(k, 1, 0) + mc.matrix_unit(k, 1, 1)
    ta, tb = entry.map(a), entry.map(b)
    forward = mc.frobenius_norm(ta @ tb)
    backward = mc.frobenius_norm(tb @ ta)
    return forward == 0.0, {"ab": forward, "ba": backward}


def gallery_embed_k2(k: int = 2) -> GalleryEntry:
    if k < 2:
        raise UsageError(f"embed-k2 needs k >= 2, got {k}")
    theta = LinearMapMatrix.from_function(lambda x: _embed(k, x), k, k + 2)
    return GalleryEntry(
        "embed-k2",
        theta,
        (
            Expectation("orthogonal_multiplicativity", _multiplicative),
            Expectation("jordan_relation", _jordan),
            Expectation("e11_squared", _e11_squared),
            Expectation("e11_cubed", _e11_cubed),
            Expectation("nontrivial_multiplication", _nontrivial_multiplication),
            Expectation("idempotent_pair_products", _idempotent_pair_products),
            Expectation("dimension_mismatch", _dimension_mismatch),
        ),
        {"k": k},
    )


# ---------------------------------------------------------------------------
# direct-sum
# ---------------------------------------------------------------------------


def _e11_trace(entry: GalleryEntry, model: RandomModel, trials: int):
    value = complex(np.trace(_unit(entry, 0, 0)))
    return value == 1.0, value


def _identity_trace(entry: GalleryEntry, model: RandomModel, trials: int):
    k = entry.map.m
    value = complex(np.trace(entry.map(np.eye(k, dtype=np.complex128))))
    return value == k, value


def gallery_direct_sum(k: int = 2) -> GalleryEntry:
    if k < 2:
        raise UsageError(f"direct-sum needs k >= 2, got {k}")
    theta = LinearMapMatrix.from_function(lambda x: mc.direct_sum(x, _embed(k, x)), k, 2 * k + 2)
    return GalleryEntry(
        "direct-sum",
        theta,
        (
            Expectation("orthogonal_multiplicativity", _multiplicative),
            Expectation("jordan_relation", _jordan),
            Expectation("e11_trace", _e11_trace),
            Expectation("identity_trace", _identity_trace),
            Expectation("dimension_mismatch", _dimension_mismatch),
        ),
        {"k": k},
    )


_REGISTRY: dict[str, Callable[[int], GalleryEntry]] = {
    "nilpotent-range": lambda k: gallery_nilpotent_range(),
    "embed-k2": gallery_embed_k2,
    "direct-sum": gallery_direct_sum,
}


def names() -> list[str]:
    return list(_REGISTRY)


def gallery_entry(name: str, k: int = 2) -> GalleryEntry:
    factory = _REGISTRY.get(name)
    if factory is None:
        raise UsageError(f"unknown gallery entry '{name}' (known: {', '.join(names())})")
    return factory(k)


def run_expectations(
    entry: GalleryEntry,
    model: RandomModel | None = None,
    trials: int = op.DEFAULT_TRIALS,
) -> list[ExpectationResult]:
    model = model if model is not None else RandomModel()
    forks = model.fork(len(entry.expectations))
    return [
        ExpectationResult(expectation.name, *expectation.check(entry, fork, trials))
        for expectation, fork in zip(entry.expectations, forks)
    ]
