import os

# set before PrintStyle is first instantiated
os.environ["HOLOMAT_LOG_HTML"] = "false"

import numpy as np
import pytest

from python.helpers import matrix_core as mc
from python.helpers import settings
from python.helpers.holo import HoloFunction, StandardFormSpec
from python.helpers.matrix_core import RandomModel
from python.helpers.print_style import PrintStyle

PrintStyle.quiet = True


@pytest.fixture
def model():
    return RandomModel(seed=0)


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.setenv("HOLOMAT_SETTINGS_FILE", str(tmp_path / "settings.json"))
    settings.reset_settings()
    yield
    settings.reset_settings()


def make_spec(seed: int, m: int, lambdas, transpose: bool = False, cond_cap: float = 50.0) -> StandardFormSpec:
    S = mc.random_similarity(RandomModel(seed), m, cond_cap)
    return StandardFormSpec(tuple(lambdas), S, transpose)


@pytest.fixture
def standard_spec():
    return make_spec(3, 3, (1, -0.5, 0.25))


@pytest.fixture
def standard_function(standard_spec):
    return HoloFunction.from_standard_form(standard_spec)


@pytest.fixture
def transpose_function():
    return HoloFunction.from_standard_form(StandardFormSpec((1, 1), np.eye(3, dtype=np.complex128), transpose=True))


def relative_error(x, y) -> float:
    return float(np.linalg.norm(x - y) / (1.0 + np.linalg.norm(y)))


FIXTURE_DIMS = (2, 3, 4, 6)


def standard_form_fixture(seed: int) -> StandardFormSpec:
    """One of the twenty shared fixtures: m in FIXTURE_DIMS, degree <= 6, cond(S) <= 100."""
    model = RandomModel(1000 + seed)
    m = FIXTURE_DIMS[seed % len(FIXTURE_DIMS)]
    degree = int(model.integers(1, 7))
    lambdas = tuple(complex(v) for v in model.complex_normal(degree))
    return make_spec(seed, m, lambdas, transpose=seed % 3 == 2, cond_cap=100.0)


def sample_points(model: RandomModel, m: int, count: int, radius: float = 1.0) -> list:
    """Random matrices with spectral norm below radius / 2."""
    points = []
    for _ in range(count):
        x = mc.random_matrix(model, m)
        points.append(x * (0.5 * radius * (1 - model.uniform()) / mc.spectral_norm(x)))
    return points
