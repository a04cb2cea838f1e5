import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import make_spec
from python.helpers import holo, persist
from python.helpers.errors import DimensionMismatch, ParseError
from python.helpers.holo import HoloFunction, LinearMapMatrix
from python.helpers.matrix_core import RandomModel
from python.helpers.ortho_props import Verdict, Witness


def test_spec_file_round_trip(tmp_path):
    spec = make_spec(2, 3, (1, -0.5j, 0.25), transpose=True)
    path = str(tmp_path / "spec.json")
    persist.save_spec(path, spec)
    loaded = persist.load_spec(path)
    assert loaded.lambdas == spec.lambdas
    assert loaded.transpose and loaded.radius == 1.0
    assert_allclose(loaded.S, spec.S, rtol=0, atol=0)


def test_parse_spec_accepts_real_lambdas():
    text = '{"lambdas": [2, [0, 1]], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}'
    spec = persist.parse_spec(text)
    assert spec.lambdas == (2, 1j)
    assert not spec.transpose


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"lambdas": [1], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]]}}', "S"),
        ('{"lambdas": [1], "S": {"rows": 2, "cols": 2, "re": [[1, 0]], "im": [[0, 0]]}}', "S.re"),
        ('{"lambdas": "one", "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}', "lambdas"),
        ('{"lambdas": [[1, 2, 3]], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}', "lambdas"),
        ('{"lambdas": [1], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}, "transpose": 1}', "transpose"),
        ('{"lambdas": [1], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}, "radius": -1}', "radius"),
        ('{"S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}', "lambdas"),
        ('{"lambdas": [1], "S": {"rows": 1, "cols": 1, "re": [[1]], "im": [[0]]}}', "S"),
        ('{"lambdas": [[NaN, 0]], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}', "lambdas"),
        ('{"lambdas": [Infinity], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}', "lambdas"),
        ('{"lambdas": [1], "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, NaN], [0, 0]]}}', "S.im"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(ParseError) as info:
        persist.parse_spec(text)
    assert info.value.field == field


def test_parse_error_offsets():
    text = '{"lambdas": [1], "radius": "wide", "S": {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}}'
    with pytest.raises(ParseError) as info:
        persist.parse_spec(text)
    assert info.value.offset == text.index('"wide"')

    with pytest.raises(ParseError) as info:
        persist.parse_spec('{"lambdas": [1,')
    assert info.value.field == "<document>"
    assert info.value.offset == len('{"lambdas": [1,')

    # offsets count bytes, not characters
    with pytest.raises(ParseError) as info:
        persist.parse_spec('{"é": 1, "lambdas": 5}')
    assert info.value.offset == len('{"é": 1, "lambdas": '.encode("utf-8"))

    # a missing key points at the end of the document
    text = '{"lambdas": [1]}  '
    with pytest.raises(ParseError) as info:
        persist.parse_spec(text)
    assert info.value.field == "S"
    assert info.value.offset == len('{"lambdas": [1]}')


def test_parse_matrix(model):
    x = model.complex_normal((2, 3))
    assert_allclose(persist.parse_matrix(persist.dumps(x)), x)


def test_verdicts_and_witnesses_serialize():
    a, b = np.eye(2, dtype=np.complex128), np.zeros((2, 2), dtype=np.complex128)
    verdict = Verdict("zero_product_preservation", False, 10, 0.5, 1e-9, Witness(a, b, 0.5, {"degree": 2}))
    doc = json.loads(persist.dumps({"verdict": verdict}))["verdict"]
    assert doc["passed"] is False
    assert doc["witness"]["a"]["re"] == [[1.0, 0.0], [0.0, 1.0]]
    assert doc["witness"]["detail"] == {"degree": 2}


def test_errors_serialize_their_payload():
    error = DimensionMismatch("too big", m=2, s=np.int64(6), diagnostics={"nilpotent": np.bool_(True)})
    doc = error.to_dict()
    assert doc == {"error": "DimensionMismatch", "message": "too big", "m": 2, "s": 6, "diagnostics": {"nilpotent": True}}
    assert json.loads(persist.dumps(error)) == doc


def test_linear_map_document():
    doc = persist.linear_map_to_dict(LinearMapMatrix.identity(2))
    assert (doc["m"], doc["s"]) == (2, 2)
    assert [(u["i"], u["j"]) for u in doc["units"]] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_component_document_records_rho():
    H = HoloFunction.from_callable(lambda x: x, 2, radius=0.5)
    doc = persist.component_to_dict(holo.extract_component(H, 1), 1.0)
    assert doc["rho"] == holo.DEFAULT_RHO_RULE
    assert (doc["radius"], doc["nodes"], doc["norm_estimate"]) == (0.5, 18, 1.0)
    assert persist.component_to_dict(holo.extract_component(H, 1, rho=0.25))["rho"] == 0.25


def test_report_header():
    report = persist.make_report("classify", {"seed": 1}, {"exit_code": 0})
    assert list(report)[:6] == ["tool", "version", "python", "numpy", "command", "config"]
    assert report["tool"] == "holomat" and report["version"] == persist.VERSION
    assert "timestamp" not in json.dumps(report)


def test_dumps_is_deterministic():
    x = RandomModel(4).complex_normal((3, 3))
    assert persist.dumps({"x": x, "z": 1 + 2j}) == persist.dumps({"x": x.copy(), "z": complex(1, 2)})
    assert persist.dumps({"z": 1 + 2j}).endswith("\n")
