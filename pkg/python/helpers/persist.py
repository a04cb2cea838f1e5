"""JSON documents: matrices, standard-form specs, verdicts, classifications and reports."""

import dataclasses
import json
import math
import platform
import re
from enum import Enum
from typing import Any

import numpy as np

from python.helpers import files
from python.helpers.errors import ParseError
from python.helpers.holo import DEFAULT_RHO_RULE, HomogeneousComponent, LinearMapMatrix, StandardFormSpec
from python.helpers.matrix_core import ComplexMatrix

TOOL_NAME = "holomat"
VERSION = "0.1.0"


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_dict(x: ComplexMatrix) -> dict[str, Any]:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 2:
        # stacks of matrices (linear map images) keep their shape
        return {"shape": list(x.shape), "re": x.real.tolist(), "im": x.imag.tolist()}
    return {
        "rows": int(x.shape[0]),
        "cols": int(x.shape[1]),
        "re": x.real.tolist(),
        "im": x.imag.tolist(),
    }


def to_jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return matrix_to_dict(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_pair(value)
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    serializer = _SERIALIZERS.get(type(value).__name__)
    if serializer is not None:
        return serializer(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return to_jsonable({f.name: getattr(value, f.name) for f in dataclasses.fields(value)})
    return value


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, obj: Any):
    files.write_file(path, dumps(obj))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _byte_offset(text: str, position: int) -> int:
    return len(text[:position].encode("utf-8"))


def _field_offset(text: str, field: str) -> int:
    # offset of the value that follows "field":
    match = re.search(r'"' + re.escape(field) + r'"\s*:\s*', text)
    return _byte_offset(text, match.end()) if match else 0


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, field="<document>", offset=_byte_offset(text, e.pos)) from e


def _real(value: Any, field: str, text: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {value!r}", field=field, offset=_field_offset(text, field))
    if not math.isfinite(value):
        raise ParseError(f"expected a finite number, got {value!r}", field=field, offset=_field_offset(text, field))
    return float(value)


def _pair(value: Any, field: str, text: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(_real(value, field, text))
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"expected [re, im], got {value!r}", field=field, offset=_field_offset(text, field))
    return complex(_real(value[0], field, text), _real(value[1], field, text))


def matrix_from_dict(doc: Any, field: str = "matrix", text: str = "") -> ComplexMatrix:
    offset = _field_offset(text, field)
    if not isinstance(doc, dict):
        raise ParseError("expected a matrix object", field=field, offset=offset)
    for key in ("rows", "cols", "re", "im"):
        if key not in doc:
            raise ParseError(f"matrix is missing '{key}'", field=field, offset=offset)
    rows, cols = doc["rows"], doc["cols"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise ParseError("rows and cols must be positive integers", field=field, offset=offset)
    parts = []
    for key in ("re", "im"):
        try:
            part = np.array(doc[key], dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise ParseError(f"'{key}' is not a numeric table", field=f"{field}.{key}", offset=offset) from e
        if part.shape != (rows, cols):
            raise ParseError(
                f"'{key}' has shape {part.shape}, expected {(rows, cols)}",
                field=f"{field}.{key}",
                offset=offset,
            )
        if not np.all(np.isfinite(part)):
            raise ParseError(f"'{key}' has non-finite entries", field=f"{field}.{key}", offset=offset)
        parts.append(part)
    return parts[0] + 1j * parts[1]


def parse_matrix(text: str) -> ComplexMatrix:
    return matrix_from_dict(_loads(text), "<document>", text)


def spec_to_dict(spec: StandardFormSpec) -> dict[str, Any]:
    return {
        "lambdas": [complex_to_pair(v) for v in spec.lambdas],
        "S": matrix_to_dict(spec.S),
        "transpose": spec.transpose,
        "radius": spec.radius,
    }


def parse_spec(text: str) -> StandardFormSpec:
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise ParseError("expected a standard-form object", field="<document>", offset=0)
    # a missing key is reported at the end of the document
    end = _byte_offset(text, len(text.rstrip()))
    if "lambdas" not in doc:
        raise ParseError("missing 'lambdas'", field="lambdas", offset=end)
    if not isinstance(doc["lambdas"], list):
        raise ParseError("lambdas must be a list", field="lambdas", offset=_field_offset(text, "lambdas"))
    lambdas = tuple(_pair(v, "lambdas", text) for v in doc["lambdas"])
    if "S" not in doc:
        raise ParseError("missing 'S'", field="S", offset=end)
    S = matrix_from_dict(doc["S"], "S", text)
    if S.shape[0] != S.shape[1]:
        raise ParseError("S must be square", field="S", offset=_field_offset(text, "S"))
    if S.shape[0] < 2:
        raise ParseError("S must be at least 2x2", field="S", offset=_field_offset(text, "S"))
    transpose = doc.get("transpose", False)
    if not isinstance(transpose, bool):
        raise ParseError("transpose must be true or false", field="transpose", offset=_field_offset(text, "transpose"))
    radius = _real(doc.get("radius", 1.0), "radius", text)
    if not radius > 0:
        raise ParseError("radius must be positive", field="radius", offset=_field_offset(text, "radius"))
    return StandardFormSpec(lambdas, S, transpose, radius)


def load_spec(path: str) -> StandardFormSpec:
    return parse_spec(files.read_file(path))


def save_spec(path: str, spec: StandardFormSpec):
    write_json(path, spec_to_dict(spec))


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


def witness_to_dict(witness) -> dict[str, Any]:
    return {
        "a": matrix_to_dict(witness.a),
        "b": matrix_to_dict(witness.b),
        "residual": witness.residual,
        "detail": to_jsonable(witness.detail),
    }


def verdict_to_dict(verdict) -> dict[str, Any]:
    return {
        "name": verdict.name,
        "passed": verdict.passed,
        "trials": verdict.trials,
        "max_residual": verdict.max_residual,
        "tolerance": verdict.tolerance,
        "witness": witness_to_dict(verdict.witness) if verdict.witness is not None else None,
    }


def linear_map_to_dict(theta: LinearMapMatrix) -> dict[str, Any]:
    return {
        "m": theta.m,
        "s": theta.s,
        "units": [
            {"i": i, "j": j, "image": matrix_to_dict(image)}
            for (i, j), image in theta.units()
        ],
    }


def component_to_dict(component: HomogeneousComponent, norm: float | None = None) -> dict[str, Any]:
    return {
        "degree": component.degree,
        "nodes": component.nodes,
        "rho": component.rho if component.rho is not None else DEFAULT_RHO_RULE,
        "radius": component.radius,
        "norm_estimate": norm,
    }


def linear_classification_to_dict(result) -> dict[str, Any]:
    return {
        "tag": result.tag.value,
        "lambda": complex_to_pair(result.lam) if result.lam is not None else None,
        "S": matrix_to_dict(result.S) if result.S is not None else None,
        "evidence": to_jsonable(result.evidence),
    }


def classification_to_dict(result) -> dict[str, Any]:
    return {
        "tag": result.tag.value,
        "k_anchor": result.k_anchor,
        "lambdas": [complex_to_pair(v) for v in result.lambdas],
        "S": matrix_to_dict(result.S) if result.S is not None else None,
        "report": to_jsonable(result.report),
    }


def expectation_result_to_dict(result) -> dict[str, Any]:
    return {"name": result.name, "passed": result.passed, "detail": to_jsonable(result.detail)}


_SERIALIZERS = {
    "Witness": witness_to_dict,
    "Verdict": verdict_to_dict,
    "LinearMapMatrix": linear_map_to_dict,
    "LinearClassification": linear_classification_to_dict,
    "Classification": classification_to_dict,
    "ExpectationResult": expectation_result_to_dict,
    "StandardFormSpec": spec_to_dict,
}


def make_report(command: str, config: dict[str, Any], body: dict[str, Any]) -> dict[str, Any]:
    """Self-contained report: tool versions and the full run configuration, no timestamps."""
    return {
        "tool": TOOL_NAME,
        "version": VERSION,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "command": command,
        "config": to_jsonable(config),
        **to_jsonable(body),
    }
