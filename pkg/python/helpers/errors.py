from typing import Any


def error_text(e: Exception):
    return f"{type(e).__name__}: {e}"


def _jsonable(value: Any) -> Any:
    # matrices, verdicts and complex payloads share the report encoding
    from python.helpers import persist

    return persist.to_jsonable(value)


class HolomatError(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, message: str = "", **payload: Any):
        super().__init__(message or type(self).__name__)
        self.message = message
        self.payload = payload
        for key, value in payload.items():
            setattr(self, key, value)

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            **{k: _jsonable(v) for k, v in self.payload.items()},
        }


class UsageError(HolomatError):
    pass


class ParseError(HolomatError):
    """Malformed input document. Carries `field` and byte `offset`."""

    def __init__(self, message: str, field: str, offset: int):
        super().__init__(f"{message} (field '{field}' at byte {offset})", field=field, offset=offset)


class NotHermitian(HolomatError):
    pass


class NoConvergence(HolomatError):
    pass


class OutOfDomain(HolomatError):
    pass


class DegreeZero(HolomatError):
    pass


class ClassificationError(HolomatError):
    """Outcomes of the testers / classifiers that are not I/O problems (CLI exit status 2)."""


class LinearizationMismatch(ClassificationError):
    pass


class HypothesisViolated(ClassificationError):
    pass


class DimensionMismatch(ClassificationError):
    pass


class ReconstructionFailed(ClassificationError):
    pass


class NotAutomorphism(ClassificationError):
    pass


class SingularFrame(ClassificationError):
    pass


class Inconclusive(ClassificationError):
    pass


class HypothesisFailed(ClassificationError):
    pass


class MixedForm(ClassificationError):
    pass
