from dataclasses import dataclass, field
from typing import Any, Sequence

from python.helpers import runtime, settings
from python.helpers.errors import UsageError


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str
    out: str | None = None
    anchor: int | None = None
    settings: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        # paths are echoed as given so reports do not depend on the working directory
        return {
            "command": self.command,
            "source": self.source,
            "out": self.out,
            "anchor": self.anchor,
            **self.settings,
        }


def _validate(current: settings.Settings):
    for key in ("n_max", "trials", "workers", "linearize_samples", "anchor_samples", "verify_samples"):
        if current[key] < 1:
            raise UsageError(f"{key} must be >= 1, got {current[key]}")
    if current["nodes"] < 0:
        raise UsageError(f"nodes must be >= 0, got {current['nodes']}")
    if current["gallery_k"] < 2:
        raise UsageError(f"k must be >= 2, got {current['gallery_k']}")
    for key in ("tol_construct", "tol_verify", "tol_decide", "tol_nilpotent", "tol_zero_component"):
        if not current[key] > 0:
            raise UsageError(f"{key} must be positive, got {current[key]}")


def initialize(argv: Sequence[str] | None = None) -> RunConfig:
    parsed = runtime.initialize(argv)

    # command-line flags win over the settings file
    current = settings.normalize_settings({**settings.get_settings(), **runtime.settings_overrides(parsed)})
    _validate(current)

    anchor = runtime.get_arg("anchor")
    if runtime.has_arg("anchor") and not 1 <= anchor <= current["n_max"]:
        raise UsageError(f"anchor must lie in 1..{current['n_max']}, got {anchor}")

    return RunConfig(
        command=runtime.get_arg("command"),
        source=runtime.get_arg("source"),
        out=runtime.get_arg("out"),
        anchor=anchor,
        settings=dict(current),
    )
