import json
from typing import Any, TypedDict

from . import files, dotenv


class Settings(TypedDict):
    seed: int
    n_max: int
    nodes: int
    trials: int

    tol_construct: float
    tol_verify: float
    tol_decide: float
    tol_nilpotent: float
    tol_zero_component: float

    linearize_samples: int
    anchor_samples: int
    verify_samples: int

    workers: int
    gallery_k: int


class PartialSettings(Settings, total=False):
    pass


SETTINGS_FILE = "tmp/settings.json"
_settings: Settings | None = None


def get_settings() -> Settings:
    global _settings
    if not _settings:
        _settings = _read_settings_file()
    if not _settings:
        _settings = get_default_settings()
    norm = normalize_settings(_settings)
    return norm


def reset_settings():
    global _settings
    _settings = None


def normalize_settings(settings: PartialSettings | dict[str, Any]) -> Settings:
    copy = dict(settings)
    default = get_default_settings()

    # drop unknown keys, coerce known ones to the default's type
    for key in list(copy.keys()):
        if key not in default:
            del copy[key]
        else:
            try:
                copy[key] = type(default[key])(copy[key])  # type: ignore
            except (ValueError, TypeError):
                copy[key] = default[key]  # type: ignore

    for key, value in default.items():
        if key not in copy:
            copy[key] = value

    return copy  # type: ignore


def get_settings_file_path() -> str:
    return dotenv.get_dotenv_value(dotenv.KEY_SETTINGS_FILE) or files.get_abs_path(SETTINGS_FILE)


def _read_settings_file() -> Settings | None:
    path = get_settings_file_path()
    if files.exists(path):
        content = files.read_file(path)
        parsed = json.loads(content)
        return normalize_settings(parsed)
    return None


def get_default_settings() -> Settings:
    return Settings(
        seed=0,
        n_max=8,
        nodes=0,
        trials=200,
        tol_construct=1e-12,
        tol_verify=1e-9,
        tol_decide=1e-6,
        tol_nilpotent=1e-9,
        tol_zero_component=1e-9,
        linearize_samples=32,
        anchor_samples=16,
        verify_samples=20,
        workers=dotenv.get_dotenv_int(dotenv.KEY_WORKERS, 1),
        gallery_k=2,
    )
