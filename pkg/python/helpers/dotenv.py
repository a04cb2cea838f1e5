import os
from typing import Any

from .files import get_abs_path
from dotenv import load_dotenv as _load_dotenv

KEY_SETTINGS_FILE = "HOLOMAT_SETTINGS_FILE"
KEY_LOG_HTML = "HOLOMAT_LOG_HTML"
KEY_WORKERS = "HOLOMAT_WORKERS"


def load_dotenv():
    _load_dotenv(get_dotenv_file_path(), override=True)


def get_dotenv_file_path():
    return get_abs_path(".env")


def get_dotenv_value(key: str, default: Any = None):
    return os.getenv(key, default)


def get_dotenv_int(key: str, default: int) -> int:
    value = get_dotenv_value(key)
    if value is None or str(value).strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        return default
