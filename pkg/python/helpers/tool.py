import os
from abc import abstractmethod
from dataclasses import dataclass, field
from typing import Any

from python.helpers import gallery, persist
from python.helpers.holo import HoloFunction
from python.helpers.log import Log
from python.helpers.print_style import PrintStyle
from python.helpers.structure import ClassifyParams


@dataclass
class Response:
    body: dict[str, Any]
    exit_code: int = 0
    message: str = ""
    summary: dict[str, Any] = field(default_factory=dict)


class Command:
    """One CLI command. Subclasses live in python/tools/<command>.py."""

    def __init__(self, config, name: str, log: Log | None = None, **kwargs) -> None:
        self.config = config
        self.name = name
        self.settings: dict[str, Any] = config.settings
        self.log = log if log is not None else Log()

    @abstractmethod
    async def execute(self, **kwargs) -> Response:
        pass

    async def before_execution(self, **kwargs):
        PrintStyle(font_color="#1B4F72", padding=True, background_color="white", bold=True).print(
            f"holomat: running '{self.name}' on '{self.config.source}'"
        )
        self.item = self.log.log(type="step", heading=f"command '{self.name}'", content="", kvps=self.args())
        for key, value in self.args().items():
            PrintStyle(font_color="#85C1E9", bold=True).stream(self.nice_key(key) + ": ")
            PrintStyle(font_color="#85C1E9").stream(value)
            PrintStyle().print()

    async def after_execution(self, response: Response, **kwargs):
        PrintStyle.kvps(
            f"holomat: '{self.name}' finished with status {response.exit_code}",
            response.summary,
            passed=response.exit_code == 0,
        )
        if response.message:
            PrintStyle(font_color="#85C1E9").print(response.message)
        self.item.update(content=response.message or f"exit {response.exit_code}")

    def args(self) -> dict[str, Any]:
        keys = ("seed", "n_max", "nodes", "trials", "tol_decide")
        return {key: self.settings[key] for key in keys}

    def nice_key(self, key: str):
        words = key.split("_")
        words = [words[0].capitalize()] + [word.lower() for word in words[1:]]
        return " ".join(words)

    # shared input handling

    def is_gallery_source(self) -> bool:
        return self.config.source in gallery.names()

    def gallery_entry(self) -> gallery.GalleryEntry:
        return gallery.gallery_entry(self.config.source, self.settings["gallery_k"])

    def load_function(self) -> HoloFunction:
        if self.is_gallery_source():
            return self.gallery_entry().function
        spec = persist.load_spec(os.path.abspath(self.config.source))
        return HoloFunction.from_standard_form(spec)

    def params(self) -> ClassifyParams:
        return ClassifyParams.from_settings(self.settings, anchor=self.config.anchor)
