from dataclasses import dataclass
from typing import Any, Literal, Optional
from collections import OrderedDict

Type = Literal[
    "error",
    "info",
    "step",
    "verdict",
    "warning",
]


@dataclass
class LogItem:
    log: "Log"
    no: int
    type: str
    heading: str
    content: str
    kvps: Optional[OrderedDict] = None

    def update(
        self,
        type: Type | None = None,
        heading: str | None = None,
        content: str | None = None,
        kvps: dict | None = None,
        **kwargs,
    ):
        self.log._update_item(
            self.no,
            type=type,
            heading=heading,
            content=content,
            kvps=kvps,
            **kwargs,
        )

    def output(self):
        return {
            "no": self.no,
            "type": self.type,
            "heading": self.heading,
            "content": self.content,
            "kvps": dict(self.kvps) if self.kvps else {},
        }


class Log:
    """Ordered run diagnostics. No ids or timestamps: output must be reproducible."""

    def __init__(self):
        self.logs: list[LogItem] = []

    def log(
        self,
        type: Type,
        heading: str | None = None,
        content: str | None = None,
        kvps: dict | None = None,
        **kwargs,
    ) -> LogItem:
        item = LogItem(
            log=self,
            no=len(self.logs),
            type=type,
            heading=heading or "",
            content=content or "",
            kvps=OrderedDict({**(kvps or {}), **(kwargs or {})}),
        )
        self.logs.append(item)
        return item

    def _update_item(
        self,
        no: int,
        type: str | None = None,
        heading: str | None = None,
        content: str | None = None,
        kvps: dict | None = None,
        **kwargs,
    ):
        item = self.logs[no]
        if type is not None:
            item.type = type
        if heading is not None:
            item.heading = heading
        if content is not None:
            item.content = content
        if kvps is not None:
            item.kvps = OrderedDict(kvps)
        if kwargs:
            if item.kvps is None:
                item.kvps = OrderedDict()
            for k, v in kwargs.items():
                item.kvps[k] = v

    def of_type(self, type: Type) -> list[LogItem]:
        return [item for item in self.logs if item.type == type]

    def output(self, start: int | None = None, end: int | None = None) -> list[dict[str, Any]]:
        return [item.output() for item in self.logs[start:end]]
