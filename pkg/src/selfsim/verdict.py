"""Bounded verdicts shared by the decision procedures."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    OK = "ok"                  # no violation within the stated bounds
    VIOLATED = "violated"      # witness found
    UNRESOLVED = "unresolved"  # search ran out of bounds without deciding
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    check: str
    status: Status
    bounds: dict[str, Any]
    witness: Any = None
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status is Status.OK

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    def to_json(self) -> dict[str, Any]:
        out = {"check": self.check, "status": self.status.value, "bounds": dict(self.bounds)}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.info:
            out["info"] = self.info
        return out

    def __str__(self) -> str:
        b = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        w = f" witness={self.witness}" if self.witness is not None else ""
        return f"{self.check}: {self.status.value} ({b}){w}"
