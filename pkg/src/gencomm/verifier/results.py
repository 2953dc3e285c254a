"""Scenario outcomes and the assertion recorder used to build them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..lattice import Subgroup
from ..ring import Ring, RingElement

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def serialize(value: Any) -> Any:
    """JSON-ready form of the values scenarios compare and report."""
    if isinstance(value, Subgroup):
        return {
            "ring": value.ring.name,
            "rank": value.rank,
            "labels": list(value.ring.labels),
            "basis": [list(r) for r in value.basis],
        }
    if isinstance(value, RingElement):
        return str(value)
    if isinstance(value, Ring):
        return value.name
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, np.ndarray):
        return serialize(value.tolist())
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [serialize(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    return repr(value)


@dataclass
class ScenarioResult:
    name: str
    status: str
    reason: str | None = None
    assertions: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed_ms: int | None = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def failures(self) -> list[dict]:
        return [a for a in self.assertions if not a["ok"]]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "reason": self.reason,
            "assertion_count": len(self.assertions),
            "failed_assertions": len(self.failures()),
            "assertions": self.assertions,
            "witnesses": self.witnesses,
            "notes": self.notes,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioResult":
        return cls(
            name=data["name"],
            status=data["status"],
            reason=data.get("reason"),
            assertions=list(data.get("assertions", [])),
            witnesses=list(data.get("witnesses", [])),
            notes=list(data.get("notes", [])),
            elapsed_ms=data.get("elapsed_ms"),
        )


class Skip(Exception):
    pass


class Checker:
    """Collects exact assertions for one scenario."""

    def __init__(self, name: str):
        self.name = name
        self.assertions: list[dict] = []
        self.witnesses: list[dict] = []
        self.notes: list[str] = []

    def check(self, description: str, ok: bool, *, expected: Any = True, got: Any = None, witness: Any = None) -> bool:
        ok = bool(ok)
        if got is None:
            got = ok
        self.assertions.append(
            {"description": description, "expected": serialize(expected), "got": serialize(got), "ok": ok}
        )
        if not ok:
            w = {"assertion": description}
            if witness is not None:
                w["witness"] = serialize(witness)
            else:
                w["expected"] = serialize(expected)
                w["got"] = serialize(got)
            self.witnesses.append(w)
        return ok

    def equal(self, description: str, expected: Any, got: Any, witness: Any = None) -> bool:
        return self.check(description, expected == got, expected=expected, got=got, witness=witness)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def skip(self, reason: str) -> None:
        raise Skip(reason)

    def result(self) -> ScenarioResult:
        status = PASS if all(a["ok"] for a in self.assertions) else FAIL
        return ScenarioResult(self.name, status, None, self.assertions, self.witnesses, self.notes)
