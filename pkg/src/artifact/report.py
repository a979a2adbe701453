"""Check reports shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def as_dict(self) -> dict:
        d = {"name": self.name, "passed": bool(self.passed)}
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness=None, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), witness, detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "schema": 1,
            "title": self.title,
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
            "data": _plain(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False, sort_keys=False)

    def to_text(self) -> str:
        lines = [self.title]
        for k, v in self.data.items():
            lines.append(f"  {k}: {_text(v)}")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = ""
            if not c.passed and c.witness is not None:
                extra = f"  witness={_text(c.witness)}"
            if c.detail:
                extra += f"  ({c.detail})"
            lines.append(f"  [{mark}] {c.name}{extra}")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)

    def raise_on_failure(self, exc=AssertionError) -> "Report":
        bad = self.failures()
        if bad:
            c = bad[0]
            raise exc(f"{self.title}: {c.name} failed (witness {_text(c.witness)})")
        return self


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def _text(x) -> str:
    p = _plain(x)
    if isinstance(p, (dict, list)):
        return json.dumps(p, ensure_ascii=False)
    return str(p)
