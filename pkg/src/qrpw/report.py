"""Check reports shared by every verification routine and the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    check_id: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "id": self.check_id,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
            "seconds": round(self.seconds, 6),
        }
        if self.data:
            out["data"] = self.data
        return out


@dataclass
class Report:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, passed: bool, detail: str = "", seconds: float = 0.0, **data) -> Check:
        c = Check(check_id, bool(passed), detail, seconds, data)
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self, check_id: str):
        """Run a block and record a check from the dict it fills in.

        The block sets ``slot["passed"]`` and optionally ``slot["detail"]``.
        """
        slot: dict[str, Any] = {"passed": False, "detail": ""}
        t0 = time.perf_counter()
        try:
            yield slot
        finally:
            self.add(check_id, slot["passed"], slot.get("detail", ""), time.perf_counter() - t0,
                     **slot.get("data", {}))

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id, c.passed, c.detail, c.seconds, c.data))

    def to_dict(self, timings: bool = True) -> dict:
        checks = [c.to_dict() for c in sorted(self.checks, key=lambda c: c.check_id)]
        if not timings:
            for c in checks:
                c["seconds"] = 0.0
        out = {
            "suite": self.name,
            "params": self.params,
            "verdict": "pass" if self.passed else "fail",
            "checks": checks,
        }
        if self.data:
            out["data"] = self.data
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True, ensure_ascii=False)

    def summary(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in sorted(self.checks, key=lambda c: c.check_id):
            flag = "ok  " if c.passed else "FAIL"
            line = f"  [{flag}] {c.check_id}"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        return "\n".join(lines)
