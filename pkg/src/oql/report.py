"""Check records and report serialization shared by every module."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass
class Check:
    name: str
    ok: bool
    witness: tuple | None = None
    detail: dict[str, Any] = field(default_factory=dict)
    skipped: str | None = None
    seconds: float | None = None

    def to_json(self, timing: bool = False) -> dict:
        out: dict[str, Any] = {"name": self.name, "ok": self.ok}
        if self.skipped is not None:
            out["skipped"] = self.skipped
        if self.witness is not None:
            out["witness"] = [_plain(w) for w in self.witness]
        if self.detail:
            out["detail"] = _plain(self.detail)
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 4)
        return out


def _plain(x):
    """Coerce numpy scalars and tuples into JSON-friendly values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    stamps: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness: Iterable | None = None, **detail) -> Check:
        if not ok and witness is None:
            raise ValueError(f"failing check {name!r} must carry a witness")
        c = Check(name, bool(ok), tuple(witness) if witness is not None else None, detail)
        self.checks.append(c)
        return c

    def skip(self, name: str, reason: str, **detail) -> Check:
        c = Check(name, True, None, detail, skipped=reason)
        self.checks.append(c)
        return c

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.detail, c.skipped, c.seconds))

    @contextmanager
    def timed(self):
        """Attach wall time to every check appended inside the block."""
        start = len(self.checks)
        t0 = time.perf_counter()
        yield
        dt = time.perf_counter() - t0
        for c in self.checks[start:]:
            if c.seconds is None:
                c.seconds = dt

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> dict[str, int]:
        skipped = sum(1 for c in self.checks if c.skipped is not None)
        failed = len(self.failures)
        return {"total": len(self.checks), "passed": len(self.checks) - failed - skipped,
                "failed": failed, "skipped": skipped}

    def to_json(self, timing: bool = False) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "summary": self.summary(),
            "stamps": _plain(self.stamps),
            "checks": [c.to_json(timing) for c in sorted(self.checks, key=lambda c: c.name)],
        }

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self, timing: bool = False) -> str:
        # failures first, then skips, then passes; stable inside each group
        def rank(c: Check) -> int:
            return 0 if not c.ok else (1 if c.skipped is not None else 2)

        lines = [self.title]
        for c in sorted(self.checks, key=rank):
            mark = "FAIL" if not c.ok else ("SKIP" if c.skipped is not None else "ok  ")
            line = f"  {mark} {c.name}"
            if c.skipped is not None:
                line += f" ({c.skipped})"
            if c.witness is not None:
                line += "  witness: " + ", ".join(map(str, c.witness))
            if c.detail:
                line += "  " + " ".join(f"{k}={_short(v)}" for k, v in c.detail.items())
            if timing and c.seconds is not None:
                line += f"  [{c.seconds:.3f}s]"
            lines.append(line)
        s = self.summary()
        lines.append(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped")
        for k in sorted(self.stamps):
            lines.append(f"  {k}: {_short(self.stamps[k])}")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(_plain(v), sort_keys=True, ensure_ascii=False)
    return str(v)
