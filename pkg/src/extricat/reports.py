"""Shared verdict containers for the verification drivers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class QuotientReport:
    """Per-check verdicts with replayable witness strings and bounds."""

    name: str
    checks: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    not_applicable: str | None = None

    def record(self, check: str, ok: bool, detail: str = ""):
        self.checks.append((check, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return self.not_applicable is None and all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(c, d) for c, ok, d in self.checks if not ok]

    def summary(self) -> str:
        if self.not_applicable is not None:
            return f"{self.name}: N/A -- {self.not_applicable}"
        lines = [f"{self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for c, ok, d in self.checks:
            suffix = f" -- {d}" if d and not ok else ""
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {c}{suffix}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "not_applicable": self.not_applicable,
            "bounds": {k: repr(v) if not isinstance(v, (int, str, float)) else v
                       for k, v in sorted(self.bounds.items())},
            "checks": [
                {"check": c, "ok": ok, "detail": d} for c, ok, d in self.checks
            ],
            "ok": self.ok,
        }
