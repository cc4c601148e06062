"""Verification reports: both sides of every identity with their certified precision."""
from __future__ import annotations

import json
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from ..exactnum import CycloElem
from ..padic import PadicInt

VERSION = "0.1.0"


def fmt_value(v) -> str:
    """Printable form that never shows uncertified digits."""
    if isinstance(v, PadicInt):
        return f"{v.residue} + O({v.p}^{v.prec})"
    if isinstance(v, CycloElem):
        if v.is_rational():
            return str(v.to_rational())
        return "[" + ", ".join(str(c) for c in v.coeffs) + f"] in Q(zeta_{v.order})"
    if isinstance(v, (Fraction, int, bool, str)) or v is None:
        return str(v)
    return repr(v)


@dataclass
class Check:
    name: str
    inputs: dict
    lhs: object
    rhs: object
    precision: object  # digits, "exact", or None for structural checks
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "inputs": self.inputs, "lhs": fmt_value(self.lhs),
             "rhs": fmt_value(self.rhs), "precision": self.precision, "pass": bool(self.passed)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def add(self, *args, **kw) -> Check:
        c = Check(*args, **kw)
        self.checks.append(c)
        return c

    def fail(self, name: str, exc: BaseException, inputs: dict | None = None):
        """Record a propagated error as a failed check carrying the witness."""
        self.errors.append(name)
        self.add(name, inputs or {}, type(exc).__name__, str(exc), None, False, "error")

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self, timestamp: bool = True) -> dict:
        checks = sorted((c.to_dict() for c in self.checks), key=lambda d: d["name"])
        d = {"suite": self.suite, "config": self.config, "checks": checks,
             "pass": self.passed, "version": VERSION,
             "environment": {"python": platform.python_version()}}
        if timestamp:
            d["environment"]["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return d

    def to_json(self, timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in sorted(self.checks, key=lambda c: c.name):
            prec = "" if c.precision is None else f"  [precision {c.precision}]"
            tag = "ok  " if c.passed else "FAIL"
            lines.append(f"  {tag} {c.name}: {fmt_value(c.lhs)} vs {fmt_value(c.rhs)}{prec}")
            if c.note and c.note != "error":
                lines.append(f"       {c.note}")
        return "\n".join(lines)
