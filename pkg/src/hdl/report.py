"""Check records shared by every inequality verifier."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TOLERANCE = 1e-9


@dataclass
class Check:
    """One verified inequality ``lhs <= rhs``; ``slack = rhs - lhs``."""

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    where: complex | None = None
    tolerance: float = TOLERANCE

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "slack": _num(self.slack),
            "pass": bool(self.passed),
        }
        if self.where is not None:
            out["at"] = [float(np.real(self.where)), float(np.imag(self.where))]
        return out


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def check(name: str, lhs: float, rhs: float, tol: float = TOLERANCE, scale: float = 1.0, where=None) -> Check:
    """Build a check; it passes when ``rhs - lhs >= -tol * scale``."""
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    return Check(name, lhs, rhs, slack, bool(slack >= -tol * scale), where, tol * scale)


def worst(name: str, lhs, rhs, tol: float = TOLERANCE, points=None) -> Check:
    """Reduce arrays of ``lhs <= rhs`` instances to the one with least slack."""
    lhs = np.asarray(lhs, dtype=float).ravel()
    rhs = np.broadcast_to(np.asarray(rhs, dtype=float), lhs.shape).ravel()
    i = int(np.argmin(rhs - lhs))
    where = None if points is None else complex(np.asarray(points).ravel()[i])
    return check(name, lhs[i], rhs[i], tol, where=where)


@dataclass
class CheckList:
    checks: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def add(self, *items: Check):
        self.checks.extend(items)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def min_slack(self) -> float:
        return min((c.slack for c in self.checks), default=math.inf)
