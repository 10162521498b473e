"""Hyperbolic densities and distances on the unit disk and the strip (-1, 1) x R.

Densities use the curvature -1 normalisation, ``2 / (1 - |z|^2)`` on the
disk, so that the strip density at the centre line is ``pi / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutsideDisk, OutsideInterval, OutsideStrip, RangeViolation
from .series import ComplexSeries

GUARD = 1e-12


@dataclass(frozen=True)
class StripPoint:
    w: complex

    def __post_init__(self):
        if abs(complex(self.w).real) >= 1.0 - GUARD:
            raise OutsideStrip(f"Re w = {complex(self.w).real} is not inside (-1, 1)")


def _re(w) -> float:
    if isinstance(w, StripPoint):
        return complex(w.w).real
    return complex(w).real


def strip_density(w) -> float:
    """``(pi/2) sec(pi Re(w) / 2)``."""
    u = _re(w)
    if abs(u) >= 1.0 - GUARD:
        raise OutsideStrip(f"Re w = {u} is not inside (-1, 1)")
    return 0.5 * np.pi / np.cos(0.5 * np.pi * u)


def strip_parameter(a: float) -> float:
    """``s(a) = tan(pi (a + 1) / 4)``."""
    return float(np.tan(0.25 * np.pi * (a + 1.0)))


def _check_interval(*us):
    for u in us:
        if not -1.0 < u < 1.0:
            raise OutsideInterval(f"{u} is not in (-1, 1)")


def strip_distance(u1: float, u2: float) -> float:
    """Hyperbolic distance between the real points ``u1, u2`` of the strip."""
    _check_interval(u1, u2)
    return abs(np.log(strip_parameter(u2) / strip_parameter(u1)))


def strip_distance_quadrature(u1: float, u2: float, N: int = 64) -> float:
    """Gauss-Legendre integral of the strip density along ``[u1, u2]``."""
    _check_interval(u1, u2)
    if u1 == u2:
        return 0.0
    lo, hi = sorted((u1, u2))
    x, w = np.polynomial.legendre.leggauss(N)
    # split at 0 so each panel stays away from the larger end's blow-up
    edges = [lo, hi] if lo >= 0 or hi <= 0 else [lo, 0.0, hi]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        u = mid + half * x
        total += half * np.sum(w * 0.5 * np.pi / np.cos(0.5 * np.pi * u))
    return float(total)


def disk_density(z) -> float:
    r2 = abs(complex(z)) ** 2
    if r2 >= 1.0:
        raise OutsideDisk(f"|z| = {np.sqrt(r2)} is not < 1")
    return 2.0 / (1.0 - r2)


@dataclass
class SchwarzPickReport:
    min_slack: float
    argmin: complex
    slacks: np.ndarray
    passed: bool


def schwarz_pick_check(omega: ComplexSeries, zgrid, tol: float = 1e-9) -> SchwarzPickReport:
    """Slack of ``rho_0(omega(z)) |omega'(z)| <= 2 / (1 - |z|^2)`` over ``zgrid``.

    ``omega`` is a holomorphic map of the disk into the strip.
    """
    z = np.asarray(zgrid, dtype=complex).ravel()
    if np.any(np.abs(z) >= 1.0):
        raise OutsideDisk("grid points must lie in the open unit disk")
    w = np.asarray(omega(z))
    excess = np.abs(w.real) - 1.0
    if np.any(excess > 1e-9):
        i = int(np.argmax(excess))
        raise RangeViolation(f"omega({z[i]}) = {w[i]} leaves the strip")
    u = np.clip(w.real, -1.0 + GUARD, 1.0 - GUARD)
    lhs = 0.5 * np.pi / np.cos(0.5 * np.pi * u) * np.abs(omega.deriv(z))
    slack = 2.0 / (1.0 - np.abs(z) ** 2) - lhs
    i = int(np.argmin(slack))
    return SchwarzPickReport(float(slack[i]), complex(z[i]), slack, bool(slack[i] >= -tol))
