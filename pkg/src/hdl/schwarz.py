"""
Sharp Schwarz-type bounds for harmonic maps into (-1, 1) and into the disk.

For a real harmonic ``h: U -> (-1, 1)`` with ``h(0) = a`` the envelopes

    X+(r, a) = (4/pi) arctan(s (1+r)/(1-r)) - 1
    X-(r, a) = 1 - (4/pi) arctan(e (1+r)/(1-r))

with ``s = tan(pi (a+1)/4)`` and ``e = 1/s`` satisfy ``X- <= h(z) <= X+`` at
``r = |z|``.  All gradient bounds follow from the strip density through
Schwarz-Pick.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotBoundaryFixed, OutsideDisk, OutsideInterval, RadiusOutOfRange, RangeViolation
from .report import TOLERANCE, Check, check, worst
from .series import ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap, disk_automorphism, dilatations

FOUR_PI = 4.0 / np.pi
RICHARDSON_STEPS = (1e-3, 5e-4, 2.5e-4)
BOUNDARY_RADIUS = 1.0 - 1e-8


@dataclass(frozen=True)
class SchwarzParams:
    a: float
    s: float
    e: float
    alpha: float


def _check_a(a):
    if not np.all((np.asarray(a) > -1.0) & (np.asarray(a) < 1.0)):
        raise OutsideInterval(f"a = {a} must lie in (-1, 1)")


def _check_r(r):
    if not np.all((np.asarray(r) >= 0.0) & (np.asarray(r) < 1.0)):
        raise RadiusOutOfRange(f"r = {r} must lie in [0, 1)")


def params(a: float) -> SchwarzParams:
    _check_a(a)
    q = 0.25 * np.pi * (a + 1.0)
    return SchwarzParams(a=a, s=float(np.tan(q)), e=float(1.0 / np.tan(q)), alpha=0.5 * np.pi * (a + 1.0))


def _s(a):
    return np.tan(0.25 * np.pi * (np.asarray(a, dtype=float) + 1.0))


def _rise(r, s):
    # arctan(s (1+r)/(1-r)) - arctan(s), folded into one arctan; exact at r = 0
    return FOUR_PI * np.arctan(2.0 * r * s / ((1.0 - r) + s * s * (1.0 + r)))


def x_plus(r, a):
    _check_r(r)
    _check_a(a)
    r = np.asarray(r, dtype=float)
    return np.asarray(a, dtype=float) + _rise(r, _s(a))


def x_minus(r, a):
    _check_r(r)
    _check_a(a)
    r = np.asarray(r, dtype=float)
    return np.asarray(a, dtype=float) - _rise(r, 1.0 / _s(a))


def x_plus_deriv(r, a):
    _check_r(r)
    _check_a(a)
    r = np.asarray(r, dtype=float)
    s = _s(a)
    return FOUR_PI * 2.0 * s / ((1.0 - r) ** 2 + s * s * (1.0 + r) ** 2)


def x_minus_deriv(r, a):
    _check_r(r)
    _check_a(a)
    r = np.asarray(r, dtype=float)
    s = _s(a)
    return -FOUR_PI * 2.0 * s / ((1.0 + r) ** 2 + s * s * (1.0 - r) ** 2)


def gradient_bound_origin(a: float) -> float:
    return FOUR_PI * np.sin(params(a).alpha)


def _check_z(z):
    if abs(complex(z)) >= 1.0:
        raise OutsideDisk(f"|z| = {abs(complex(z))} must be < 1")


def gradient_bound_interior(z: complex, b: float) -> float:
    """Best bound on ``|grad h(z)|`` over ``h: U -> (-1, 1)`` with ``h(z) = b``."""
    _check_z(z)
    return FOUR_PI * np.sin(params(abs(b)).alpha) / (1.0 - abs(complex(z)) ** 2)


def khavinson_bound(z: complex) -> float:
    _check_z(z)
    return FOUR_PI / (1.0 - abs(complex(z)) ** 2)


def boundary_bound(a0) -> float:
    """Lower bound ``2 / (s pi)`` for the stretch at a boundary point mapped to the circle.

    A complex ``a0`` (the value ``f(0)``) is replaced by its modulus.
    """
    if np.iscomplexobj(a0):
        a0 = abs(a0)
    return 2.0 / (params(float(a0)).s * np.pi)


def interior_envelope(z: complex, a: complex, b: float) -> float:
    """Upper bound for ``h(z)`` when ``h(a) = b``, in its closed arctan-tan form."""
    w = abs(disk_automorphism(a)(complex(z)))
    half = 0.5 * params(abs(b)).alpha
    return FOUR_PI * np.arctan((1.0 + w) / (1.0 - w) * np.tan(half)) - 1.0


# -- verification on concrete maps ---------------------------------------------


def _real_part_map(h) -> ComplexSeries:
    if isinstance(h, ComplexSeries):
        return h
    if isinstance(h, VectorHarmonicMap) and h.m == 1:
        return h.F[0]
    raise TypeError("expected a real harmonic map (series or 1-component vector map)")


def _polar_grid(rgrid, thetagrid):
    r = np.asarray(rgrid, dtype=float)
    t = np.asarray(thetagrid, dtype=float)
    _check_r(r)
    return (r[:, None] * np.exp(1j * t[None, :])).ravel(), np.repeat(r, t.size)


def envelope_check(h, rgrid, thetagrid, tol: float = TOLERANCE) -> list[Check]:
    """Verify ``X-(|z|, a) <= h(z) <= X+(|z|, a)`` on a polar grid, ``a = h(0)``."""
    F = _real_part_map(h)
    z, r = _polar_grid(rgrid, thetagrid)
    vals = np.real(F(z))
    bad = np.abs(vals) - 1.0
    if np.any(bad > 1e-9):
        i = int(np.argmax(bad))
        raise RangeViolation(f"h({z[i]}) = {vals[i]} leaves (-1, 1)")
    a = float(np.real(F(0.0)))
    upper = worst("envelope_upper", vals, x_plus(r, a), tol, z)
    lower = worst("envelope_lower", x_minus(r, a), vals, tol, z)
    return [upper, lower]


def modulus_envelope_check(f: PlanarHarmonicMap, rgrid, thetagrid, tol: float = TOLERANCE) -> Check:
    """Verify ``|f(z)| <= X+(|z|, |f(0)|)`` for a harmonic self-map of the disk."""
    z, r = _polar_grid(rgrid, thetagrid)
    mod = np.abs(f(z))
    if np.any(mod > 1.0 + 1e-9):
        i = int(np.argmax(mod))
        raise RangeViolation(f"|f({z[i]})| = {mod[i]} exceeds 1")
    a = abs(complex(f(0.0)))
    return worst("modulus_envelope", mod, x_plus(r, a), tol, z)


def gradient_checks(h, zgrid, tol: float = TOLERANCE) -> list[Check]:
    """Gradient bounds for ``h: U -> (-1, 1)``: at the origin and at each grid point."""
    F = _real_part_map(h)
    z = np.asarray(zgrid, dtype=complex).ravel()
    a = float(np.real(F(0.0)))
    g0 = abs(complex(F.deriv(0.0)))
    out = [
        check("gradient_origin_4_over_pi", g0, FOUR_PI, tol),
        check("gradient_origin", g0, gradient_bound_origin(a), tol),
    ]
    grad = np.abs(F.deriv(z))
    b = np.abs(np.real(F(z)))
    rhs = FOUR_PI * np.sin(0.5 * np.pi * (b + 1.0)) / (1.0 - np.abs(z) ** 2)
    out.append(worst("gradient_interior", grad, rhs, tol, z))
    return out


@dataclass
class BoundaryDerivativeReport:
    radial_derivative: float
    Lambda: float
    bound: float
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _richardson(values):
    # D(h) = d + c1 h + c2 h^2 with steps halving
    r1 = [2.0 * values[i + 1] - values[i] for i in range(len(values) - 1)]
    return (4.0 * r1[1] - r1[0]) / 3.0


def boundary_derivative_check(f: PlanarHarmonicMap, b: complex, tol: float = TOLERANCE) -> BoundaryDerivativeReport:
    """Boundary Schwarz bound ``Lambda_f(b) >= |f_r(b)| >= 2 / (s(|f(0)|) pi)``."""
    b = complex(b)
    b = b / abs(b)
    rho = BOUNDARY_RADIUS
    fb = complex(f(rho * b))
    if abs(fb) < 1.0 - 1e-4:
        raise NotBoundaryFixed(f"|f(b)| = {abs(fb)} is not on the unit circle")
    diffs = [(fb - complex(f((rho - step) * b))) / step for step in RICHARDSON_STEPS]
    radial = abs(_richardson(diffs))
    lam = dilatations(f, rho * b).Lambda
    bound = boundary_bound(abs(complex(f(0.0))))
    checks = [
        check("boundary_radial_derivative", bound, radial, tol, where=b),
        check("boundary_Lambda", bound, lam, tol, where=b),
    ]
    return BoundaryDerivativeReport(radial, lam, bound, checks)
