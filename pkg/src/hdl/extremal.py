"""
Constructors for the maps that attain (or witness) the sharp bounds.

Logarithm and arctangent type series are produced from closed-form
coefficients.  Every such map here is ``c * Log(M(z))`` for a Moebius ``M``
sending the disk into the right half-plane, and

    Log M(z) = Log(beta/delta) + Log(1 + (alpha/beta) z) - Log(1 + (gamma/delta) z)

for ``M(z) = (alpha z + beta) / (gamma z + delta)``: both sides are analytic
on the disk, agree at 0 and differ by a continuous multiple of ``2 pi i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecViolation
from .series import (
    DEFAULT_TERMS,
    ComplexSeries,
    PlanarHarmonicMap,
    VectorHarmonicMap,
    antiderivative,
    circle_angles,
    eval_circle,
    multiply,
    reciprocal,
)

ADMISSIBILITY_RADIUS = 0.999
ADMISSIBILITY_SAMPLES = 512
ADMISSIBILITY_TOL = 1e-9


def log1p_series(c: complex, N: int) -> np.ndarray:
    """Coefficients of ``Log(1 + c z)`` up to degree ``N`` (needs ``|c| <= 1``)."""
    k = np.arange(1, N + 1)
    out = np.zeros(N + 1, dtype=complex)
    out[1:] = -np.power(-complex(c), k) / k
    return out


def log_mobius_series(alpha, beta, gamma, delta, N: int = DEFAULT_TERMS) -> ComplexSeries:
    """Principal ``Log((alpha z + beta) / (gamma z + delta))`` as a degree-``N`` series."""
    c = log1p_series(alpha / beta, N) - log1p_series(gamma / delta, N)
    c[0] = np.log(complex(beta) / complex(delta))
    return ComplexSeries(c)


def arctan_series(N: int = DEFAULT_TERMS) -> ComplexSeries:
    """``arctan z``: odd coefficients ``(-1)^n / (2n + 1)``."""
    c = np.zeros(N + 1, dtype=complex)
    n = np.arange((N + 1) // 2)
    c[2 * n + 1] = (-1.0) ** n / (2 * n + 1)
    return ComplexSeries(c)


def strip_base(N: int = DEFAULT_TERMS) -> ComplexSeries:
    """``F0(z) = (4/pi) arctan z``, the conformal map of the disk onto the strip."""
    return arctan_series(N) * (4.0 / np.pi)


def strip_conformal(z0: complex = 0.0, b: float = 0.0, N: int = DEFAULT_TERMS) -> ComplexSeries:
    """Conformal map of the disk onto the strip with ``z0 -> b`` and ``F'(z0) > 0``.

    Built as ``F0 o T`` where ``T`` is the disk automorphism with
    ``T(z0) = tan(pi b / 4)`` and positive derivative at ``z0``.
    """
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise SpecViolation(f"|z0| = {abs(z0)} must be < 1")
    if not -1.0 < b < 1.0:
        raise SpecViolation(f"b = {b} must lie in (-1, 1)")
    w0 = np.tan(0.25 * np.pi * b)
    # T(z) = (A z + B) / (C z + D)
    A = 1.0 - w0 * np.conj(z0)
    B = w0 - z0
    C = w0 - np.conj(z0)
    D = 1.0 - w0 * z0
    # F0(w) = (-2i/pi) Log((1 + i w) / (1 - i w))
    return log_mobius_series(C + 1j * A, D + 1j * B, C - 1j * A, D - 1j * B, N) * (-2j / np.pi)


def u_d_map(d: float, N: int = DEFAULT_TERMS) -> VectorHarmonicMap:
    """``u_d = (d/pi) arg((1+z)/(1-z))``, mapping the disk onto ``(-d/2, d/2)``."""
    if d <= 0:
        raise SpecViolation("d must be positive")
    F = log_mobius_series(1.0, 1.0, -1.0, 1.0, N) * (-1j * d / np.pi)
    return VectorHarmonicMap((F,))


def u_hat_map(N: int = DEFAULT_TERMS) -> VectorHarmonicMap:
    """``(2/pi) arg((1+iz)/(1-iz))``; maps (-1, 1) onto itself."""
    F = log_mobius_series(1j, 1.0, -1j, 1.0, N) * (-2j / np.pi)
    return VectorHarmonicMap((F,))


def p_map(d: float) -> PlanarHarmonicMap:
    """``p(z) = d x / 2``, a non-extremal map onto an interval of length ``d``."""
    c = ComplexSeries([0.0, 0.25 * d])
    return PlanarHarmonicMap(c, c)


# -- the f^nu and f_H families -------------------------------------------------


def _circle_sup(values_fn, s: ComplexSeries) -> float:
    return float(np.max(values_fn(eval_circle(s, ADMISSIBILITY_RADIUS, ADMISSIBILITY_SAMPLES))))


@dataclass(frozen=True)
class NuSpec:
    """Datum ``omega``: a holomorphic self-map of the disk with a zero of order >= 2 at 0."""

    omega: ComplexSeries

    @property
    def nu(self) -> ComplexSeries:
        return self.omega.shift(-2)

    def validate(self):
        c = self.omega.coeffs
        if c.size < 3 or abs(c[0]) > 1e-14 or abs(c[1]) > 1e-14:
            raise SpecViolation("omega must vanish to order >= 2 at 0")
        sup = _circle_sup(np.abs, self.omega)
        if sup > 1.0 + ADMISSIBILITY_TOL:
            raise SpecViolation(f"sup |omega| = {sup} on the test circle exceeds 1")
        return self


@dataclass(frozen=True)
class HSpec:
    """Datum ``H`` (zero of order >= 2 at 0) with ``2H`` in ``{Re w < a}``; ``a = g'(0)``."""

    H: ComplexSeries
    a: complex = 1.0

    def validate(self):
        c = self.H.coeffs
        if c.size < 3 or abs(c[0]) > 1e-14 or abs(c[1]) > 1e-14:
            raise SpecViolation("H must vanish to order >= 2 at 0")
        sup = _circle_sup(lambda v: np.real(2.0 * v), self.H)
        if sup > np.real(self.a) + ADMISSIBILITY_TOL:
            raise SpecViolation(f"sup Re 2H = {sup} is not below Re a = {np.real(self.a)}")
        return self


def f_nu(spec: NuSpec, N: int = DEFAULT_TERMS) -> PlanarHarmonicMap:
    """``g' = 1/(1 + z^2 nu)``, ``h' = nu/(1 + z^2 nu)``, ``g(0) = h(0) = 0``."""
    spec.validate()
    inv = reciprocal(spec.omega + 1.0, N)
    gp = inv
    hp = multiply(spec.nu, inv, N)
    return PlanarHarmonicMap(antiderivative(gp, 0.0), antiderivative(hp, 0.0))


def f_H(spec: HSpec, N: int = DEFAULT_TERMS) -> PlanarHarmonicMap:
    """``g' = a - H``, ``h' = H / z^2``, ``g(0) = h(0) = 0``."""
    spec.validate()
    gp = (spec.a - spec.H).truncate(N)
    hp = spec.H.shift(-2).truncate(N)
    return PlanarHarmonicMap(antiderivative(gp, 0.0), antiderivative(hp, 0.0))


def h_from_omega(omega: ComplexSeries, N: int = DEFAULT_TERMS) -> ComplexSeries:
    """``H = omega / (1 + omega)``, the f_H datum equivalent to ``nu = omega / z^2``."""
    return multiply(omega, reciprocal(omega + 1.0, N), N)


def length_equality_witness(f: PlanarHarmonicMap, r: float = 1.0 - 1e-4, samples: int = 4096) -> tuple[float, float]:
    """``(min Re X, max |Im X|)`` for ``X(t) = g' - conj(h' e^{2it})`` on ``|z| = r``.

    For maps attaining ``2 pi |g'(0)| = L`` with ``g'(0) > 0`` the function
    ``X`` is real and nonnegative.
    """
    t = circle_angles(samples)
    X = eval_circle(f.g.deriv, r, samples) - np.conj(eval_circle(f.h.deriv, r, samples) * np.exp(2j * t))
    return float(np.min(X.real)), float(np.max(np.abs(X.imag)))


# -- other witnesses -----------------------------------------------------------


def circle_map(a, b, N: int = 1) -> VectorHarmonicMap:
    """``u_k = a_k x - b_k y``, i.e. ``F_k = (a_k + i b_k) z``; needs ``|a| = |b|``, ``a . b = 0``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise SpecViolation("a and b must be vectors of the same length")
    if abs(np.linalg.norm(a) - np.linalg.norm(b)) > 1e-12 or abs(a @ b) > 1e-12:
        raise SpecViolation("circle maps need |a| = |b| and a . b = 0")
    deg = max(N, 1)
    F = []
    for ak, bk in zip(a, b):
        c = np.zeros(deg + 1, dtype=complex)
        c[1] = complex(ak, bk)
        F.append(ComplexSeries(c))
    return VectorHarmonicMap(tuple(F))


def duren_example(N: int = DEFAULT_TERMS) -> PlanarHarmonicMap:
    """``f = Re(z/(1-z)) + i Im(Log((1+z)/(1-z))/2)``.

    The boundary values collapse: the upper semicircle goes to
    ``-1/2 + i pi/4`` and the lower one to its conjugate.
    """
    k = np.arange(N + 1)
    l = np.where(k >= 1, 1.0, 0.0).astype(complex)
    s = np.where(k % 2 == 1, 1.0 / np.maximum(k, 1), 0.0).astype(complex)
    return PlanarHarmonicMap(ComplexSeries(0.5 * (l + s)), ComplexSeries(0.5 * (l - s)))


DUREN_CORNER = complex(-0.5, 0.25 * np.pi)
