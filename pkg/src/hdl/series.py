"""
Truncated power series and harmonic maps of the unit disk.

A :class:`ComplexSeries` holds the Taylor coefficients ``c[k]`` of a
holomorphic function ``F(z) = sum_k c[k] z**k`` on the unit disk.  Two
harmonic map models are built on top of it:

* :class:`PlanarHarmonicMap` -- ``f = g + conj(h)`` with ``g, h`` holomorphic;
* :class:`VectorHarmonicMap` -- ``u = (Re F_1, ..., Re F_m)``.

Series never renormalise (trailing zeros are kept) and all arithmetic is in
double precision.  Evaluation on a full circle ``|z| = r`` is done with one
inverse FFT after folding the coefficients modulo the number of samples,
which is exact for any degree and is how long (1/k decaying) series are
evaluated near the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import BadDiskPoint, RadiusOutOfRange, ZeroConstantTerm

DEFAULT_TERMS = 256
FFT_RADIUS = 0.5
FFT_SAMPLES = 1024
NOISE_FLOOR = 8.0 * np.finfo(float).eps

_HORNER_MAX = 96
_BLOCK = 256
_POINT_CHUNK = 2048


def _as_coeffs(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).ravel()
    if arr.size == 0:
        arr = np.zeros(1, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """Truncated power series ``sum_k coeffs[k] z**k``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        more = ", ..." if self.coeffs.size > 4 else ""
        return f"ComplexSeries(degree={self.degree}, [{head}{more}])"

    def __call__(self, z):
        return evaluate(self, z)

    # -- arithmetic ---------------------------------------------------------

    def _padded(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=complex)
        m = min(n, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return out

    def __add__(self, other):
        if isinstance(other, ComplexSeries):
            n = max(len(self), len(other))
            return ComplexSeries(self._padded(n) + other._padded(n))
        c = self.coeffs.copy()
        c[0] += other
        return ComplexSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return ComplexSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexSeries):
            return multiply(self, other, max(len(self), len(other)) - 1)
        return ComplexSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return ComplexSeries(self.coeffs / scalar)

    # -- structural helpers -------------------------------------------------

    def truncate(self, degree: int) -> ComplexSeries:
        return ComplexSeries(self._padded(degree + 1))

    def shift(self, k: int) -> ComplexSeries:
        """Multiply by ``z**k``; negative ``k`` drops the leading coefficients."""
        if k >= 0:
            return ComplexSeries(np.concatenate([np.zeros(k, complex), self.coeffs]))
        return ComplexSeries(self.coeffs[-k:])

    def dilate(self, r: float) -> ComplexSeries:
        """Series of ``z -> F(r z)``."""
        return ComplexSeries(self.coeffs * _powers(r, self.coeffs.size))

    def conj_coeffs(self) -> ComplexSeries:
        """Series of ``z -> conj(F(conj z))``."""
        return ComplexSeries(np.conj(self.coeffs))

    @cached_property
    def deriv(self) -> ComplexSeries:
        return derivative(self)

    def on_circle(self, r: float, samples: int) -> np.ndarray:
        return eval_circle(self, r, samples)

    def allclose(self, other: ComplexSeries, atol: float = 1e-12) -> bool:
        n = max(len(self), len(other))
        return bool(np.max(np.abs(self._padded(n) - other._padded(n))) <= atol)


def _powers(r: float, n: int) -> np.ndarray:
    k = np.arange(n, dtype=float)
    if r == 0:
        out = np.zeros(n)
        out[0] = 1.0
        return out
    return np.power(float(r), k)


# -- evaluation ----------------------------------------------------------------


def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        out = out * z + a
    return out


def _blocked(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    nb = -(-c.size // _BLOCK)
    blocks = np.zeros(nb * _BLOCK, dtype=complex)
    blocks[: c.size] = c
    blocks = blocks.reshape(nb, _BLOCK)
    out = np.empty(z.shape, dtype=complex)
    for start in range(0, z.size, _POINT_CHUNK):
        zz = z[start : start + _POINT_CHUNK]
        pw = np.ones((zz.size, _BLOCK), dtype=complex)
        for j in range(1, _BLOCK):
            pw[:, j] = pw[:, j - 1] * zz
        zb = pw[:, -1] * zz
        vals = pw @ blocks.T
        acc = vals[:, -1].copy()
        for j in range(nb - 2, -1, -1):
            acc = acc * zb + vals[:, j]
        out[start : start + _POINT_CHUNK] = acc
    return out


def evaluate(s: ComplexSeries, z):
    """Value of the truncated series at ``z`` (scalar or array)."""
    zarr = np.asarray(z, dtype=complex)
    flat = zarr.ravel()
    c = s.coeffs
    if c.size <= _HORNER_MAX:
        vals = _horner(c, flat)
    else:
        vals = _blocked(c, flat)
    if zarr.ndim == 0:
        return complex(vals[0])
    return vals.reshape(zarr.shape)


def eval_circle(s: ComplexSeries, r: float, samples: int) -> np.ndarray:
    """Values at ``r * exp(2*pi*i*j/samples)``, ``j = 0..samples-1``.

    Coefficients are folded modulo ``samples`` before a single inverse FFT,
    so the result is exact for every degree.
    """
    c = s.coeffs * _powers(r, s.coeffs.size)
    nfold = -(-c.size // samples)
    buf = np.zeros(nfold * samples, dtype=complex)
    buf[: c.size] = c
    folded = buf.reshape(nfold, samples).sum(axis=0)
    return np.fft.ifft(folded) * samples


def circle_angles(samples: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(samples) / samples


# -- calculus and algebra ------------------------------------------------------


def derivative(s: ComplexSeries) -> ComplexSeries:
    c = s.coeffs
    if c.size == 1:
        return ComplexSeries([0.0])
    return ComplexSeries(c[1:] * np.arange(1, c.size))


def antiderivative(s: ComplexSeries, c0: complex = 0.0) -> ComplexSeries:
    c = s.coeffs
    out = np.empty(c.size + 1, dtype=complex)
    out[0] = c0
    out[1:] = c / np.arange(1, c.size + 1)
    return ComplexSeries(out)


def multiply(a: ComplexSeries, b: ComplexSeries, degree: int) -> ComplexSeries:
    """Cauchy product truncated to ``degree``."""
    x = a.coeffs[: degree + 1]
    y = b.coeffs[: degree + 1]
    if min(x.size, y.size) > 64:
        from scipy.signal import fftconvolve

        prod = fftconvolve(x, y)
    else:
        prod = np.convolve(x, y)
    return ComplexSeries(prod[: degree + 1]).truncate(degree)


def reciprocal(s: ComplexSeries, N: int = DEFAULT_TERMS) -> ComplexSeries:
    """Series ``t`` of degree ``N`` with ``s * t = 1 + O(z**(N+1))``."""
    c = s.coeffs
    if abs(c[0]) < 1e-14:
        raise ZeroConstantTerm(f"constant term {c[0]!r} is (numerically) zero")
    # only the nonzero tail of s contributes to the recurrence
    nz = np.nonzero(c)[0]
    deg = int(nz[-1]) if nz.size else 0
    tail = c[1 : deg + 1]
    t = np.zeros(N + 1, dtype=complex)
    t[0] = 1.0 / c[0]
    for n in range(1, N + 1):
        k = min(n, deg)
        if k == 0:
            break
        t[n] = -np.dot(tail[:k], t[n - 1 :: -1][:k]) / c[0]
    return ComplexSeries(t)


def coefficients_from_samples(
    sampler: Callable[[np.ndarray], np.ndarray], r: float, N: int
) -> ComplexSeries:
    """Taylor coefficients from ``N`` equispaced samples on ``|z| = r``.

    ``sampler`` receives the array of angles ``t`` and must return the
    function values at ``r * exp(i t)``.  Only the first ``N // 2``
    coefficients are returned; the upper half of the spectrum is aliased.
    Spectral values within ``NOISE_FLOOR`` (relative to the largest sample)
    are set to zero.
    """
    if not 0.0 < r < 1.0:
        raise RadiusOutOfRange(f"sampling radius must lie in (0, 1), got {r}")
    if N < 2 or N & (N - 1):
        raise ValueError(f"sample count must be a power of two, got {N}")
    t = circle_angles(N)
    vals = np.asarray(sampler(t), dtype=complex)
    if vals.ndim == 0:
        vals = np.full(N, complex(vals))
    spec = np.fft.fft(vals) / N
    # values at the rounding level of the transform carry no information; left
    # in, they would be amplified by r**-k
    floor = NOISE_FLOOR * float(np.max(np.abs(vals)))
    spec[np.abs(spec) <= floor] = 0.0
    keep = N // 2
    return ComplexSeries(spec[:keep] / _powers(r, keep))


def disk_automorphism(a: complex):
    """``phi_a(z) = (a - z) / (1 - conj(a) z)``, the involution swapping 0 and a."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise BadDiskPoint(f"|a| = {abs(a)} must be < 1")
    return lambda z: (a - z) / (1.0 - np.conj(a) * z)


def mobius_precompose(
    s: ComplexSeries,
    a: complex,
    N: int = DEFAULT_TERMS,
    r0: float = FFT_RADIUS,
    samples: int = FFT_SAMPLES,
) -> ComplexSeries:
    """Degree-``N`` series of ``s o phi_a`` via FFT sampling on ``|z| = r0``.

    Coefficient ``k`` carries round-off amplified by ``r0**-k``; with the
    default ``r0 = 0.5`` roughly 40 coefficients are good to 1e-10.  Raise
    ``r0`` when more are needed.
    """
    phi = disk_automorphism(a)
    while samples < 2 * (N + 1):
        samples *= 2
    out = coefficients_from_samples(lambda t: s(phi(r0 * np.exp(1j * t))), r0, samples)
    return out.truncate(N)


# -- harmonic maps -------------------------------------------------------------


@dataclass(frozen=True)
class Dilatations:
    p: complex
    q: complex
    Lambda: float
    lam: float
    J: float

    @property
    def mu(self) -> complex:
        """Complex dilatation q/p."""
        return self.q / self.p if self.p != 0 else complex("nan")

    @property
    def distortion(self) -> float:
        return self.Lambda / self.lam if self.lam > 0 else math.inf


@dataclass(frozen=True, eq=False)
class PlanarHarmonicMap:
    """``f = g + conj(h)`` on the unit disk."""

    g: ComplexSeries
    h: ComplexSeries

    def __call__(self, z):
        return self.g(z) + np.conj(self.h(z))

    @property
    def degree(self) -> int:
        return max(self.g.degree, self.h.degree)

    def dilate(self, r: float) -> PlanarHarmonicMap:
        return PlanarHarmonicMap(self.g.dilate(r), self.h.dilate(r))

    def on_circle(self, r: float, samples: int) -> np.ndarray:
        return eval_circle(self.g, r, samples) + np.conj(eval_circle(self.h, r, samples))

    def as_vector(self) -> VectorHarmonicMap:
        """Same map viewed in R^2: ``Re f = Re(g + h)``, ``Im f = Re(-i (g - h))``."""
        return VectorHarmonicMap((self.g + self.h, (self.g - self.h) * (-1j)))

    def allclose(self, other: PlanarHarmonicMap, atol: float = 1e-12) -> bool:
        return self.g.allclose(other.g, atol) and self.h.allclose(other.h, atol)


@dataclass(frozen=True, eq=False)
class VectorHarmonicMap:
    """``u = (Re F_1, ..., Re F_m)`` on the unit disk."""

    F: tuple

    def __post_init__(self):
        F = tuple(f if isinstance(f, ComplexSeries) else ComplexSeries(f) for f in self.F)
        if not F:
            raise ValueError("a vector map needs at least one component")
        object.__setattr__(self, "F", F)

    @property
    def m(self) -> int:
        return len(self.F)

    @property
    def degree(self) -> int:
        return max(f.degree for f in self.F)

    def __call__(self, z) -> np.ndarray:
        """Real array of shape ``z.shape + (m,)``."""
        return np.stack([np.real(f(z)) for f in self.F], axis=-1)

    def complex_values(self, z) -> np.ndarray:
        return np.stack([np.asarray(f(z)) for f in self.F], axis=-1)

    def derivative_values(self, z) -> np.ndarray:
        """``F'(z)`` as a complex array of shape ``z.shape + (m,)``."""
        return np.stack([np.asarray(f.deriv(z)) for f in self.F], axis=-1)

    def on_circle(self, r: float, samples: int) -> np.ndarray:
        return np.stack([np.real(eval_circle(f, r, samples)) for f in self.F], axis=-1)

    def derivative_on_circle(self, r: float, samples: int) -> np.ndarray:
        return np.stack([eval_circle(f.deriv, r, samples) for f in self.F], axis=-1)

    def dilate(self, r: float) -> VectorHarmonicMap:
        return VectorHarmonicMap(tuple(f.dilate(r) for f in self.F))

    def to_planar(self) -> PlanarHarmonicMap:
        """``u_1 + i u_2 = g + conj(h)`` with ``g = (F_1 + i F_2)/2``, ``h = (F_1 - i F_2)/2``."""
        if self.m > 2:
            raise ValueError("only maps into R or R^2 have a planar form")
        F1 = self.F[0]
        F2 = self.F[1] if self.m == 2 else ComplexSeries([0.0])
        g = (F1 + F2 * 1j) * 0.5
        h = (F1 - F2 * 1j) * 0.5
        # conj(h) must carry Re F1 + i Re F2; the imaginary constants of F cancel
        return PlanarHarmonicMap(g, h)


def as_vector_map(f) -> VectorHarmonicMap:
    if isinstance(f, VectorHarmonicMap):
        return f
    if isinstance(f, PlanarHarmonicMap):
        return f.as_vector()
    if isinstance(f, ComplexSeries):
        return VectorHarmonicMap((f,))
    raise TypeError(f"not a harmonic map: {type(f).__name__}")


def dilatations(f: PlanarHarmonicMap, z: complex) -> Dilatations:
    gp = complex(f.g.deriv(z))
    hp = complex(f.h.deriv(z))
    a, b = abs(gp), abs(hp)
    return Dilatations(p=gp, q=np.conj(hp), Lambda=a + b, lam=abs(a - b), J=a * a - b * b)


def vector_frame(u: VectorHarmonicMap, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Partial derivatives ``(D1 u, D2 u)`` at ``z``; ``u_x - i u_y = F'``."""
    Fp = u.derivative_values(complex(z))
    return np.real(Fp), -np.imag(Fp)


# -- JSON encoding -------------------------------------------------------------


def series_to_dict(s: ComplexSeries) -> dict:
    return {"coeffs": [[float(c.real), float(c.imag)] for c in s.coeffs]}


def series_from_dict(d: dict) -> ComplexSeries:
    pairs = d["coeffs"]
    return ComplexSeries([complex(re, im) for re, im in pairs])


def map_to_dict(f) -> dict:
    if isinstance(f, PlanarHarmonicMap):
        return {"kind": "planar", "g": series_to_dict(f.g), "h": series_to_dict(f.h)}
    if isinstance(f, VectorHarmonicMap):
        return {"kind": "vector", "F": [series_to_dict(s) for s in f.F]}
    raise TypeError(f"not a harmonic map: {type(f).__name__}")


def map_from_dict(d: dict):
    kind = d.get("kind")
    if kind == "planar":
        return PlanarHarmonicMap(series_from_dict(d["g"]), series_from_dict(d["h"]))
    if kind == "vector":
        return VectorHarmonicMap(tuple(series_from_dict(s) for s in d["F"]))
    raise ValueError(f"unknown map kind {kind!r}")


def polynomial(coeffs: Sequence[complex]) -> ComplexSeries:
    return ComplexSeries(coeffs)


IDENTITY = ComplexSeries([0.0, 1.0])
