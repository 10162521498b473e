"""Projection of a vector-valued harmonic map onto its tangent plane at a point.

Rotating so that the tangent plane at ``u(z0)`` becomes a coordinate plane and
dropping the normal coordinates gives a planar harmonic map ``f_Z``.  The
projection is 1-Lipschitz, so ``L(f_Z) <= L(u)``, and it is isometric on the
tangent plane, so the stretches of ``f_Z`` at ``z0`` equal those of ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePoint, OutsideDisk
from .geometry import (
    BOUNDARY_RADIUS,
    EXTRAPOLATION_RADII,
    _diameter,
    _richardson,
    boundary,
    conformal_at,
    stretch,
)
from .report import TOLERANCE, Check, check
from .series import ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap, as_vector_map, vector_frame

__all__ = ["TangentFrame", "conformal_at", "tangent_frame", "project", "interior_vector_check"]

RANK_TOL = 1e-12


@dataclass(frozen=True)
class TangentFrame:
    origin: np.ndarray
    basis: np.ndarray  # (2, m)
    normal_complement: np.ndarray  # (m - 2, m)

    @property
    def rotation(self) -> np.ndarray:
        """Orthogonal matrix whose first two rows span the tangent plane."""
        return np.vstack([self.basis, self.normal_complement])


def _orthonormal_completion(vectors: list[np.ndarray], m: int) -> list[np.ndarray]:
    out = []
    for k in range(m):
        if len(vectors) + len(out) == m:
            break
        v = np.zeros(m)
        v[k] = 1.0
        for w in vectors + out:
            v = v - (w @ v) * w
        # second pass keeps the frame orthonormal to rounding error
        for w in vectors + out:
            v = v - (w @ v) * w
        n = np.linalg.norm(v)
        if n > 1e-6:
            out.append(v / n)
    return out


def tangent_frame(u, z0: complex) -> TangentFrame:
    """Gram-Schmidt frame of ``span{D1 u, D2 u}`` at ``z0``, completed from the standard basis."""
    u = as_vector_map(u)
    if abs(complex(z0)) >= 1.0:
        raise OutsideDisk(f"|z0| = {abs(complex(z0))} must be < 1")
    if u.m < 2:
        raise DegeneratePoint("a tangent plane needs m >= 2")
    D1, D2 = vector_frame(u, z0)
    scale = max(np.linalg.norm(D1), np.linalg.norm(D2))
    if scale <= RANK_TOL or np.linalg.svd(np.vstack([D1, D2]), compute_uv=False)[1] <= RANK_TOL * scale:
        raise DegeneratePoint(f"differential at {complex(z0)} has rank < 2")
    # rank 2, so D1 != 0
    e1 = D1 / np.linalg.norm(D1)
    v = D2 - (e1 @ D2) * e1
    v = v - (e1 @ v) * e1
    e2 = v / np.linalg.norm(v)
    rest = _orthonormal_completion([e1, e2], u.m)
    origin = u(complex(z0)).astype(float)
    comp = np.array(rest).reshape(len(rest), u.m)
    return TangentFrame(origin, np.vstack([e1, e2]), comp)


def project(u, frame: TangentFrame) -> PlanarHarmonicMap:
    """Planar map ``(e1 . (u - u(z0)), e2 . (u - u(z0)))`` as ``g + conj(h)``."""
    u = as_vector_map(u)
    n = u.degree + 1
    C = np.zeros((u.m, n), dtype=complex)
    for k, f in enumerate(u.F):
        C[k, : f.coeffs.size] = f.coeffs
    Ft = frame.basis @ C
    Ft[:, 0] -= frame.basis @ frame.origin
    return VectorHarmonicMap((ComplexSeries(Ft[0]), ComplexSeries(Ft[1]))).to_planar()


def interior_vector_check(u, z0: complex, r: float = BOUNDARY_RADIUS, *, samples=None, extrapolate=False, bd=None, tol=TOLERANCE, conformal_tol: float = 1e-8) -> list[Check]:
    """Interior length and diameter bounds for a map into ``R^m`` at ``z0``.

    ``pi (1-|z0|^2) Lambda_u(z0) <= 2 d`` with ``d`` the diameter of the full
    image, ``2 pi (1-|z0|^2) lambda(z0) <= L`` through the tangent projection
    and, at conformal points, ``2 pi (1-|z0|^2) |u_x(z0)| <= L``.  The
    diameter bound is also recorded for the projected map and its own
    diameter (``vector_interior_Lambda_projected``).
    """
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise OutsideDisk(f"|z0| = {abs(z0)} must be < 1")
    u = as_vector_map(u)
    bd = bd if bd is not None else boundary(u, r, samples, extrapolate)
    ui = bd.interior
    w = 1.0 - abs(z0) ** 2
    Lam, lam = stretch(ui, z0)
    out = [check("vector_interior_Lambda", np.pi * w * Lam, 2.0 * bd.d, tol, where=z0)]
    try:
        frame = tangent_frame(ui, z0)
    except DegeneratePoint:
        frame = None
    if frame is not None:
        fz = project(ui, frame)
        _, lam_p = stretch(fz, z0)
        out.append(check("vector_interior_lambda", 2.0 * np.pi * w * lam_p, bd.L, tol, where=z0))
        Lam_p, _ = stretch(fz, z0)
        if bd.extrapolated:
            d_p = _richardson([_diameter(fz, rr) for rr in EXTRAPOLATION_RADII])
        else:
            d_p = _diameter(fz, 1.0)
        out.append(check("vector_interior_Lambda_projected", np.pi * w * Lam_p, 2.0 * d_p, tol, where=z0))
    else:
        # rank < 2: lambda vanishes
        out.append(check("vector_interior_lambda", 0.0, bd.L, tol, where=z0))
    if conformal_at(ui, z0, conformal_tol):
        D1, _ = vector_frame(ui, z0)
        out.append(check("vector_interior_conformal", 2.0 * np.pi * w * float(np.linalg.norm(D1)), bd.L, tol, where=z0))
    return out
