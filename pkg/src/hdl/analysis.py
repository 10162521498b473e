"""Run every applicable inequality check on one map and collect a report."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import geometry as geo
from .report import TOLERANCE, Check
from .schwarz import gradient_checks
from .series import PlanarHarmonicMap, VectorHarmonicMap, as_vector_map
from .tangent import interior_vector_check


def tangent_points() -> np.ndarray:
    """The origin and 8 points on the circle of radius 0.5."""
    return np.concatenate([[0.0], 0.5 * np.exp(2j * np.pi * np.arange(8) / 8)])


@dataclass
class GeometryReport:
    L: float
    A: float
    d: float
    dirichlet: float
    Kstar: float
    checks: list = field(default_factory=list)
    tangent_checks: list = field(default_factory=list)
    alternative_checks: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    radius: float = geo.BOUNDARY_RADIUS
    extrapolated: bool = False

    @property
    def passed(self) -> bool:
        """Alternative readings are informational and do not count."""
        return all(c.passed for c in self.checks) and all(c.passed for c in self.tangent_checks)

    @property
    def all_checks(self) -> list:
        return self.checks + self.tangent_checks

    def to_dict(self) -> dict:
        def num(x):
            return float(x) if math.isfinite(x) else None

        out = {
            "L": num(self.L),
            "A": num(self.A),
            "d": num(self.d),
            "dirichlet": num(self.dirichlet),
            "Kstar": num(self.Kstar),
            "radius": None if self.extrapolated else self.radius,
            "extrapolated": self.extrapolated,
            "pass": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.tangent_checks:
            out["tangent_checks"] = [c.as_dict() for c in self.tangent_checks]
        if self.alternative_checks:
            out["alternative_checks"] = [c.as_dict() for c in self.alternative_checks]
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def _interval_valued(u: VectorHarmonicMap) -> bool:
    if u.m != 1:
        return False
    return bool(np.max(np.abs(u.on_circle(1.0, 4096))) < 1.0)


def analyze(
    f,
    radius: float = geo.BOUNDARY_RADIUS,
    *,
    samples: int | None = None,
    extrapolate: bool = False,
    tol: float = TOLERANCE,
    quadrature_nodes: int = geo.GL_NODES,
    angular_samples: int = geo.ANGULAR_SAMPLES,
    sweep: bool = True,
    tangent: bool = True,
    alternatives: bool = True,
) -> GeometryReport:
    """Compute ``L, A, d, D[u], K*`` and run the checks that apply to ``f``.

    Planar maps get the coefficient and interior length checks.  Maps into
    ``(-1, 1)`` also get the gradient bounds.  Maps into ``R^m`` with
    ``m >= 2`` get the tangent-projection checks at :func:`tangent_points`.
    ``sweep`` adds the monotonicity and sub-mean-value checks;
    ``alternatives`` adds the two other readings of the qc condition.
    """
    planar = isinstance(f, PlanarHarmonicMap) or (isinstance(f, VectorHarmonicMap) and f.m == 2)
    u = as_vector_map(f)
    bd = geo.boundary(u, radius, samples, extrapolate)
    A, D, K = geo._area_energy(u, bd, quadrature_nodes, angular_samples)
    rep = GeometryReport(bd.L, A, bd.d, D, K, radius=bd.r, extrapolated=bd.extrapolated)
    checks = rep.checks

    checks.append(geo.isoperimetric_check(u, bd=bd, tol=tol, area_value=A))
    if math.isfinite(K):
        checks.append(geo.check("energy_area", D, 2.0 * K * A, tol, scale=max(D, 1.0)))
    else:
        rep.flags.append("not_quasiconformal")
    if planar:
        fp = f if isinstance(f, PlanarHarmonicMap) else u.to_planar()
        checks.append(geo.coefficient_length_check(fp, bd=bd, tol=tol))
        checks.extend(geo.interior_length_check(fp, bd=bd, tol=tol))
        if alternatives and not bd.extrapolated:
            rep.alternative_checks.extend(geo.energy_area_alternatives(u, bd.r, quadrature_nodes, angular_samples, tol))
    checks.extend(geo.diameter_distortion_check(u, bd=bd, tol=tol))
    checks.extend(geo.vector_origin_check(u, bd=bd, tol=tol))
    if u.m == 1 and _interval_valued(u):
        checks.extend(gradient_checks(u, geo.default_interior_grid(), tol))
    if sweep:
        checks.extend(geo.monotonicity_check(u, tol=tol))
        checks.extend(geo.subharmonicity_check(u, tol=tol))
    if tangent and u.m >= 3:
        for z0 in tangent_points():
            rep.tangent_checks.extend(interior_vector_check(u, z0, bd=bd, tol=tol))
    return rep


def analyze_quiet(f, **kw) -> GeometryReport:
    """:func:`analyze` with degenerate-Jacobian warnings turned into a flag."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", geo.DegenerateJacobian)
        rep = analyze(f, **kw)
    if any(issubclass(w.category, geo.DegenerateJacobian) for w in caught) and "degenerate_jacobian" not in rep.flags:
        rep.flags.append("degenerate_jacobian")
    return rep


__all__ = ["GeometryReport", "analyze", "analyze_quiet", "tangent_points", "Check"]
