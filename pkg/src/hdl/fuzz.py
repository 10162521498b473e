"""Seeded random harmonic maps and fuzz campaigns over every inequality check.

The generator is numpy's PCG64.  Case ``i`` of a campaign with seed ``s``
uses the map seed ``(s + i * 0x9E3779B97F4A7C15) mod 2**64``, so any failing
case can be rebuilt on its own with :func:`random_planar_map`.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import geometry as geo
from .analysis import analyze
from .report import TOLERANCE, Check
from .schwarz import envelope_check, modulus_envelope_check, x_minus, x_plus, x_plus_deriv
from .series import ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap, coefficients_from_samples

TARGETS = ("planar", "vector3", "interval", "disk")
GOLDEN = 0x9E3779B97F4A7C15
MASK = (1 << 64) - 1
DISK_MARGIN = 1e-3
INTERVAL_TERMS = 2048


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    count: int = 100
    degree: int = 16
    target: str = "planar"
    radius: float = geo.BOUNDARY_RADIUS
    tolerance: float = TOLERANCE
    conformal: bool = False
    sweep: bool = True

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if not 0.0 < self.radius < 1.0:
            raise ValueError("radius must lie in (0, 1)")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}")


def case_seed(seed: int, i: int) -> int:
    return (int(seed) + i * GOLDEN) & MASK


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & MASK))


def _coeffs(rng: np.random.Generator, degree: int, c0_scale: float = 1.0) -> np.ndarray:
    """Complex normal coefficients with variance ``k^-4`` for ``k >= 1``."""
    k = np.arange(degree + 1, dtype=float)
    sd = np.where(k > 0, 1.0 / np.maximum(k, 1.0) ** 2, c0_scale)
    return (rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)) * sd / math.sqrt(2.0)


def _blaschke(rng: np.random.Generator, degree: int):
    n = 1 + int(rng.integers(min(degree, 3)))
    zeros = 0.6 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    scale = rng.uniform(0.5, 0.95) * np.exp(2j * np.pi * rng.uniform())

    def B(z):
        w = scale * np.ones_like(z)
        for a in zeros:
            w = w * (z - a) / (1.0 - np.conj(a) * z)
        return w

    return B


def _trim(c: np.ndarray, rel: float = 1e-16) -> np.ndarray:
    big = np.nonzero(np.abs(c) > rel * np.max(np.abs(c)))[0]
    return c[: big[-1] + 1] if big.size else c[:1]


def random_planar_map(seed: int, degree: int = 16, target: str = "planar", conformal: bool = False):
    """Deterministic random map for ``target``.

    ``planar``: ``g + conj(h)`` with coefficient variance ``k^-4``; ``h`` is
    scaled by a random factor in ``[0, 1.2]`` so that folding maps occur.
    ``disk``: the same, divided by its sup modulus on the unit circle plus
    ``1e-3``.  ``interval``: ``Re F0(B)`` with ``B`` a Blaschke product of
    up to three zeros in ``|z| <= 0.6`` times a constant of modulus at most
    0.95 (a one-component :class:`VectorHarmonicMap`).  ``vector3``: three
    components with variance ``k^-4``; ``conformal`` makes ``F'(0)`` isotropic.
    """
    rng = _rng(seed)
    if target in ("planar", "disk"):
        g = _coeffs(rng, degree)
        h = _coeffs(rng, degree) * rng.uniform(0.0, 1.2)
        h[0] = 0.0
        f = PlanarHarmonicMap(ComplexSeries(g), ComplexSeries(h))
        if target == "disk":
            sup = float(np.max(np.abs(f.on_circle(1.0, 8 * 1024))))
            s = 1.0 / (sup + DISK_MARGIN)
            f = PlanarHarmonicMap(f.g * s, f.h * s)
        return f
    if target == "interval":
        B = _blaschke(rng, degree)
        F0 = 4.0 / np.pi
        r = 0.995
        c = coefficients_from_samples(lambda t: F0 * np.arctan(B(r * np.exp(1j * t))), r, 2 * INTERVAL_TERMS).coeffs.copy()
        # imaginary part of the constant is irrelevant for Re F
        c[0] = c[0].real
        return VectorHarmonicMap((ComplexSeries(_trim(c)),))
    if target == "vector3":
        F = [_coeffs(rng, degree) for _ in range(3)]
        if conformal:
            q, _ = np.linalg.qr(rng.standard_normal((3, 2)))
            lam = abs(rng.standard_normal()) + 0.1
            d1, d2 = lam * q[:, 0], lam * q[:, 1]
            for k in range(3):
                F[k][1] = d1[k] - 1j * d2[k]
        return VectorHarmonicMap(tuple(ComplexSeries(c) for c in F))
    raise ValueError(f"unknown target {target!r}")


@dataclass
class FuzzReport:
    cases_run: int = 0
    cases_passed: int = 0
    worst: dict = field(default_factory=lambda: {"check_name": None, "map_seed": None, "slack": math.inf})
    histograms: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        w = dict(self.worst)
        w["slack"] = w["slack"] if math.isfinite(w["slack"]) else None
        return {
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "worst": w,
            "histograms": self.histograms,
            "failures": self.failures,
            "flags": self.flags,
        }


def _grid(n: int, rmax: float = 0.99):
    return np.linspace(0.0, rmax, n), 2.0 * np.pi * np.arange(n) / n


def case_checks(f, config: FuzzConfig) -> tuple[list[Check], list[str]]:
    """Every check that applies to ``f`` for the configured target."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", geo.DegenerateJacobian)
        rep = analyze(
            f,
            config.radius,
            tol=config.tolerance,
            quadrature_nodes=16,
            angular_samples=128,
            sweep=config.sweep,
            alternatives=False,
        )
    checks = list(rep.all_checks)
    if config.target == "interval":
        rg, tg = _grid(32)
        checks.extend(envelope_check(f, rg, tg, config.tolerance))
    if config.target == "disk":
        rg, tg = _grid(40)
        checks.append(modulus_envelope_check(f, rg, tg, config.tolerance))
    return checks, rep.flags


def run_fuzz(config: FuzzConfig, bins: int = 10) -> FuzzReport:
    """Run ``config.count`` seeded cases; violations are recorded, never raised."""
    report = FuzzReport()
    slacks: dict[str, list[float]] = {}
    for i in range(config.count):
        ms = case_seed(config.seed, i)
        f = random_planar_map(ms, config.degree, config.target, config.conformal)
        checks, flags = case_checks(f, config)
        report.cases_run += 1
        ok = True
        for c in checks:
            slacks.setdefault(c.name, []).append(c.slack)
            if c.slack < report.worst["slack"]:
                report.worst = {"check_name": c.name, "map_seed": ms, "slack": c.slack}
            if not c.passed:
                ok = False
                report.failures.append({"map_seed": ms, **c.as_dict()})
        for fl in flags:
            report.flags[fl] = report.flags.get(fl, 0) + 1
        report.cases_passed += ok
    for name in sorted(slacks):
        v = np.asarray(slacks[name], dtype=float)
        v = v[np.isfinite(v)]
        counts, edges = np.histogram(v, bins=bins) if v.size else (np.zeros(0, int), np.zeros(0))
        report.histograms[name] = {"counts": counts.tolist(), "edges": edges.tolist()}
    return report


def emit_envelope_csv(a: float, rsteps: int, path) -> None:
    """Rows ``r, x_minus, x_plus, x_plus_deriv`` for ``r`` evenly spaced on ``[0, 1 - 1e-4]``.

    ``path`` may also be an open text file.
    """
    if rsteps < 2:
        raise ValueError("need at least two rows")
    r = np.linspace(0.0, 1.0 - 1e-4, rsteps)
    cols = (r, x_minus(r, a), x_plus(r, a), x_plus_deriv(r, a))
    if hasattr(path, "write"):
        _write_rows(path, cols)
    else:
        with open(path, "w", newline="") as fh:
            _write_rows(fh, cols)


def _write_rows(fh, cols):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["r", "x_minus", "x_plus", "x_plus_deriv"])
    for row in zip(*cols):
        w.writerow([repr(float(x)) for x in row])


__all__ = ["FuzzConfig", "FuzzReport", "random_planar_map", "run_fuzz", "emit_envelope_csv", "case_seed"]
