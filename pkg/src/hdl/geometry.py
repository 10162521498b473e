"""
Length, area, diameter, Dirichlet energy and the inequalities between them.

Conventions
-----------
Boundary quantities are taken on the circle ``|z| = r`` with ``r`` just
below 1 (``BOUNDARY_RADIUS``).  Each check is then applied to the dilated
map ``u_r(z) = u(r z)``, which is harmonic on the closed disk and whose
boundary curve is exactly the circle image at radius ``r``; interior
quantities (``g'(0)``, ``Lambda(0)``, ...) are those of ``u_r``.  With
``extrapolate=True`` the boundary quantities are instead Richardson
extrapolated to ``r = 1`` from ``EXTRAPOLATION_RADII`` and compared with the
undilated map.

Angular integrals use the trapezoid rule on equispaced samples (spectral for
smooth periodic integrands); radial integrals use Gauss-Legendre panels.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import RadiusOutOfRange
from .report import TOLERANCE, Check, check, worst
from .series import PlanarHarmonicMap, VectorHarmonicMap, as_vector_map, circle_angles, eval_circle

BOUNDARY_RADIUS = 1.0 - 1e-4
EXTRAPOLATION_RADII = (1.0 - 4e-4, 1.0 - 2e-4, 1.0 - 1e-4)
GL_NODES = 64
GL_PANELS = 8
ANGULAR_SAMPLES = 256
DIAMETER_SAMPLES = 2048
DEGENERATE_J = 1e-12
DEGENERATE_FRACTION = 0.01
EXACT_TURNING_POINTS = 256
MAX_SAMPLES = 2**20
MAX_RING_SAMPLES = 2**16
RING_CHUNK = 2**22


class DegenerateJacobian(UserWarning):
    """Grid points with ``J_u <= 1e-12`` were excluded from a qc coefficient."""


def bandwidth(u, r: float, eps: float = 1e-15) -> int:
    """Largest ``k`` with ``|k F_k| r^k`` above ``eps`` times its maximum, over components."""
    K = 0
    for F in as_vector_map(u).F:
        d = F.deriv.coeffs
        with np.errstate(divide="ignore"):
            la = np.log(np.abs(d)) + np.arange(d.size) * math.log(r)
        if not np.any(np.isfinite(la)):
            continue
        above = np.nonzero(la > la.max() + math.log(eps))[0]
        K = max(K, int(above[-1]) + 1)
    return K


def _pow2_at_least(n: int) -> int:
    return 1 << max(0, math.ceil(math.log2(max(n, 1))))


def default_samples(u, r: float) -> int:
    """Circle sample count: four per resolved Fourier mode, at least 4096.

    Series standing in for maps with boundary singularities resolve features
    of width ``1 - r`` near the circle and hit the ``2^20`` cap.
    """
    return min(max(4096, _pow2_at_least(4 * bandwidth(u, r))), MAX_SAMPLES)


def _check_radius(r, allow_one=False):
    ok = 0.0 < r <= 1.0 if allow_one else 0.0 < r < 1.0
    if not ok:
        raise RadiusOutOfRange(f"radius {r} out of range")


# -- pointwise first-order data ------------------------------------------------


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    G: float
    Fmix: float
    J: float


def _forms(Fp: np.ndarray):
    """``E, G, F, J`` from ``F'`` values of shape ``(..., m)``."""
    D1 = np.real(Fp)
    D2 = -np.imag(Fp)
    E = np.sum(D1 * D1, axis=-1)
    G = np.sum(D2 * D2, axis=-1)
    Fm = np.sum(D1 * D2, axis=-1)
    J = np.sqrt(np.maximum(E * G - Fm * Fm, 0.0))
    return E, G, Fm, J


def _stretches(E, G, Fm):
    """Largest and smallest singular values of the differential."""
    half = 0.5 * (E + G)
    rad = np.sqrt(np.maximum(0.25 * (E - G) ** 2 + Fm * Fm, 0.0))
    return np.sqrt(half + rad), np.sqrt(np.maximum(half - rad, 0.0))


def fundamental_forms(u, z: complex) -> FundamentalForms:
    E, G, Fm, J = _forms(as_vector_map(u).derivative_values(complex(z)))
    return FundamentalForms(float(E), float(G), float(Fm), float(J))


def stretch(u, z: complex) -> tuple[float, float]:
    """``(Lambda_u(z), lambda_u(z))``: operator norm and co-norm of the differential."""
    E, G, Fm, _ = _forms(as_vector_map(u).derivative_values(complex(z)))
    big, small = _stretches(E, G, Fm)
    return float(big), float(small)


# -- length, diameter ----------------------------------------------------------


def _speed_on_circle(u: VectorHarmonicMap, r: float, samples: int) -> np.ndarray:
    z = r * np.exp(1j * circle_angles(samples))
    ut = np.real(1j * z[:, None] * u.derivative_on_circle(r, samples))
    return np.sqrt(np.sum(ut * ut, axis=-1))


def _length(u, r: float, samples: int | None = None) -> float:
    u = as_vector_map(u)
    samples = samples or default_samples(u, r)
    if u.m == 1:
        L = _total_variation(u.F[0], r, samples)
        if L is not None:
            return L
    return float(2.0 * np.pi * np.mean(_speed_on_circle(u, r, samples)))


def _total_variation(F, r: float, samples: int) -> float | None:
    """Length of the real curve ``t -> Re F(r e^{it})`` as the sum of its monotone runs.

    The speed ``|u_t|`` has kinks at turning points, which limits the
    trapezoid rule to second order; summing ``|u(t_{j+1}) - u(t_j)|`` over
    the critical angles is exact.
    """
    t = circle_angles(samples)
    ut = np.real(1j * r * np.exp(1j * t) * eval_circle(F.deriv, r, samples))
    sign = ut > 0
    idx = np.nonzero(sign != np.roll(sign, -1))[0]
    if idx.size == 0:
        return None
    h = 2.0 * np.pi / samples
    if idx.size > EXACT_TURNING_POINTS:
        vals = _hermite_extrema(np.real(eval_circle(F, r, samples)), ut, idx, h)
        return float(np.sum(np.abs(np.diff(np.append(vals, vals[0])))))

    dF = F.deriv

    def speed(x):
        z = r * np.exp(1j * x)
        return np.real(1j * z * dF(z))

    crit = _bracketed_roots(speed, t[idx], t[idx] + h, ut[idx], ut[(idx + 1) % samples])
    vals = np.real(F(r * np.exp(1j * crit)))
    return float(np.sum(np.abs(np.diff(np.append(vals, vals[0])))))


def _hermite_extrema(u: np.ndarray, ut: np.ndarray, idx: np.ndarray, h: float) -> np.ndarray:
    """Turning values of the cubic Hermite interpolant on the cells ``[t_i, t_i + h]``."""
    j = (idx + 1) % u.size
    u0, u1, p0, p1 = u[idx], u[j], ut[idx] * h, ut[j] * h
    # on s in [0, 1]: c(s) = u0 + p0 s + b s^2 + c s^3
    b = 3.0 * (u1 - u0) - 2.0 * p0 - p1
    c = 2.0 * (u0 - u1) + p0 + p1
    qa, qb, qc = 3.0 * c, 2.0 * b, p0
    disc = np.sqrt(np.maximum(qb * qb - 4.0 * qa * qc, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        # the root of c'(s) where its sign flips, in the cancellation-free form
        q = -0.5 * (qb + np.copysign(disc, qb))
        r1, r2 = q / qa, qc / q
    lin = np.where(p0 != p1, p0 / (p0 - p1), 0.5)
    s = np.where(np.abs(qa) > 1e-300, np.where((r1 >= 0) & (r1 <= 1), r1, r2), lin)
    s = np.where(np.isfinite(s) & (s >= 0) & (s <= 1), s, lin)
    return u0 + s * (p0 + s * (b + s * c))


def _bracketed_roots(fn, a, b, fa, fb, xtol: float = 1e-15, maxiter: int = 60) -> np.ndarray:
    """Roots of ``fn`` in every bracket ``[a, b]`` at once (Illinois regula falsi)."""
    a, b, fa, fb = (np.array(v, dtype=float) for v in (a, b, fa, fb))
    side = np.zeros(a.size, dtype=int)
    x = np.where(fa == 0, a, b)
    live = (fa != 0) & (fb != 0)
    for _ in range(maxiter):
        if not live.any():
            break
        i = np.nonzero(live)[0]
        xi = (a[i] * fb[i] - b[i] * fa[i]) / (fb[i] - fa[i])
        xi = np.where(np.isfinite(xi) & (xi > a[i]) & (xi < b[i]), xi, 0.5 * (a[i] + b[i]))
        fx = fn(xi)
        x[i] = xi
        left = np.sign(fx) == np.sign(fa[i])
        # bracket moves right: [x, b]; halve the stale end value when the same side repeats
        ra, rb = i[left], i[~left]
        a[ra], fa[ra] = xi[left], fx[left]
        fb[ra] *= np.where(side[ra] == 1, 0.5, 1.0)
        side[ra] = 1
        b[rb], fb[rb] = xi[~left], fx[~left]
        fa[rb] *= np.where(side[rb] == -1, 0.5, 1.0)
        side[rb] = -1
        done = (fx == 0) | (b[i] - a[i] <= xtol * np.maximum(1.0, np.abs(xi)))
        live[i[done]] = False
    return x


def length(u, r: float, N: int | None = None) -> float:
    """Length of ``t -> u(r e^{it})`` by the trapezoid rule on ``N`` samples."""
    _check_radius(r)
    if N is not None and N < 64:
        raise ValueError("need at least 64 samples")
    return _length(u, r, N)


def _pairwise_max(P: np.ndarray, coarse: int = 256, candidates: int = 16) -> tuple[float, int, int]:
    """Farthest pair among the rows of ``P`` (closed-curve samples, in order).

    All pairs of a ``coarse`` subsample are compared first; the best
    ``candidates`` pairs are then searched at full resolution within one
    coarse step of each end.
    """
    n = P.shape[0]
    step = max(1, n // coarse)
    C = P[::step] - P.mean(axis=0)
    sq = np.sum(C * C, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (C @ C.T)
    top = np.argpartition(d2.ravel(), -candidates)[-candidates:] if d2.size > candidates else np.arange(d2.size)
    offsets = np.arange(-step, step + 1)
    best, bi, bj = -1.0, 0, 0
    for k in top:
        a, b = divmod(int(k), C.shape[0])
        ia = (a * step + offsets) % n
        jb = (b * step + offsets) % n
        D = np.sum((P[ia][:, None, :] - P[jb][None, :, :]) ** 2, axis=-1)
        x, y = divmod(int(np.argmax(D)), jb.size)
        if D[x, y] > best:
            best, bi, bj = float(D[x, y]), int(ia[x]), int(jb[y])
    return math.sqrt(best), bi, bj


def _circle_jets(u: VectorHarmonicMap, r: float, x: np.ndarray):
    """``u``, ``u_t`` and ``u_tt`` of ``t -> u(r e^{it})`` at the angles ``x``; shapes ``(len(x), m)``."""
    n = u.degree + 1
    C = np.zeros((u.m, n), dtype=complex)
    for k, F in enumerate(u.F):
        C[k, : F.coeffs.size] = F.coeffs
    k = np.arange(n)
    zk = np.exp(np.outer(np.asarray(x, dtype=float), 1j * k) + k * math.log(r))
    return np.real(zk @ C.T), np.real(zk @ (1j * k * C).T), np.real(zk @ (-(k * k) * C).T)


def _diameter(u, r: float, samples: int = DIAMETER_SAMPLES) -> float:
    u = as_vector_map(u)
    P = u.on_circle(r, samples)
    t = circle_angles(samples)
    h = 2.0 * np.pi / samples
    if u.m == 1:
        vals = P[:, 0]
        hi = _refine_extreme(u, r, t[int(np.argmax(vals))], h)
        lo = _refine_extreme(u, r, t[int(np.argmin(vals))], h)
        return float(max(hi, vals.max()) - min(lo, vals.min()))
    coarse, i, j = _pairwise_max(P)
    return max(coarse, _refine_pair(u, r, t[i], t[j], h))


def _refine_pair(u, r, s0, t0, h, steps: int = 8) -> float:
    """Newton ascent of ``|u(s) - u(t)|^2`` on the box ``|s - s0|, |t - t0| <= h``."""
    x = np.array([s0, t0])
    lo, hi = x - h, x + h
    best = 0.0
    for _ in range(steps):
        p, v, a = _circle_jets(u, r, x)
        diff = p[0] - p[1]
        D = float(diff @ diff)
        if D < best:
            break
        best = D
        grad = 2.0 * np.array([diff @ v[0], -(diff @ v[1])])
        H = 2.0 * np.array([[v[0] @ v[0] + diff @ a[0], -(v[0] @ v[1])], [-(v[0] @ v[1]), v[1] @ v[1] - diff @ a[1]]])
        try:
            step = -np.linalg.solve(H, grad)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)) or grad @ step <= 0:
            break
        x = np.clip(x + step, lo, hi)
        if np.max(np.abs(step)) < 1e-14:
            break
    return math.sqrt(best)


def _refine_extreme(u, r, t0, h, steps: int = 8) -> float:
    """Value of ``Re F`` at the turning point near ``t0`` (Newton on ``u_t``)."""
    x = t0
    p, v, a = _circle_jets(u, r, [x])
    val = float(p[0, 0])
    for _ in range(steps):
        if a[0, 0] == 0.0:
            break
        x_new = min(max(x - v[0, 0] / a[0, 0], t0 - h), t0 + h)
        p2, v2, a2 = _circle_jets(u, r, [x_new])
        # keep the iterate only if it moves the value outward
        if (float(p2[0, 0]) - val) * -np.sign(a[0, 0]) < 0:
            break
        done = abs(x_new - x) < 1e-14
        x, p, v, a, val = x_new, p2, v2, a2, float(p2[0, 0])
        if done:
            break
    return val


def diameter(u, r: float, N: int = DIAMETER_SAMPLES) -> float:
    """Diameter of ``u(|z| <= r)``; attained on the circle ``|z| = r``."""
    _check_radius(r)
    return _diameter(u, r, N)


# -- area and energy -----------------------------------------------------------


@functools.lru_cache(maxsize=16)
def _gauss_legendre(nodes: int):
    return np.polynomial.legendre.leggauss(nodes)


def _radial_nodes(r: float, nodes: int, panels: int):
    x, w = _gauss_legendre(nodes)
    edges = np.linspace(0.0, r, panels + 1)
    rho, wt = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        rho.append(0.5 * (a + b) + 0.5 * (b - a) * x)
        wt.append(0.5 * (b - a) * w)
    return np.concatenate(rho), np.concatenate(wt)


def _ring_samples(u: VectorHarmonicMap, rho: float, Nt: int) -> int:
    return int(min(max(Nt, _pow2_at_least(4 * bandwidth(u, rho))), MAX_RING_SAMPLES))


def _ring_forms(u: VectorHarmonicMap, r: float, Nr: int, Nt: int, panels: int):
    """Yield ``(c, E, G, F, J)`` for blocks of quadrature rings.

    ``c`` holds the ring weights ``2 pi rho w``; the form arrays have shape
    ``(rings, samples)`` so that a ring's contribution is ``c * mean``.  Rings
    sharing a sample count (fixed per panel from its outer edge) go through
    one two-dimensional FFT, in chunks bounded by ``RING_CHUNK`` entries.
    """
    rho, wt = _radial_nodes(r, Nr, panels)
    c = 2.0 * np.pi * rho * wt
    edges = np.linspace(0.0, r, panels + 1)[1:]
    plan = [(max(bandwidth(u, e), 1), _ring_samples(u, e, Nt)) for e in edges]
    p = 0
    while p < panels:
        # merge consecutive panels that share a sample count
        q = p
        while q + 1 < panels and plan[q + 1][1] == plan[p][1]:
            q += 1
        # modes beyond the outer edge's bandwidth are below rounding on these panels
        K, n = plan[q]
        derivs = [f.deriv.coeffs[: K + 1] for f in u.F]
        width = max(max(d.size for d in derivs), n)
        rows = max(1, RING_CHUNK // width)
        block = np.arange(p * Nr, (q + 1) * Nr)
        for start in range(0, block.size, rows):
            sel = block[start : start + rows]
            Fp = np.empty((sel.size, n, u.m), dtype=complex)
            for j, d in enumerate(derivs):
                coef = d[None, :] * np.power(rho[sel, None], np.arange(d.size)[None, :])
                Fp[:, :, j] = np.fft.ifft(_fold(coef, n), axis=1) * n
            yield (c[sel], *_forms(Fp))
        p = q + 1


def _fold(coef: np.ndarray, n: int) -> np.ndarray:
    m = -(-coef.shape[1] // n) * n
    buf = np.zeros((coef.shape[0], m), dtype=complex)
    buf[:, : coef.shape[1]] = coef
    return buf.reshape(coef.shape[0], -1, n).sum(axis=1)


def _ring_integrals(u, r, Nr, Nt, panels, integrands):
    """``int_0^r int_0^{2 pi} integrand(forms) rho drho dtheta`` for each integrand."""
    u = as_vector_map(u)
    totals = np.zeros(len(integrands))
    for c, *forms in _ring_forms(u, r, Nr, Nt, panels):
        for k, fn in enumerate(integrands):
            totals[k] += float(c @ np.mean(fn(*forms), axis=-1))
    return totals


def area(u, r: float = 1.0, Nr: int = GL_NODES, Nt: int = ANGULAR_SAMPLES, panels: int = GL_PANELS) -> float:
    """Area (with multiplicity) ``int J_u`` over ``|z| < r``."""
    _check_radius(r, allow_one=True)
    return float(_ring_integrals(u, r, Nr, Nt, panels, [lambda E, G, F, J: J])[0])


def dirichlet_quadrature(u, r: float = 1.0, Nr: int = GL_NODES, Nt: int = ANGULAR_SAMPLES, panels: int = GL_PANELS) -> float:
    """``int (|D1 u|^2 + |D2 u|^2)`` over ``|z| < r`` by quadrature."""
    _check_radius(r, allow_one=True)
    return float(_ring_integrals(u, r, Nr, Nt, panels, [lambda E, G, F, J: E + G])[0])


def dirichlet_parseval(u, r: float = 1.0) -> float:
    """``pi sum_k k |F_hat(k)|^2 r^(2k)``."""
    total = 0.0
    for F in as_vector_map(u).F:
        k = np.arange(F.coeffs.size)
        total += float(np.sum(k * np.abs(F.coeffs) ** 2 * np.power(float(r), 2 * k)))
    return np.pi * total


def quadrature_grid(r: float, Nr: int = 16, Nt: int = 64, panels: int = GL_PANELS) -> np.ndarray:
    rho, _ = _radial_nodes(r, Nr, panels)
    return (rho[:, None] * np.exp(1j * circle_angles(Nt))[None, :]).ravel()


def qc_coefficient(u, grid=None) -> float:
    """``sup (E + G) / (2 J_u)`` over the grid.

    Points with ``J_u <= 1e-12`` are skipped with a :class:`DegenerateJacobian`
    warning; if more than 1% of the grid is degenerate the map is not
    quasiconformal and ``inf`` is returned.
    """
    if grid is None:
        grid = quadrature_grid(1.0 - 1e-6)
    Fp = as_vector_map(u).derivative_values(np.asarray(grid, dtype=complex).ravel())
    E, G, _, J = _forms(Fp)
    bad = J <= DEGENERATE_J
    if np.any(bad):
        warnings.warn(f"{int(bad.sum())} grid points with degenerate Jacobian skipped", DegenerateJacobian, stacklevel=2)
        if bad.mean() > DEGENERATE_FRACTION:
            return math.inf
    return float(np.max((E + G)[~bad] / (2.0 * J[~bad])))


def kstar_from_K(K: float) -> float:
    """Planar relation between the linear dilatation and ``K_*``."""
    return (K * K + 1.0) / (2.0 * K)


# -- boundary data and the inequality checks -----------------------------------


def _richardson(values):
    r1 = [2.0 * values[i + 1] - values[i] for i in range(len(values) - 1)]
    return (4.0 * r1[1] - r1[0]) / 3.0


@dataclass
class Boundary:
    """Boundary length and diameter plus the map whose interior data go with them."""

    interior: VectorHarmonicMap
    L: float
    d: float
    r: float
    extrapolated: bool


def boundary(u, r: float = BOUNDARY_RADIUS, samples: int | None = None, extrapolate: bool = False) -> Boundary:
    u = as_vector_map(u)
    if extrapolate:
        Ls = [_length(u, rr, samples) for rr in EXTRAPOLATION_RADII]
        ds = [_diameter(u, rr) for rr in EXTRAPOLATION_RADII]
        return Boundary(u, _richardson(Ls), _richardson(ds), 1.0, True)
    _check_radius(r, allow_one=True)
    return Boundary(u.dilate(r), _length(u, r, samples), _diameter(u, r), r, False)


def _bd(u, r, samples, extrapolate, bd):
    return bd if bd is not None else boundary(u, r, samples, extrapolate)


def _planar(u) -> PlanarHarmonicMap:
    return u if isinstance(u, PlanarHarmonicMap) else as_vector_map(u).to_planar()


def _interior_planar(f, bd: Boundary) -> PlanarHarmonicMap:
    f = _planar(f)
    return f if bd.extrapolated else f.dilate(bd.r)


def _area_energy(u, bd: Boundary, Nr=GL_NODES, Nt=ANGULAR_SAMPLES):
    """``A`` and ``D[u]`` over the same nodes, plus the node-wise sup of ``K_*``."""
    u = as_vector_map(u)
    rr = EXTRAPOLATION_RADII if bd.extrapolated else (bd.r,)
    As, Ds, K = [], [], 0.0
    degenerate = 0
    count = 0
    for radius in rr:
        A = D = 0.0
        for c, E, G, _, J in _ring_forms(u, radius, Nr, Nt, GL_PANELS):
            A += float(c @ np.mean(J, axis=-1))
            D += float(c @ np.mean(E + G, axis=-1))
            ok = J > DEGENERATE_J
            degenerate += int((~ok).sum())
            count += J.size
            if np.any(ok):
                K = max(K, float(np.max((E + G)[ok] / (2.0 * J[ok]))))
        As.append(A)
        Ds.append(D)
    A = _richardson(As) if bd.extrapolated else As[0]
    D = _richardson(Ds) if bd.extrapolated else Ds[0]
    if count and degenerate / count > DEGENERATE_FRACTION:
        K = math.inf
    return A, D, K


def isoperimetric_check(u, r: float = BOUNDARY_RADIUS, *, samples=None, extrapolate=False, bd=None, tol=TOLERANCE, area_value=None) -> Check:
    """``4 pi A <= L^2``; the tolerance is relative to ``L^2``."""
    bd = _bd(u, r, samples, extrapolate, bd)
    A = area_value if area_value is not None else _area_energy(u, bd)[0]
    return check("isoperimetric", 4.0 * np.pi * A, bd.L**2, tol, scale=max(bd.L**2, 1.0))


def energy_area_check(u, kbar: float | None = None, r: float = BOUNDARY_RADIUS, *, extrapolate=False, bd=None, tol=TOLERANCE) -> Check | None:
    """``D[u] <= 2 K A`` for a ``K``-quasiconformal map.

    ``kbar`` defaults to the sup of ``K_*`` over the quadrature nodes.  Maps
    with degenerate Jacobian are not quasiconformal: a
    :class:`DegenerateJacobian` warning is issued and ``None`` returned.
    """
    if bd is None:
        bd = Boundary(as_vector_map(u), math.nan, math.nan, 1.0, True) if extrapolate else Boundary(as_vector_map(u), math.nan, math.nan, r, False)
    A, D, K = _area_energy(u, bd)
    k = K if kbar is None else kbar
    if not math.isfinite(k):
        warnings.warn("map is not quasiconformal (degenerate Jacobian)", DegenerateJacobian, stacklevel=2)
        return None
    return check("energy_area", D, 2.0 * k * A, tol, scale=max(D, 1.0))


def energy_area_alternatives(u, r: float = BOUNDARY_RADIUS, Nr: int = GL_NODES, Nt: int = ANGULAR_SAMPLES, tol=TOLERANCE) -> list[Check]:
    """Two other readings of the qc condition, reported for comparison.

    ``energy_area_EF``: ``E + F <= 2 K J`` integrated.
    ``energy_area_appendix``: ``E + G <= (K + 1/K) J`` with ``K`` the
    sup of the singular value ratio.
    """
    u = as_vector_map(u)
    A = EF = D = 0.0
    k_ef = k_lin = 0.0
    for c, E, G, Fm, J in _ring_forms(u, r, Nr, Nt, GL_PANELS):
        big, small = _stretches(E, G, Fm)
        A += float(c @ np.mean(J, axis=-1))
        EF += float(c @ np.mean(E + Fm, axis=-1))
        D += float(c @ np.mean(E + G, axis=-1))
        ok = J > DEGENERATE_J
        if np.any(ok):
            k_ef = max(k_ef, float(np.max((E + Fm)[ok] / (2.0 * J[ok]))))
            k_lin = max(k_lin, float(np.max(big[ok] / small[ok])))
    out = []
    if k_ef > 0 and A > 0:
        out.append(check("energy_area_EF", EF, 2.0 * k_ef * A, tol, scale=max(abs(EF), 1.0)))
    if k_lin > 0 and A > 0:
        out.append(check("energy_area_appendix", D, (k_lin + 1.0 / k_lin) * A, tol, scale=max(D, 1.0)))
    return out


def coefficient_length_check(f, r: float = BOUNDARY_RADIUS, *, samples=None, extrapolate=False, bd=None, tol=TOLERANCE) -> Check:
    """``2 pi k |g_k| <= L`` for every coefficient of the analytic part."""
    bd = _bd(f, r, samples, extrapolate, bd)
    g = _interior_planar(f, bd).g.coeffs
    k = np.arange(g.size)
    lhs = 2.0 * np.pi * k * np.abs(g)
    i = int(np.argmax(lhs))
    return check("coefficient_length", lhs[i], bd.L, tol, where=complex(i))


def default_interior_grid() -> np.ndarray:
    """The origin plus 8 directions at radii 0.25, 0.5, 0.75 (25 points)."""
    ang = np.exp(2j * np.pi * np.arange(8) / 8)
    return np.concatenate([[0.0], *(rad * ang for rad in (0.25, 0.5, 0.75))])


def interior_length_check(f, zgrid=None, r: float = BOUNDARY_RADIUS, *, samples=None, extrapolate=False, bd=None, tol=TOLERANCE) -> list[Check]:
    """Interior length bounds for a planar map.

    ``2 pi (1-|z|^2) |g'(z)| <= L``, ``2 pi (1-|z|^2) lambda_f(z) <= L`` on
    ``zgrid`` and, at the origin, ``pi (Lambda + lambda) <= L`` and
    ``2 pi max(|g'|, |h'|) <= L``.
    """
    bd = _bd(f, r, samples, extrapolate, bd)
    fi = _interior_planar(f, bd)
    z = default_interior_grid() if zgrid is None else np.asarray(zgrid, dtype=complex).ravel()
    gp = np.abs(fi.g.deriv(z))
    hp = np.abs(fi.h.deriv(z))
    w = 2.0 * np.pi * (1.0 - np.abs(z) ** 2)
    g0, h0 = abs(complex(fi.g.deriv(0.0))), abs(complex(fi.h.deriv(0.0)))
    return [
        worst("interior_g_prime", w * gp, bd.L, tol, z),
        worst("interior_lambda", w * np.abs(gp - hp), bd.L, tol, z),
        check("origin_Lambda_plus_lambda", np.pi * ((g0 + h0) + abs(g0 - h0)), bd.L, tol),
        check("origin_max_gh", 2.0 * np.pi * max(g0, h0), bd.L, tol),
    ]


def diameter_distortion_check(f, r: float = BOUNDARY_RADIUS, *, samples=None, extrapolate=False, bd=None, tol=TOLERANCE) -> list[Check]:
    """``pi Lambda(0) <= 2 d`` and ``2 d <= L``."""
    bd = _bd(f, r, samples, extrapolate, bd)
    Lam, _ = stretch(bd.interior, 0.0)
    return [
        check("diameter_Lambda", np.pi * Lam, 2.0 * bd.d, tol),
        check("diameter_length", 2.0 * bd.d, bd.L, tol, scale=max(bd.L, 1.0)),
    ]


def conformal_at(u, z0: complex, tol: float = 1e-8) -> bool:
    """Conformality of the differential at ``z0`` (or vanishing differential)."""
    D1, D2 = _frame(u, z0)
    n1, n2 = np.linalg.norm(D1), np.linalg.norm(D2)
    if max(n1, n2) <= 1e-12:
        return True
    return bool(abs(n1 - n2) <= tol * (n1 + n2) and abs(D1 @ D2) <= tol * n1 * n2)


def _frame(u, z0):
    Fp = as_vector_map(u).derivative_values(complex(z0))
    return np.real(Fp), -np.imag(Fp)


def vector_origin_check(u, r: float = BOUNDARY_RADIUS, *, samples=None, extrapolate=False, bd=None, tol=TOLERANCE, conformal_tol: float = 1e-8) -> list[Check]:
    """``pi |F'(0)| <= L``, ``2 pi |D_z u(0)| <= L`` and, if conformal at 0, ``2 pi Lambda_u(0) <= L``."""
    bd = _bd(u, r, samples, extrapolate, bd)
    ui = bd.interior
    Fp0 = ui.derivative_values(0.0)
    nF = float(np.linalg.norm(Fp0))
    # D_z u = (u_x - i u_y) / 2 = F' / 2 componentwise in C^m
    nDz = float(np.linalg.norm(0.5 * Fp0))
    out = [
        check("vector_origin_F", np.pi * nF, bd.L, tol),
        check("vector_origin_Dz", 2.0 * np.pi * nDz, bd.L, tol),
    ]
    if conformal_at(ui, 0.0, conformal_tol):
        Lam, _ = stretch(ui, 0.0)
        out.append(check("vector_origin_conformal", 2.0 * np.pi * Lam, bd.L, tol))
    return out


def generalized_length(u, rgrid, samples: int | None = None) -> float:
    """``sup_r L(r)`` over the grid."""
    return max(_length(u, float(rr), samples) for rr in rgrid)


def monotonicity_check(u, rgrid=None, *, samples: int | None = None, tol=TOLERANCE) -> list[Check]:
    """``L(r)`` and ``d(r)`` are nondecreasing along ``rgrid``."""
    rs = np.arange(1, 10) / 10.0 if rgrid is None else np.asarray(rgrid, dtype=float)
    Ls = np.array([_length(u, rr, samples) for rr in rs])
    ds = np.array([_diameter(u, rr) for rr in rs])
    return [
        worst("monotone_length", Ls[:-1], Ls[1:], tol, rs[1:]),
        worst("monotone_diameter", ds[:-1], ds[1:], tol, rs[1:]),
    ]


def default_subharmonic_grid(n: int = 20) -> np.ndarray:
    """Points with modulus at most 0.5, spiralling out from the origin."""
    k = np.arange(n)
    return 0.5 * np.sqrt(k / n) * np.exp(2.399963 * 1j * k)


def subharmonicity_check(u, zgrid=None, rho=(0.1, 0.25, 0.45), samples: int = 256, tol=TOLERANCE) -> list[Check]:
    """Sub-mean-value property of ``|u|`` and ``|u_t|`` on circles around grid points."""
    u = as_vector_map(u)
    z = default_subharmonic_grid() if zgrid is None else np.asarray(zgrid, dtype=complex).ravel()
    rhos = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(np.abs(z)[:, None] + rhos[None, :] >= 1.0):
        raise RadiusOutOfRange("circles must stay inside the disk")
    ring = np.exp(1j * circle_angles(samples))

    def speed(w):
        ut = np.real(1j * w[..., None] * u.derivative_values(w))
        return np.linalg.norm(ut, axis=-1)

    def modulus(w):
        return np.linalg.norm(u(w), axis=-1)

    out = []
    for name, fn in (("subharmonic_modulus", modulus), ("subharmonic_speed", speed)):
        centre = fn(z)
        lhs, rhs, pts = [], [], []
        for rr in rhos:
            mean = np.mean(fn(z[:, None] + rr * ring[None, :]), axis=1)
            lhs.append(centre)
            rhs.append(mean)
            pts.append(z)
        out.append(worst(name, np.concatenate(lhs), np.concatenate(rhs), tol, np.concatenate(pts)))
    return out
