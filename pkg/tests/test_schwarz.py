import math

import numpy as np
import pytest

from hdl.errors import NotBoundaryFixed, OutsideDisk, OutsideInterval, RadiusOutOfRange, RangeViolation
from hdl.extremal import strip_base, strip_conformal
from hdl.fuzz import case_seed, random_planar_map
from hdl.schwarz import (
    boundary_bound,
    boundary_derivative_check,
    envelope_check,
    gradient_bound_interior,
    gradient_bound_origin,
    gradient_checks,
    interior_envelope,
    khavinson_bound,
    modulus_envelope_check,
    params,
    x_minus,
    x_minus_deriv,
    x_plus,
    x_plus_deriv,
)
from hdl.series import ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap, disk_automorphism

RS = np.linspace(0.0, 0.95, 20)
AS = np.linspace(-0.95, 0.95, 20)


def test_params_examples():
    p = params(0.0)
    assert (p.s, p.e) == pytest.approx((1.0, 1.0)) and p.alpha == pytest.approx(math.pi / 2)
    assert params(0.5).s == pytest.approx(1 + math.sqrt(2), rel=1e-14)
    assert params(-0.5).s == pytest.approx(math.sqrt(2) - 1, rel=1e-14)
    assert params(0.5).s * params(-0.5).s == pytest.approx(1.0, rel=1e-14)
    for a in AS:
        p = params(a)
        assert p.s * p.e == pytest.approx(1.0, rel=1e-13) and p.s > 0 and 0 < p.alpha < math.pi


def test_params_rejects_outside_interval():
    with pytest.raises(OutsideInterval):
        params(1.0)


def test_envelopes_at_origin_equal_a():
    for a in AS:
        assert x_plus(0.0, a) == pytest.approx(a, abs=1e-14)
        assert x_minus(0.0, a) == pytest.approx(a, abs=1e-14)


def test_x_plus_classical_form():
    assert x_plus(0.5, 0.0) == pytest.approx(4 / math.pi * math.atan(0.5), abs=1e-14)
    assert x_plus(0.5, 0.0) == pytest.approx(0.590334, abs=1e-6)
    assert np.allclose(x_plus(RS, 0.0), 4 / np.pi * np.arctan(RS), atol=1e-14)


def test_envelopes_monotone_and_sandwich():
    for a in (-0.5, 0.0, 0.5):
        assert x_plus(0.3, a) < x_plus(0.6, a)
    for a in AS:
        assert np.all(np.diff(x_plus(RS, a)) > 0)
        assert np.all(x_minus(RS, a) <= a + 1e-15) and np.all(x_plus(RS, a) >= a - 1e-15)
        assert np.all(x_plus(RS[1:], a) < 1) and np.all(x_minus(RS[1:], a) > -1)


def test_reflection_identity():
    for a in AS:
        assert np.max(np.abs(x_minus(RS, a) + x_plus(RS, -a))) < 1e-14


def test_radius_guard():
    with pytest.raises(RadiusOutOfRange):
        x_plus(1.0, 0.0)
    with pytest.raises(RadiusOutOfRange):
        x_minus_deriv(-0.1, 0.0)


def test_derivatives_at_origin():
    for a in AS:
        alpha = params(a).alpha
        assert x_plus_deriv(0.0, a) == pytest.approx(4 / math.pi * math.sin(alpha), abs=1e-12)
        assert x_minus_deriv(0.0, a) == pytest.approx(-x_plus_deriv(0.0, a), abs=1e-14)


def test_derivatives_match_finite_differences():
    h = 1e-5
    fd = (x_plus(0.3 + h, 0.4) - x_plus(0.3 - h, 0.4)) / (2 * h)
    assert abs(fd - x_plus_deriv(0.3, 0.4)) < 1e-6
    for r in (0.1, 0.5, 0.8):
        for a in (-0.6, 0.0, 0.7):
            fdp = (x_plus(r + h, a) - x_plus(r - h, a)) / (2 * h)
            fdm = (x_minus(r + h, a) - x_minus(r - h, a)) / (2 * h)
            assert abs(fdp - x_plus_deriv(r, a)) < 1e-6
            assert abs(fdm - x_minus_deriv(r, a)) < 1e-6


def test_gradient_bound_origin_values():
    assert gradient_bound_origin(0.0) == pytest.approx(4 / math.pi)
    assert gradient_bound_origin(0.5) == pytest.approx(2 * math.sqrt(2) / math.pi, rel=1e-14)
    assert gradient_bound_origin(0.999999) < 1e-5
    assert gradient_bound_origin(-0.999999) < 1e-5


def test_gradient_bound_interior_values():
    for b in (-0.4, 0.0, 0.6):
        assert gradient_bound_interior(0, b) == pytest.approx(gradient_bound_origin(abs(b)))
    assert gradient_bound_interior(0.5, 0.0) == pytest.approx(16 / (3 * math.pi), rel=1e-14)
    for z in (0.2, 0.5j, -0.3 + 0.4j):
        assert gradient_bound_interior(z, 0.0) == pytest.approx(khavinson_bound(z), rel=1e-14)
    with pytest.raises(OutsideDisk):
        gradient_bound_interior(1.0, 0.0)


def test_khavinson_values():
    assert khavinson_bound(0) == pytest.approx(4 / math.pi)
    assert khavinson_bound(0.6) == pytest.approx(4 / math.pi / 0.64, rel=1e-15)
    assert khavinson_bound(0.6) == pytest.approx(1.98944, abs=1e-5)
    with pytest.raises(OutsideDisk):
        khavinson_bound(1j)


@pytest.mark.parametrize("z0", [0.0, 0.3, 0.6, 0.9, 0.6j, -0.3 - 0.4j])
def test_khavinson_attained_by_strip_map(z0):
    F = strip_conformal(z0, 0.0, 4096)
    assert abs(F(z0).real) < 1e-10
    assert abs(abs(F.deriv(z0)) - khavinson_bound(z0)) < 1e-8 * khavinson_bound(z0)


@pytest.mark.parametrize("z0,b", [(0.0, 0.5), (0.4, -0.3), (0.5j, 0.7), (-0.2 + 0.2j, 0.1)])
def test_interior_gradient_attained(z0, b):
    F = strip_conformal(z0, b, 4096)
    assert abs(F(z0).real - b) < 1e-10
    assert abs(abs(F.deriv(z0)) - gradient_bound_interior(z0, b)) < 1e-8


def test_boundary_bound_values():
    assert boundary_bound(0.0) == pytest.approx(2 / math.pi)
    assert abs(x_plus_deriv(1 - 1e-6, 0.3) - boundary_bound(0.3)) < 1e-4
    vals = [boundary_bound(a) for a in AS]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    assert boundary_bound(0.3 + 0.4j) == boundary_bound(0.5)


def test_interior_envelope_is_x_plus_of_pseudo_distance(rng):
    for _ in range(30):
        a = 0.8 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        z = 0.8 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        b = rng.uniform(-0.9, 0.9)
        w = abs(disk_automorphism(a)(z))
        assert interior_envelope(z, a, b) == pytest.approx(float(x_plus(w, abs(b))), abs=1e-13)


def test_envelope_equality_on_real_axis():
    F0 = strip_base(4096)
    r = np.arange(1, 10) / 10
    assert np.max(np.abs(F0(r).real - x_plus(r, 0.0))) < 1e-8
    upper, lower = envelope_check(F0, r, [0.0])
    assert upper.passed and abs(upper.slack) < 1e-8
    assert lower.passed


def test_envelope_constant_map():
    upper, lower = envelope_check(ComplexSeries([0.3]), RS, np.linspace(0, 6, 8))
    assert upper.slack >= 0 and lower.slack >= 0


def test_envelope_random_interval_maps():
    rgrid = np.linspace(0, 0.97, 32)
    tgrid = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    for i in range(20):
        h = random_planar_map(case_seed(3, i), 8, "interval")
        assert all(c.slack >= -1e-9 for c in envelope_check(h, rgrid, tgrid))


def test_envelope_rejects_range_violation():
    with pytest.raises(RangeViolation):
        envelope_check(ComplexSeries([0, 2.0]), [0.9], [0.0])


def test_modulus_envelope():
    ident = PlanarHarmonicMap(ComplexSeries([0, 1]), ComplexSeries([0]))
    rep = modulus_envelope_check(ident, RS, np.linspace(0, 6, 8))
    assert rep.passed and rep.slack >= 0
    const = PlanarHarmonicMap(ComplexSeries([0.2 + 0.3j]), ComplexSeries([0]))
    assert modulus_envelope_check(const, RS, [0.0, 1.0]).slack >= 0
    rg = np.linspace(0, 0.97, 40)
    tg = np.linspace(0, 2 * np.pi, 40, endpoint=False)
    for i in range(10):
        f = random_planar_map(case_seed(5, i), 8, "disk")
        assert modulus_envelope_check(f, rg, tg).slack >= -1e-9


def test_gradient_checks_on_extremal_and_random_maps():
    checks = gradient_checks(strip_base(4096), 0.5 * np.exp(1j * np.linspace(0, 6, 10)))
    assert all(c.passed for c in checks)
    assert abs(checks[0].slack) < 1e-12
    for i in range(20):
        h = random_planar_map(case_seed(11, i), 8, "interval")
        assert all(c.passed for c in gradient_checks(h, 0.7 * np.exp(1j * np.linspace(0, 6, 10))))


def test_boundary_derivative_examples():
    ident = PlanarHarmonicMap(ComplexSeries([0, 1]), ComplexSeries([0]))
    rep = boundary_derivative_check(ident, 1)
    assert rep.passed and rep.Lambda == pytest.approx(1.0, abs=1e-7)
    sq = PlanarHarmonicMap(ComplexSeries([0, 0, 1]), ComplexSeries([0]))
    rep = boundary_derivative_check(sq, 1)
    assert rep.radial_derivative == pytest.approx(2.0, abs=1e-6) and rep.passed
    # T(z) = (z - 0.5) / (1 - 0.5 z)
    k = np.arange(1, 200)
    c = np.concatenate([[-0.5], 0.75 * 0.5 ** (k - 1)])
    mob = PlanarHarmonicMap(ComplexSeries(c), ComplexSeries([0]))
    rep = boundary_derivative_check(mob, 1)
    assert rep.Lambda == pytest.approx(3.0, rel=1e-6)
    assert rep.bound == pytest.approx(2 / (params(0.5).s * math.pi))
    assert rep.bound == pytest.approx(0.2637, abs=1e-4) and rep.passed


def test_boundary_derivative_requires_boundary_fixed():
    half = PlanarHarmonicMap(ComplexSeries([0, 0.5]), ComplexSeries([0]))
    with pytest.raises(NotBoundaryFixed):
        boundary_derivative_check(half, 1)


def test_vector_real_part_accepted():
    h = VectorHarmonicMap((strip_base(256),))
    assert all(c.passed for c in envelope_check(h, [0.5], [0.0, 1.0]))
