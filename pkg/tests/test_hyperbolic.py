import math

import numpy as np
import pytest

from hdl.errors import OutsideDisk, OutsideInterval, OutsideStrip, RangeViolation
from hdl.extremal import strip_base
from hdl.hyperbolic import (
    StripPoint,
    disk_density,
    schwarz_pick_check,
    strip_density,
    strip_distance,
    strip_distance_quadrature,
)
from hdl.fuzz import case_seed, random_planar_map
from hdl.series import ComplexSeries


def test_strip_density_values():
    assert strip_density(0) == pytest.approx(math.pi / 2)
    assert strip_density(7.3j) == pytest.approx(math.pi / 2)
    assert strip_density(StripPoint(0.5)) == pytest.approx(math.pi / math.sqrt(2))


def test_strip_density_guard():
    with pytest.raises(OutsideStrip):
        strip_density(1.0)
    with pytest.raises(OutsideStrip):
        StripPoint(-1.0 + 1e-13)


def test_strip_density_bounded_below(rng):
    for u in rng.uniform(-0.999, 0.999, 100):
        assert strip_density(u + 1j * rng.normal()) >= math.pi / 2


def test_strip_distance_values(rng):
    assert strip_distance(0.3, 0.3) == 0
    assert strip_distance(0, 0.5) == pytest.approx(math.log(1 + math.sqrt(2)), abs=1e-14)
    for a, b in rng.uniform(-0.99, 0.99, (20, 2)):
        d = strip_distance(a, b)
        assert d == pytest.approx(strip_distance(b, a), abs=1e-14)
        assert d == pytest.approx(strip_distance(-a, -b), abs=1e-14)


def test_strip_distance_matches_quadrature(rng):
    assert strip_distance_quadrature(0.2, 0.2) == 0
    assert abs(strip_distance_quadrature(0, 0.5) - strip_distance(0, 0.5)) < 1e-10
    assert abs(strip_distance_quadrature(-0.3, 0.7) - strip_distance(-0.3, 0.7)) < 1e-10
    for a, b in rng.uniform(-0.95, 0.95, (50, 2)):
        assert abs(strip_distance_quadrature(a, b) - strip_distance(a, b)) < 1e-10


def test_strip_distance_rejects_outside_points():
    with pytest.raises(OutsideInterval):
        strip_distance(0, 1)


def test_disk_density_values():
    assert disk_density(0) == 2
    assert disk_density(0.5) == pytest.approx(8 / 3)
    assert disk_density(0.3 + 0.4j) == pytest.approx(disk_density(0.5))
    with pytest.raises(OutsideDisk):
        disk_density(1)


def _grid(n=10, rmax=0.95):
    r = np.linspace(0, rmax, n)
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


def test_schwarz_pick_equality_for_conformal_strip_map():
    rep = schwarz_pick_check(strip_base(512), _grid())
    assert abs(rep.min_slack) < 1e-8
    assert rep.passed


def test_schwarz_pick_constant_map():
    z = _grid()
    rep = schwarz_pick_check(ComplexSeries([0.0]), z)
    assert np.allclose(rep.slacks, 2 / (1 - np.abs(z) ** 2))


def test_schwarz_pick_composition_with_square():
    F0 = strip_base(512)
    # F0(z^2): coefficient 2k is F0's coefficient k
    c = np.zeros(1025, dtype=complex)
    c[::2] = F0.coeffs
    rep = schwarz_pick_check(ComplexSeries(c), _grid())
    assert rep.passed and rep.min_slack >= 0


def test_schwarz_pick_holomorphic_self_maps():
    # strip map composed with random Blaschke-type self-maps of the disk
    for i in range(10):
        omega = random_planar_map(case_seed(7, i), 8, "interval").F[0]
        assert schwarz_pick_check(omega, _grid()).min_slack >= -1e-9


def test_schwarz_pick_range_violation():
    with pytest.raises(RangeViolation):
        schwarz_pick_check(ComplexSeries([0, 2.0]), [0.9])
