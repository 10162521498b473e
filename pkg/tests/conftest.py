import numpy as np
import pytest

from hdl.series import ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap

IDENTITY_PLANAR = PlanarHarmonicMap(ComplexSeries([0, 1]), ComplexSeries([0]))
IDENTITY_VECTOR = VectorHarmonicMap((ComplexSeries([0, 1]), ComplexSeries([0, -1j])))


def random_series(rng, degree, decay=2.0, c0=True):
    k = np.arange(degree + 1, dtype=float)
    sd = np.where(k > 0, 1.0 / np.maximum(k, 1.0) ** decay, 1.0 if c0 else 0.0)
    return ComplexSeries((rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)) * sd)


def random_planar(rng, degree=8, hscale=0.5):
    return PlanarHarmonicMap(random_series(rng, degree), random_series(rng, degree, c0=False) * hscale)


def random_vector(rng, m=3, degree=8):
    return VectorHarmonicMap(tuple(random_series(rng, degree) for _ in range(m)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
