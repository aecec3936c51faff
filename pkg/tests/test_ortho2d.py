"""
Tests for the planar truncated triangle
"""

import math

import numpy as np
import pytest

from models.ortho2d import (
    Params2D,
    Shape2D,
    alpha0,
    area,
    area_montecarlo,
    classify2d,
    contains2d,
    max_area,
)
from utils.errors import DomainError, RegimeError


def _areas(r, hs):
    return np.array([area(Params2D(h=h, r=r)).area for h in hs])


@pytest.mark.parametrize("h,r,shape", [
    (0.5, 0.5, Shape2D.TRIANGLE),
    (1.0, 0.5, Shape2D.IDEAL_TRIANGLE),
    (0.5, 1.0, Shape2D.IDEAL_TRIANGLE),
    (2.0, 0.5, Shape2D.QUADRILATERAL),
    (0.5, 2.0, Shape2D.QUADRILATERAL),
    (1.05, 1.5, Shape2D.RIGHT_ANGLED_PENTAGON),
    (2.0, 1.5, Shape2D.POLAR_QUADRILATERAL),
])
def test_classify2d(h, r, shape):
    assert classify2d(Params2D(h=h, r=r)) is shape
    assert len(area(Params2D(h=h, r=r)).angles) == {
        Shape2D.TRIANGLE: 3, Shape2D.IDEAL_TRIANGLE: 3, Shape2D.QUADRILATERAL: 4,
        Shape2D.RIGHT_ANGLED_PENTAGON: 5, Shape2D.POLAR_QUADRILATERAL: 4,
    }[shape]


def test_small_r_area_rises_then_falls():
    r = 0.5
    rising = _areas(r, np.linspace(0.1, 1.0, 40))
    falling = _areas(r, np.linspace(1.0, 20.0, 40))
    assert np.all(np.diff(rising) > 0)
    assert np.all(np.diff(falling) < 0)
    assert area(Params2D(h=1.0, r=r)).area == pytest.approx(math.pi / 6, abs=1e-14)


def test_ideal_r_plateau_from_one():
    assert np.all(np.diff(_areas(1.0, np.linspace(0.1, 1.0, 20))) > 0)
    np.testing.assert_allclose(_areas(1.0, [1.0, 1.5, 3.0, 100.0]), math.pi / 2, atol=1e-12)


def test_large_r_plateau_then_decrease():
    r = 2.0
    h_b = Params2D(h=1.0, r=r).lambert_threshold
    assert h_b == pytest.approx(2.0 / math.sqrt(3.0), rel=1e-15)
    np.testing.assert_allclose(_areas(r, np.linspace(1.0, h_b, 15)), math.pi / 2, atol=1e-12)
    after = _areas(r, np.linspace(h_b + 1e-3, 10.0, 30))
    assert np.all(np.diff(after) < 0)
    assert np.all(after < math.pi / 2)
    assert np.all(np.diff(_areas(r, np.linspace(0.1, 1.0, 20))) > 0)


@pytest.mark.parametrize("r", [1.0, 1.5, 2.0])
def test_plateau_is_flat(r):
    h_hi = min(Params2D(h=1.0, r=r).lambert_threshold, 50.0)
    hs = np.linspace(1.0, h_hi, 102)[1:-1]
    assert np.max(np.abs(_areas(r, hs) - math.pi / 2)) <= 1e-12


def test_pentagon_is_right_angled():
    report = area(Params2D(h=1.05, r=1.5))
    np.testing.assert_allclose(report.angles, math.pi / 2, atol=1e-12)


@pytest.mark.parametrize("r,expected", [(0.2, math.asin(0.2)), (0.5, math.pi / 6), (0.9, math.asin(0.9))])
def test_max_area_below_one(r, expected):
    best = max_area(r)
    assert best.unique
    assert best.h_lo == best.h_hi == 1.0
    assert best.value == pytest.approx(expected, abs=1e-14)


def test_max_area_plateaus():
    ideal = max_area(1.0)
    assert not ideal.unique and ideal.h_lo == 1.0 and math.isinf(ideal.h_hi)
    ultra = max_area(2.0)
    assert not ultra.unique
    assert ultra.h_hi == pytest.approx(2.0 / math.sqrt(3.0))
    assert ultra.value == math.pi / 2


def test_alpha0():
    assert alpha0(Params2D(h=1.0, r=0.5)) == pytest.approx(math.acos(0.5))
    assert alpha0(Params2D(h=2.0, r=1.0)) == pytest.approx(0.0, abs=1e-7)
    with pytest.raises(RegimeError):
        alpha0(Params2D(h=1.0, r=2.0))


@pytest.mark.parametrize("h,r", [(0.5, 0.5), (1.5, 0.5), (1.05, 1.5), (2.0, 1.5)])
def test_montecarlo_area_matches_defect(h, r):
    params = Params2D(h=h, r=r)
    value, stderr = area_montecarlo(params, samples=1_000_000, seed=11)
    assert abs(value - area(params).area) <= 4 * stderr


def test_montecarlo_area_rejects_ideal():
    with pytest.raises(RegimeError):
        area_montecarlo(Params2D(h=1.0, r=0.5), samples=100, seed=1)


def test_contains2d():
    params = Params2D(h=0.5, r=0.5)
    inside = contains2d(params, [[0.1, 0.1], [0.4, 0.4], [-0.1, 0.1]])
    assert inside.tolist() == [True, False, False]


@pytest.mark.parametrize("h,r", [(0.0, 0.5), (-1.0, 0.5), (1.0, math.nan), (1.0, math.inf)])
def test_params2d_domain(h, r):
    with pytest.raises(DomainError):
        Params2D(h=h, r=r)


def test_max_area_domain():
    with pytest.raises(DomainError):
        max_area(-1.0)
