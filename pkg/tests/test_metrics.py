"""
Tests for edge lengths and dihedral angles
"""

import math

import numpy as np
import pytest

from models.metrics import (
    EdgeKind,
    angles,
    edge_l01,
    edge_l03,
    measure,
)
from models.orthoscheme import CombinatorialType, FamilyParams, OrthoschemeParams, classify
from tests.cases import ANALYTIC_CASES, params_by_regime
from utils.errors import RegimeError


def test_l03_simple_frustum_values():
    length = edge_l03(OrthoschemeParams(2.0, 0.5, math.pi / 4))
    assert length.kind is EdgeKind.POINT_PLANE
    assert length.value == pytest.approx(math.log((math.sqrt(3.25) + 1.0) / 1.5), rel=1e-14)
    assert length.value == pytest.approx(0.625145, abs=1e-6)


def test_l01_values():
    length = edge_l01(OrthoschemeParams(2.0, 0.5, math.pi / 4))
    assert length.kind is EdgeKind.POINT_POINT
    assert length.value == pytest.approx(math.acosh(math.sqrt(7.0 / 6.0)), rel=1e-14)
    assert length.value == pytest.approx(0.3977, abs=1e-4)


def test_theta23_values():
    a = angles(OrthoschemeParams(2.0, 0.5, math.pi / 4))
    assert a["23"] == pytest.approx(math.acos(0.5 * math.cos(math.pi / 4) / math.sqrt(3.625)), rel=1e-14)
    assert a["01"] == pytest.approx(math.pi / 4)
    assert a["02"] == a["03"] == a["13"] == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("h,r,theta", ANALYTIC_CASES)
def test_closed_forms_match_direct_evaluation(h, r, theta):
    params = OrthoschemeParams(h, r, theta)
    direct = measure(params)
    closed = angles(params)
    assert edge_l03(params).value == pytest.approx(direct.lengths["03"].value, abs=1e-10)
    assert edge_l01(params).value == pytest.approx(direct.lengths["01"].value, abs=1e-10)
    assert edge_l03(params).kind is direct.lengths["03"].kind
    for key in ("01", "02", "03", "12", "13", "23"):
        assert closed[key] == pytest.approx(direct.angles[key], abs=1e-10), key


@pytest.fixture(scope="module")
def regime_pool():
    return params_by_regime(np.random.default_rng(2024), 1000)


@pytest.mark.parametrize("regime", [
    CombinatorialType.SIMPLE_FRUSTUM,
    CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0,
    CombinatorialType.DOUBLE_FRUSTUM,
    CombinatorialType.LAMBERT_CUBE,
], ids=lambda t: t.value)
def test_closed_forms_match_direct_evaluation_on_random_points(regime_pool, regime):
    pool = regime_pool[regime]
    assert len(pool) == 1000
    mismatches = []
    for params in pool:
        assert classify(params) is regime
        direct = measure(params)
        closed = angles(params)
        diffs = {
            "l03": edge_l03(params).value - direct.lengths["03"].value,
            "l01": edge_l01(params).value - direct.lengths["01"].value,
        }
        diffs.update({f"theta{key}": closed[key] - direct.angles[key] for key in closed})
        worst = max(diffs, key=lambda k: abs(diffs[k]))
        if abs(diffs[worst]) > 1e-10:
            mismatches.append((params.h, params.r, params.theta, worst, diffs[worst]))
    assert not mismatches, mismatches[:5]


@pytest.mark.parametrize("h,r,theta,kind", [
    (2.0, 0.5, 0.7, EdgeKind.POINT_PLANE),
    (2.0, 1.0, 0.7, EdgeKind.HORO_SIGNED),
    (1.1, 2.0, 1.3, EdgeKind.PLANE_PLANE),
    (2.0, 2.0, 1.3, EdgeKind.POLAR_POLAR_INTERSECTION),
])
def test_l03_kind_by_regime(h, r, theta, kind):
    assert edge_l03(OrthoschemeParams(h, r, theta)).kind is kind


def test_l03_vanishes_at_boundary_with_square_root_rate():
    family = FamilyParams(2.0, 1.3)
    h_b = family.lambert_threshold
    near = edge_l03(family.at(h_b - 1e-8)).value
    far = edge_l03(family.at(h_b - 1e-6)).value
    assert 0 < near < 1e-3
    assert far / near == pytest.approx(10.0, rel=0.05)
    assert edge_l03(family.at(h_b)).value == 0.0


def test_lambert_theta12_vanishes_at_boundary():
    family = FamilyParams(2.0, 1.3)
    h_b = family.lambert_threshold
    near = angles(family.at(h_b + 1e-8))["12"]
    far = angles(family.at(h_b + 1e-6))["12"]
    assert 0 < near < 1e-3
    assert far / near == pytest.approx(10.0, rel=0.05)
    assert angles(family.at(h_b))["12"] == 0.0


def test_lambert_l03_positive():
    family = FamilyParams(1.5, 1.0)
    for h in (1.35, 2.0, 10.0, 1e3):
        assert edge_l03(family.at(h)).value > 0


@pytest.mark.parametrize("scale", [0.5, 2.0, 10.0])
def test_horosphere_rescale_shifts_ideal_edges(scale):
    params = OrthoschemeParams(2.0, 1.0, 0.9)
    shift = math.log(scale)
    assert edge_l03(params, scale).value - edge_l03(params).value == pytest.approx(shift, abs=1e-14)
    assert edge_l01(params, scale).value - edge_l01(params).value == pytest.approx(shift, abs=1e-14)
    direct = measure(params, horosphere_scale=scale)
    assert direct.lengths["03"].value == pytest.approx(edge_l03(params, scale).value, abs=1e-12)
    assert direct.lengths["01"].value == pytest.approx(edge_l01(params, scale).value, abs=1e-12)


def test_closed_forms_require_h_above_one():
    with pytest.raises(RegimeError):
        edge_l03(OrthoschemeParams(0.8, 0.5, 0.7))
    with pytest.raises(RegimeError):
        angles(OrthoschemeParams(1.0, 0.5, 0.7))


def test_measure_ordinary_orthoscheme():
    data = measure(OrthoschemeParams(0.5, 0.5, math.pi / 4))
    assert all(length.kind is EdgeKind.POINT_POINT for length in data.lengths.values())
    assert all(length.value > 0 for length in data.lengths.values())
    assert all(0 < a < math.pi for a in data.angles.values())


def test_measure_with_ideal_apex():
    data = measure(OrthoschemeParams(1.0, 0.5, math.pi / 4))
    for key in ("03", "13", "23"):
        assert data.lengths[key].kind is EdgeKind.HORO_SIGNED
    assert data.lengths["01"].kind is EdgeKind.POINT_POINT


def test_measure_simple_frustum_at_v0():
    data = measure(OrthoschemeParams(0.5, 2.0, 1.3))
    assert data.lengths["01"].kind is EdgeKind.POINT_PLANE
    assert data.lengths["03"].kind is EdgeKind.POINT_PLANE
    assert data.to_dict()["regime"] == "SimpleFrustum"
