"""
Tests for orthoscheme parameters, classification and geometry
"""

import math

import numpy as np
import pytest

from models.orthoscheme import (
    CombinatorialType,
    FamilyParams,
    OrthoschemeParams,
    build,
    classify,
    contains,
    edge03_euclidean_distance,
    ideal_vertices,
    incidence_residuals,
    truncation_halfspaces,
)
from tests.cases import H_B_2_13, REGIME_CASES, random_params
from utils.errors import DomainError
from utils.lorentz import PointClass, inner


@pytest.mark.parametrize("h,r,theta,expected", REGIME_CASES)
def test_classify_regimes(h, r, theta, expected):
    assert classify(OrthoschemeParams(h, r, theta)) is expected


@pytest.mark.parametrize("kwargs", [
    {"h": 1.0, "r": 0.0, "theta": 0.5},
    {"h": 1.0, "r": -1.0, "theta": 0.5},
    {"h": 1.0, "r": 0.5, "theta": 0.0},
    {"h": 1.0, "r": 0.5, "theta": math.pi / 2},
    {"h": 1.0, "r": 2.0, "theta": 0.1},       # r cos(theta) >= 1
    {"h": 0.0, "r": 0.5, "theta": 0.5},
    {"h": math.nan, "r": 0.5, "theta": 0.5},
    {"h": 1.0, "r": math.inf, "theta": 0.5},
])
def test_invalid_parameters_raise_domain_error(kwargs):
    with pytest.raises(DomainError):
        OrthoschemeParams(**kwargs)


def test_lambert_threshold():
    assert FamilyParams(2.0, 1.3).lambert_threshold == pytest.approx(H_B_2_13, rel=1e-15)
    assert math.isinf(FamilyParams(1.0, 0.5).lambert_threshold)
    assert math.isinf(FamilyParams(0.5, 0.5).lambert_threshold)


def test_ideal_classification_uses_eps():
    assert classify(OrthoschemeParams(2.0, 1.0 + 5e-11, 0.5)) is CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0
    assert classify(OrthoschemeParams(2.0, 1.0 + 1e-9, 0.5)) is CombinatorialType.DOUBLE_FRUSTUM
    assert ideal_vertices(OrthoschemeParams(1.0, 1.0, 0.5)) == [0, 3]


@pytest.mark.parametrize("h", [0.2, 0.9, 1.0])
def test_low_height_with_ultraideal_v0_is_simple_frustum(h):
    params = OrthoschemeParams(h, 1.5, 1.0)
    assert classify(params) is CombinatorialType.SIMPLE_FRUSTUM
    geom = build(params)
    assert geom.classes[0] is PointClass.ULTRAIDEAL
    assert len(truncation_halfspaces(geom)) == 1


def test_threshold_continuity():
    family = FamilyParams(2.0, 1.3)
    h_b = family.lambert_threshold
    assert classify(family.at(h_b * (1 - 1e-8))) is CombinatorialType.DOUBLE_FRUSTUM
    assert classify(family.at(h_b)) is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX
    assert classify(family.at(h_b * (1 + 1e-8))) is CombinatorialType.LAMBERT_CUBE
    # the edge v0v3 touches the sphere exactly at h_b
    assert edge03_euclidean_distance(family.at(h_b)) == pytest.approx(1.0, abs=1e-14)
    assert edge03_euclidean_distance(family.at(1.1)) < 1.0
    assert edge03_euclidean_distance(family.at(2.0)) > 1.0


def test_build_invariants_on_random_grid(rng):
    for params in random_params(rng, 1000):
        res = incidence_residuals(build(params))
        assert res["lift_norm"] <= 1e-12, params
        assert res["pole_norm"] <= 1e-12, params
        assert res["incidence"] <= 1e-12, params


def test_ideal_lift_values():
    geom = build(OrthoschemeParams(2.0, 1.0, math.pi / 4))
    half = math.sqrt(2) / 2
    np.testing.assert_allclose(geom.lifts[0], [1.0, half, half, 0.0], atol=1e-15)
    assert geom.classes[0] is PointClass.IDEAL
    assert inner(geom.lifts[0], geom.lifts[0]) == pytest.approx(0.0, abs=1e-15)


def test_lambert_lifts_values():
    theta = 1.3
    geom = build(OrthoschemeParams(2.0, 2.0, theta))
    root3 = math.sqrt(3)
    np.testing.assert_allclose(
        geom.lifts[0], np.array([1, 2 * math.sin(theta), 2 * math.cos(theta), 0]) / root3, atol=1e-15
    )
    np.testing.assert_allclose(geom.lifts[3], np.array([1, 0, 0, 2]) / root3, atol=1e-15)
    assert len(truncation_halfspaces(geom)) == 2


@pytest.mark.parametrize("h,r,count", [(0.5, 0.5, 0), (1.0, 0.5, 0), (2.0, 0.5, 1), (0.5, 2.0, 1), (2.0, 1.0, 1)])
def test_truncation_halfspace_count(h, r, count):
    assert len(truncation_halfspaces(build(OrthoschemeParams(h, r, 1.3)))) == count


def test_geometry_arrays_are_read_only():
    geom = build(OrthoschemeParams(2.0, 0.5, 0.7))
    with pytest.raises(ValueError):
        geom.poles[0, 0] = 1.0


def test_horosphere_scale_multiplies_ideal_lifts():
    params = OrthoschemeParams(2.0, 1.0, 0.6)
    base = build(params)
    scaled = build(params, horosphere_scale=3.0)
    np.testing.assert_allclose(scaled.lifts[0], 3.0 * base.lifts[0])
    np.testing.assert_array_equal(scaled.lifts[1:], base.lifts[1:])
    with pytest.raises(DomainError):
        build(params, horosphere_scale=0.0)


def test_contains_centroid_and_rejects_outside():
    geom = build(OrthoschemeParams(0.5, 0.5, math.pi / 4))
    centroid = geom.vertices.mean(axis=0)
    outside = np.array([-0.1, 0.1, 0.1])
    assert contains(geom, np.vstack([centroid, outside])).tolist() == [True, False]


def test_contains_respects_truncation():
    geom = build(OrthoschemeParams(2.0, 0.5, math.pi / 4))
    # above z = 1/h the apex is cut off
    assert not contains(geom, [[0.01, 0.2, 0.6]])[0]
    assert contains(geom, [[0.01, 0.2, 0.4]])[0]
