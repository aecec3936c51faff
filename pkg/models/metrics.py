"""
Metrics Module
Edge lengths and dihedral angles of R(h, r, theta), closed-form and direct
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from config.config import GEOMETRY_CONFIG
from models.orthoscheme import (
    CombinatorialType,
    OrthoschemeGeometry,
    OrthoschemeParams,
    build,
    classify,
)
from utils.errors import RegimeError
from utils.lorentz import (
    PointClass,
    acosh_stable,
    dihedral_angle,
    dist_horo_horo,
    dist_horo_plane,
    dist_horo_point,
    dist_plane_plane,
    dist_point_plane,
    dist_point_point,
)

logger = logging.getLogger(__name__)

EPS_CLASS = GEOMETRY_CONFIG["eps_class"]
CLAMP_TOL = GEOMETRY_CONFIG["clamp_tol"]

EDGES = ("01", "02", "03", "12", "13", "23")
ANGLES = ("01", "02", "03", "12", "13", "23")


class EdgeKind(str, Enum):
    """How an edge length is measured"""

    POINT_POINT = "PointPoint"
    POINT_PLANE = "PointPlane"
    HORO_SIGNED = "HoroSigned"
    PLANE_PLANE = "PlanePlane"
    POLAR_POLAR_INTERSECTION = "PolarPolarIntersection"


@dataclass(frozen=True)
class EdgeLength:
    value: float
    kind: EdgeKind

    def to_dict(self) -> dict:
        return {"value": self.value, "kind": self.kind.value}


@dataclass(frozen=True)
class MetricData:
    """Edge lengths l_ij and dihedral angles theta_ij between the faces opposite v_i and v_j"""

    params: OrthoschemeParams
    regime: CombinatorialType
    lengths: Dict[str, EdgeLength]
    angles: Dict[str, float]

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "lengths": {k: v.to_dict() for k, v in self.lengths.items()},
            "angles": dict(self.angles),
        }


# ---------------------------------------------------------------------------
# Shared closed-form pieces, numpy-friendly so schlafli can vectorize them
# ---------------------------------------------------------------------------

def _threshold(r: float) -> float:
    return r / math.sqrt((r - 1.0) * (r + 1.0))


def radicand(h, r):
    """
    S(h) = (1 - r^2) h^2 + r^2

    For r > 1 it is evaluated as (r^2 - 1)(h_b - h)(h_b + h), which vanishes
    exactly at h_b = r / sqrt(r^2 - 1) and keeps its sign just below it.
    """
    if r > 1.0:
        h_b = _threshold(r)
        return (r - 1.0) * (r + 1.0) * (h_b - h) * (h_b + h)
    return (1.0 - r) * (1.0 + r) * h * h + r * r


def normalizer_sq(h, r, theta):
    """N(h)^2 = (1 - r^2 cos^2) h^2 + r^2 cos^2"""
    rc2 = (r * math.cos(theta)) ** 2
    return (1.0 - rc2) * h * h + rc2


def lambert_radicand(h, r):
    """(r^2 - 1) h^2 - r^2, positive exactly on the Lambert range"""
    if r > 1.0:
        h_b = _threshold(r)
        return (r - 1.0) * (r + 1.0) * (h - h_b) * (h + h_b)
    return (r - 1.0) * (r + 1.0) * h * h - r * r


def l03_values(h, r, theta, regime: CombinatorialType, horosphere_scale: float = 1.0):
    """Closed-form l03 for h > 1 inside one regime (scalar or array h)"""
    hm1 = np.sqrt((h - 1.0) * (h + 1.0))
    if regime is CombinatorialType.SIMPLE_FRUSTUM:
        return np.log((np.sqrt(radicand(h, r)) + 1.0) / (math.sqrt((1.0 - r) * (1.0 + r)) * hm1))
    if regime is CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0:
        return np.log(2.0 * horosphere_scale / hm1)
    if regime is CombinatorialType.DOUBLE_FRUSTUM:
        return np.log((np.sqrt(radicand(h, r)) + 1.0) / (math.sqrt((r - 1.0) * (r + 1.0)) * hm1))
    if regime is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX:
        return np.zeros_like(np.asarray(h, dtype=float))
    if regime is CombinatorialType.LAMBERT_CUBE:
        q = np.sqrt(lambert_radicand(h, r))
        return np.log((h * math.sin(theta) + q * math.cos(theta)) / np.sqrt(normalizer_sq(h, r, theta)))
    raise RegimeError(f"no closed form for l03 in regime {regime.value}")


def l01_value(r: float, theta: float, horosphere_scale: float = 1.0) -> Tuple[float, EdgeKind]:
    """Closed-form l01, independent of h"""
    a = math.sqrt(1.0 - (r * math.cos(theta)) ** 2)
    if abs(r - 1.0) <= EPS_CLASS:
        return math.log(2.0 * math.sin(theta) * horosphere_scale), EdgeKind.HORO_SIGNED
    if r < 1.0:
        return acosh_stable(a / math.sqrt((1.0 - r) * (1.0 + r))), EdgeKind.POINT_POINT
    return math.asinh(a / math.sqrt((r - 1.0) * (r + 1.0))), EdgeKind.POINT_PLANE


def _clamped_arccos(x: float, label: str) -> float:
    if abs(x) > 1.0 + CLAMP_TOL:
        raise RegimeError(f"{label}: arccos argument {x!r} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, x)))


def _require_analytic(params: OrthoschemeParams) -> CombinatorialType:
    if params.h <= 1.0 + EPS_CLASS:
        raise RegimeError(
            f"closed forms cover h > 1 only (h = {params.h!r}); use measure() for h <= 1"
        )
    return classify(params)


_L03_KIND = {
    CombinatorialType.SIMPLE_FRUSTUM: EdgeKind.POINT_PLANE,
    CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0: EdgeKind.HORO_SIGNED,
    CombinatorialType.DOUBLE_FRUSTUM: EdgeKind.PLANE_PLANE,
    CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX: EdgeKind.PLANE_PLANE,
    CombinatorialType.LAMBERT_CUBE: EdgeKind.POLAR_POLAR_INTERSECTION,
}


def edge_l03(params: OrthoschemeParams, horosphere_scale: float = 1.0) -> EdgeLength:
    """
    Length of the edge v0v3 for h > 1

    Args:
        params: Orthoscheme parameters with h > 1
        horosphere_scale: Rescaling of the horosphere at an ideal v0

    Returns:
        EdgeLength with value and kind
    """
    regime = _require_analytic(params)
    h, r, theta = params.h, params.r, params.theta
    if regime is CombinatorialType.SIMPLE_FRUSTUM and radicand(h, r) <= 0:
        raise RegimeError(f"(1 - r^2) h^2 + r^2 must be positive (h={h}, r={r})")
    if regime is CombinatorialType.LAMBERT_CUBE and lambert_radicand(h, r) < 0:
        raise RegimeError(f"(r^2 - 1) h^2 - r^2 negative in Lambert regime (h={h}, r={r})")
    value = float(l03_values(h, r, theta, regime, horosphere_scale))
    return EdgeLength(value=value, kind=_L03_KIND[regime])


def edge_l01(params: OrthoschemeParams, horosphere_scale: float = 1.0) -> EdgeLength:
    """Length of the edge v0v1 for h > 1 (constant in h)"""
    _require_analytic(params)
    value, kind = l01_value(params.r, params.theta, horosphere_scale)
    return EdgeLength(value=value, kind=kind)


def angles(params: OrthoschemeParams) -> Dict[str, float]:
    """
    Dihedral angles for h > 1

    theta_01 = theta, theta_02 = theta_03 = theta_13 = pi/2, theta_12 and
    theta_23 from the closed forms; theta_12 = 0 on the ideal-vertex boundary.
    """
    regime = _require_analytic(params)
    h, r, theta = params.h, params.r, params.theta
    n = math.sqrt(normalizer_sq(h, r, theta))
    s, c = math.sin(theta), math.cos(theta)

    if regime is CombinatorialType.LAMBERT_CUBE:
        theta12 = _clamped_arccos(1.0 / (math.sqrt((r - 1.0) * (r + 1.0)) * math.sqrt((h - 1.0) * (h + 1.0))), "theta12")
    elif regime is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX:
        theta12 = 0.0
    else:
        theta12 = _clamped_arccos(h * s / n, "theta12")
    theta23 = _clamped_arccos(r * c / n, "theta23")

    half_pi = math.pi / 2
    return {
        "01": theta,
        "02": half_pi,
        "03": half_pi,
        "12": theta12,
        "13": half_pi,
        "23": theta23,
    }


def _edge_from_lifts(geom: OrthoschemeGeometry, i: int, j: int) -> EdgeLength:
    u, v = geom.lifts[i], geom.lifts[j]
    ci, cj = geom.classes[i], geom.classes[j]
    interior, ideal, ultra = PointClass.INTERIOR, PointClass.IDEAL, PointClass.ULTRAIDEAL

    if ci is interior and cj is interior:
        return EdgeLength(dist_point_point(u, v), EdgeKind.POINT_POINT)
    if {ci, cj} == {interior, ultra}:
        point, plane = (u, v) if ci is interior else (v, u)
        return EdgeLength(dist_point_plane(point, plane), EdgeKind.POINT_PLANE)
    if ci is ideal and cj is ideal:
        return EdgeLength(dist_horo_horo(u, v), EdgeKind.HORO_SIGNED)
    if ideal in (ci, cj):
        horo, other = (u, v) if ci is ideal else (v, u)
        other_cls = cj if ci is ideal else ci
        if other_cls is ultra:
            return EdgeLength(dist_horo_plane(horo, other), EdgeKind.HORO_SIGNED)
        return EdgeLength(dist_horo_point(horo, other), EdgeKind.HORO_SIGNED)

    # both ultraideal: only v0 v3 with r > 1, h > 1
    if geom.regime is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX:
        return EdgeLength(0.0, EdgeKind.PLANE_PLANE)
    if geom.regime is CombinatorialType.LAMBERT_CUBE:
        return EdgeLength(dist_plane_plane(geom.poles[1], geom.poles[2]), EdgeKind.POLAR_POLAR_INTERSECTION)
    return EdgeLength(dist_plane_plane(u, v), EdgeKind.PLANE_PLANE)


def measure(params: OrthoschemeParams, horosphere_scale: float = 1.0) -> MetricData:
    """
    Edge lengths and dihedral angles evaluated directly on the Lorentz lifts

    Valid for every h > 0. In the Lambert regime the edge v0v3 is the
    distance between the faces opposite v1 and v2, and the angle at v1v2 is
    the angle between the truncation planes of v0 and v3.

    Args:
        params: Orthoscheme parameters
        horosphere_scale: Rescaling of horospheres at ideal vertices

    Returns:
        MetricData
    """
    geom = build(params, horosphere_scale=horosphere_scale)
    lengths = {}
    for key in EDGES:
        i, j = int(key[0]), int(key[1])
        lengths[key] = _edge_from_lifts(geom, i, j)

    measured = {}
    for key in ANGLES:
        i, j = int(key[0]), int(key[1])
        if key == "12" and geom.regime is CombinatorialType.LAMBERT_CUBE:
            measured[key] = dihedral_angle(geom.lifts[0], geom.lifts[3])
        elif key == "12" and geom.regime is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX:
            measured[key] = 0.0
        else:
            measured[key] = dihedral_angle(geom.poles[i], geom.poles[j])

    return MetricData(params=params, regime=geom.regime, lengths=lengths, angles=measured)


def closed_form(params: OrthoschemeParams, horosphere_scale: float = 1.0) -> MetricData:
    """Closed-form counterpart of measure() for the two h-dependent edges, h > 1"""
    regime = _require_analytic(params)
    return MetricData(
        params=params,
        regime=regime,
        lengths={
            "01": edge_l01(params, horosphere_scale),
            "03": edge_l03(params, horosphere_scale),
        },
        angles=angles(params),
    )
