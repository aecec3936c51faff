"""
Orthoscheme Module
Parameters, combinatorial classification and Lorentz geometry of R(h, r, theta)
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from config.config import GEOMETRY_CONFIG
from utils.errors import DomainError, RegimeError
from utils.lorentz import PointClass, inner, klein_lift

logger = logging.getLogger(__name__)

EPS_CLASS = GEOMETRY_CONFIG["eps_class"]


class CombinatorialType(str, Enum):
    """Combinatorial type of the truncated orthoscheme"""

    ORDINARY_ORTHOSCHEME = "OrdinaryOrthoscheme"
    SIMPLE_FRUSTUM = "SimpleFrustum"
    SIMPLE_FRUSTUM_IDEAL_V0 = "SimpleFrustumIdealV0"
    DOUBLE_FRUSTUM = "DoubleFrustum"
    DOUBLE_FRUSTUM_IDEAL_VERTEX = "DoubleFrustumIdealVertex"
    LAMBERT_CUBE = "LambertCube"


def _check_family(r: float, theta: float) -> None:
    if not (math.isfinite(r) and math.isfinite(theta)):
        raise DomainError(f"parameters must be finite (r={r!r}, theta={theta!r})")
    if r <= 0:
        raise DomainError(f"r must be positive, got {r!r}")
    if not 0 < theta < math.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta!r}")
    if r * math.cos(theta) >= 1:
        raise DomainError(f"v1 must be interior: r*cos(theta) = {r * math.cos(theta):.6g} >= 1")


@dataclass(frozen=True)
class FamilyParams:
    """One-parameter family R(., r, theta) indexed by the height h"""

    r: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "theta", float(self.theta))
        _check_family(self.r, self.theta)

    def at(self, h: float) -> "OrthoschemeParams":
        return OrthoschemeParams(h=h, r=self.r, theta=self.theta)

    @property
    def r_class(self) -> PointClass:
        if abs(self.r - 1.0) <= EPS_CLASS:
            return PointClass.IDEAL
        return PointClass.INTERIOR if self.r < 1 else PointClass.ULTRAIDEAL

    @property
    def lambert_threshold(self) -> float:
        """h_b = r / sqrt(r^2 - 1) for r > 1, infinity otherwise"""
        if self.r_class is not PointClass.ULTRAIDEAL:
            return math.inf
        return self.r / math.sqrt((self.r - 1.0) * (self.r + 1.0))


@dataclass(frozen=True)
class OrthoschemeParams:
    """Parameters (h, r, theta) of the orthoscheme R(h, r, theta)"""

    h: float
    r: float
    theta: float

    def __post_init__(self):
        for name in ("h", "r", "theta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not math.isfinite(self.h) or self.h <= 0:
            raise DomainError(f"h must be positive and finite, got {self.h!r}")
        _check_family(self.r, self.theta)

    @property
    def family(self) -> FamilyParams:
        return FamilyParams(self.r, self.theta)

    def with_h(self, h: float) -> "OrthoschemeParams":
        return OrthoschemeParams(h=h, r=self.r, theta=self.theta)

    def to_dict(self) -> Dict[str, float]:
        return {"h": self.h, "r": self.r, "theta": self.theta}


def h_class(h: float) -> PointClass:
    if abs(h - 1.0) <= EPS_CLASS:
        return PointClass.IDEAL
    return PointClass.INTERIOR if h < 1 else PointClass.ULTRAIDEAL


def vertex_classes(params: OrthoschemeParams) -> Tuple[PointClass, PointClass, PointClass, PointClass]:
    """Classes of v0..v3; v1 and v2 are always interior"""
    return (params.family.r_class, PointClass.INTERIOR, PointClass.INTERIOR, h_class(params.h))


def ideal_vertices(params: OrthoschemeParams) -> List[int]:
    return [i for i, cls in enumerate(vertex_classes(params)) if cls is PointClass.IDEAL]


def classify(params: OrthoschemeParams) -> CombinatorialType:
    """
    Combinatorial type of R(h, r, theta)

    Ideal cases are decided with eps_class: |r-1|, |h-1| and |h-h_b| within
    eps_class count as equalities.
    """
    family = params.family
    h = params.h
    r_cls = family.r_class

    if h <= 1.0 + EPS_CLASS:
        # h <= 1, r > 1: v0 is ultraideal and truncated, so the type is SimpleFrustum
        if r_cls is PointClass.ULTRAIDEAL:
            return CombinatorialType.SIMPLE_FRUSTUM
        return CombinatorialType.ORDINARY_ORTHOSCHEME

    if r_cls is PointClass.INTERIOR:
        return CombinatorialType.SIMPLE_FRUSTUM
    if r_cls is PointClass.IDEAL:
        return CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0

    h_b = family.lambert_threshold
    if abs(h - h_b) <= EPS_CLASS:
        return CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX
    if h < h_b:
        return CombinatorialType.DOUBLE_FRUSTUM
    return CombinatorialType.LAMBERT_CUBE


def edge03_euclidean_distance(params: OrthoschemeParams) -> float:
    """Euclidean distance from the origin to the line through v0 and v3"""
    h, r = params.h, params.r
    return h * r / math.hypot(h, r)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class OrthoschemeGeometry:
    """Vertices, lifts and face poles of one orthoscheme"""

    params: OrthoschemeParams
    regime: CombinatorialType
    vertices: np.ndarray          # (4, 3) Klein coordinates of v0..v3
    lifts: np.ndarray             # (4, 4) normalized lifts of v0..v3
    poles: np.ndarray             # (4, 4) outward unit poles of the faces opposite v0..v3
    classes: Tuple[PointClass, ...] = field(default_factory=tuple)
    horosphere_scale: float = 1.0


def _normalizer_sq(h: float, r: float, theta: float) -> float:
    rc2 = (r * math.cos(theta)) ** 2
    return (1.0 - rc2) * h * h + rc2


def build(params: OrthoschemeParams, horosphere_scale: float = 1.0) -> OrthoschemeGeometry:
    """
    Build vertices, normalized lifts and outward unit poles

    Args:
        params: Orthoscheme parameters
        horosphere_scale: Factor applied to the light-like lifts of ideal vertices

    Returns:
        OrthoschemeGeometry
    """
    if not horosphere_scale > 0:
        raise DomainError(f"horosphere scale must be positive, got {horosphere_scale!r}")

    h, r, theta = params.h, params.r, params.theta
    s, c = math.sin(theta), math.cos(theta)
    classes = vertex_classes(params)

    vertices = np.array([
        [r * s, r * c, 0.0],
        [0.0, r * c, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, h],
    ])
    lifts = np.array([klein_lift(p, cls) for p, cls in zip(vertices, classes)])
    for i, cls in enumerate(classes):
        if cls is PointClass.IDEAL:
            lifts[i] *= horosphere_scale

    n_sq = _normalizer_sq(h, r, theta)
    if n_sq <= 0:
        raise RegimeError(f"face opposite v2 has no space-like pole (N^2 = {n_sq:.3e})")
    n = math.sqrt(n_sq)
    poles = np.array([
        [0.0, -1.0, 0.0, 0.0],
        [0.0, c, -s, 0.0],
        [h * r * c / n, 0.0, h / n, r * c / n],
        [0.0, 0.0, 0.0, -1.0],
    ])

    regime = classify(params)
    logger.debug(f"Built {regime.value} for h={h}, r={r}, theta={theta}")
    return OrthoschemeGeometry(
        params=params,
        regime=regime,
        vertices=_readonly(vertices),
        lifts=_readonly(lifts),
        poles=_readonly(poles),
        classes=classes,
        horosphere_scale=horosphere_scale,
    )


def truncation_halfspaces(geom: OrthoschemeGeometry) -> List[np.ndarray]:
    """Lifts of the ultraideal vertices; the polar half-space is <x, v> <= 0"""
    return [geom.lifts[i] for i, cls in enumerate(geom.classes) if cls is PointClass.ULTRAIDEAL]


def halfspace_system(geom: OrthoschemeGeometry) -> np.ndarray:
    """All bounding Lorentz normals w with the polytope given by <(1, x), w> <= 0"""
    return np.vstack([geom.poles] + truncation_halfspaces(geom))


def contains(geom: OrthoschemeGeometry, points) -> np.ndarray:
    """
    Membership of Klein-model points in the truncated polytope

    Args:
        geom: Built geometry
        points: (n, 3) array

    Returns:
        Boolean mask of length n
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    homog = np.hstack([np.ones((pts.shape[0], 1)), pts])
    mask = np.einsum("ij,ij->i", pts, pts) < 1.0
    for w in halfspace_system(geom):
        mask &= inner(homog, w) <= 0.0
    return mask


def incidence_residuals(geom: OrthoschemeGeometry) -> Dict[str, float]:
    """Largest deviations from the lift, pole and incidence identities"""
    expected = {PointClass.INTERIOR: -1.0, PointClass.ULTRAIDEAL: 1.0, PointClass.IDEAL: 0.0}
    lift_norm = max(abs(inner(v, v) - expected[cls]) for v, cls in zip(geom.lifts, geom.classes))
    pole_norm = max(abs(inner(w, w) - 1.0) for w in geom.poles)
    incidence = max(
        abs(inner(geom.lifts[i], geom.poles[j]))
        for i in range(4) for j in range(4) if i != j
    )
    return {"lift_norm": lift_norm, "pole_norm": pole_norm, "incidence": incidence}
