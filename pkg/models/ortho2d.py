"""
Ortho2D Module
Hyperbolic area of the truncated right triangle P0 P1 P2 and its maximum over h
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from config.config import GEOMETRY_CONFIG, get_default_seed
from utils.errors import DegeneratePolytopeError, DomainError, RegimeError
from utils.lorentz import PointClass

logger = logging.getLogger(__name__)

EPS_CLASS = GEOMETRY_CONFIG["eps_class"]
CLAMP_TOL = GEOMETRY_CONFIG["clamp_tol"]


class Shape2D(str, Enum):
    TRIANGLE = "Triangle"
    IDEAL_TRIANGLE = "IdealTriangle"
    QUADRILATERAL = "Quadrilateral"
    RIGHT_ANGLED_PENTAGON = "RightAngledPentagon"
    POLAR_QUADRILATERAL = "PolarQuadrilateral"


@dataclass(frozen=True)
class Params2D:
    """P0 = (r, 0), P1 = (0, 0), P2 = (0, h) in the projective disc"""

    h: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "r", float(self.r))
        for name in ("h", "r"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    @property
    def lambert_threshold(self) -> float:
        if _cls(self.r) is not PointClass.ULTRAIDEAL:
            return math.inf
        return self.r / math.sqrt((self.r - 1.0) * (self.r + 1.0))


@dataclass(frozen=True)
class AreaReport:
    area: float
    shape: Shape2D
    angles: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"area": self.area, "shape": self.shape.value, "angles": list(self.angles)}


@dataclass(frozen=True)
class AreaMaximum:
    """Maximizing h (or plateau [h_lo, h_hi]) of the area for fixed r"""

    r: float
    h_lo: float
    h_hi: float
    value: float
    unique: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _cls(x: float) -> PointClass:
    if abs(x - 1.0) <= EPS_CLASS:
        return PointClass.IDEAL
    return PointClass.INTERIOR if x < 1 else PointClass.ULTRAIDEAL


def inner2(u, v):
    """Lorentz product -u0 v0 + u1 v1 + u2 v2 in dimension 2 + 1"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2] - u[..., 0] * v[..., 0]


def _angle(u, v) -> float:
    c = -float(inner2(u, v))
    if abs(c) > 1.0 + CLAMP_TOL:
        raise RegimeError(f"lines do not meet inside the disc (-<u,v> = {c!r})")
    return math.acos(min(1.0, max(-1.0, c)))


def _lines(params: Params2D):
    """Outward unit poles of the sides and truncation lines"""
    h, r = params.h, params.r
    w01 = np.array([0.0, 0.0, -1.0])
    w12 = np.array([0.0, -1.0, 0.0])
    n_sq = h * h + r * r - h * h * r * r
    w02 = np.array([h * r, h, r]) / math.sqrt(n_sq) if n_sq > 0 else None
    v0 = np.array([1.0, r, 0.0]) / math.sqrt(r * r - 1.0) if _cls(r) is PointClass.ULTRAIDEAL else None
    v2 = np.array([1.0, 0.0, h]) / math.sqrt(h * h - 1.0) if _cls(h) is PointClass.ULTRAIDEAL else None
    return w01, w12, w02, v0, v2


def classify2d(params: Params2D) -> Shape2D:
    r_cls, h_cls = _cls(params.r), _cls(params.h)
    ultra = PointClass.ULTRAIDEAL
    if r_cls is ultra and h_cls is ultra:
        if params.h < params.lambert_threshold - EPS_CLASS:
            return Shape2D.RIGHT_ANGLED_PENTAGON
        return Shape2D.POLAR_QUADRILATERAL
    if ultra in (r_cls, h_cls):
        return Shape2D.QUADRILATERAL
    if PointClass.IDEAL in (r_cls, h_cls):
        return Shape2D.IDEAL_TRIANGLE
    return Shape2D.TRIANGLE


def polygon_angles(params: Params2D) -> List[float]:
    """Interior angles of the truncated polygon, ideal corners contributing 0"""
    shape = classify2d(params)
    w01, w12, w02, v0, v2 = _lines(params)
    right = _angle(w01, w12)

    if shape is Shape2D.POLAR_QUADRILATERAL:
        # polar lines of P0 and P2 are parallel at h_b
        b = 0.0 if abs(params.h - params.lambert_threshold) <= EPS_CLASS else _angle(v0, v2)
        return [right, _angle(w01, v0), _angle(w12, v2), b]
    if shape is Shape2D.RIGHT_ANGLED_PENTAGON:
        return [right, _angle(w01, v0), _angle(v0, w02), _angle(w02, v2), _angle(v2, w12)]

    corner0 = [_angle(w01, v0), _angle(v0, w02)] if v0 is not None else [_angle(w01, w02)]
    corner2 = [_angle(w02, v2), _angle(v2, w12)] if v2 is not None else [_angle(w02, w12)]
    return corner0 + [right] + corner2


def area(params: Params2D) -> AreaReport:
    """
    Hyperbolic area by the angle defect (n - 2) pi - sum of angles

    Args:
        params: (h, r)

    Returns:
        AreaReport with the shape and its angles
    """
    angles = polygon_angles(params)
    value = (len(angles) - 2) * math.pi - sum(angles)
    return AreaReport(area=value, shape=classify2d(params), angles=angles)


def alpha0(params: Params2D) -> float:
    """Angle at P0 between the sides P0P1 and P0P2 (0 when P0 is ideal)"""
    if _cls(params.r) is PointClass.ULTRAIDEAL:
        raise RegimeError("P0 is ultraideal and truncated; there is no angle at P0")
    w01, _, w02, _, _ = _lines(params)
    return _angle(w01, w02)


def max_area(r: float) -> AreaMaximum:
    """
    Maximum of h -> area(h, r)

    r < 1: unique at h = 1 with value arcsin(r); r = 1: pi/2 on [1, inf);
    r > 1: pi/2 on [1, r / sqrt(r^2 - 1)].
    """
    r = float(r)
    if not math.isfinite(r) or r <= 0:
        raise DomainError(f"r must be positive and finite, got {r!r}")
    r_cls = _cls(r)
    if r_cls is PointClass.INTERIOR:
        value = area(Params2D(h=1.0, r=r)).area
        return AreaMaximum(r=r, h_lo=1.0, h_hi=1.0, value=value, unique=True)
    h_hi = Params2D(h=1.0, r=r).lambert_threshold
    return AreaMaximum(r=r, h_lo=1.0, h_hi=h_hi, value=math.pi / 2, unique=False)


def contains2d(params: Params2D, points) -> np.ndarray:
    """Membership of (n, 2) points in the truncated polygon"""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    h, r = params.h, params.r
    homog = np.hstack([np.ones((pts.shape[0], 1)), pts])
    w01, w12, _, v0, v2 = _lines(params)
    # side P0P2 as an unnormalized half-plane, valid whether or not it meets the disc
    side02 = np.array([h * r, h, r])
    mask = np.einsum("ij,ij->i", pts, pts) < 1.0
    for w in (w01, w12, side02, v0, v2):
        if w is not None:
            mask &= inner2(homog, w) <= 0.0
    return mask


def area_montecarlo(params: Params2D, samples: int = 1_000_000,
                    seed: Optional[int] = None) -> Tuple[float, float]:
    """
    Monte-Carlo area with density (1 - |x|^2)^(-3/2)

    Returns:
        (area, standard error)
    """
    if _cls(params.r) is PointClass.IDEAL or _cls(params.h) is PointClass.IDEAL:
        raise RegimeError("Monte-Carlo area rejects ideal vertices: the density is unbounded")
    seed = get_default_seed() if seed is None else seed
    x_hi = min(params.r, 1.0 / params.r, 1.0)
    y_hi = min(params.h, 1.0 / params.h, 1.0)
    box = x_hi * y_hi
    rng = np.random.default_rng(seed)
    points = rng.random((samples, 2)) * np.array([x_hi, y_hi])
    mask = contains2d(params, points)
    if not mask.any():
        raise DegeneratePolytopeError("no sample accepted")
    inside = points[mask]
    weights = np.zeros(samples)
    weights[mask] = (1.0 - np.einsum("ij,ij->i", inside, inside)) ** -1.5
    return box * float(weights.mean()), box * float(weights.std(ddof=1)) / math.sqrt(samples)
