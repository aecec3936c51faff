"""
Lorentzian Kernel Module
Minkowski inner product, hyperbolic distances and angles, projective ball model
"""

import logging
from enum import Enum
from typing import Optional

import numpy as np

from config.config import GEOMETRY_CONFIG
from utils.errors import DomainError

logger = logging.getLogger(__name__)

EPS_CLASS = GEOMETRY_CONFIG["eps_class"]
NORM_TOL = GEOMETRY_CONFIG["norm_tol"]
CLAMP_TOL = GEOMETRY_CONFIG["clamp_tol"]


class PointClass(str, Enum):
    """Position of a projective point relative to the unit sphere"""

    INTERIOR = "Interior"
    IDEAL = "Ideal"
    ULTRAIDEAL = "Ultraideal"


def lorentz_vec(x0: float, x1: float, x2: float, x3: float) -> np.ndarray:
    """Build a Lorentz 4-vector (x0 is the time-like coordinate)"""
    return np.array([x0, x1, x2, x3], dtype=float)


def inner(u, v):
    """
    Minkowski inner product -u0*v0 + u1*v1 + u2*v2 + u3*v3

    Broadcasts over leading axes, so a (n, 4) batch against a single vector
    returns n products.

    Args:
        u: Lorentz vector or batch of vectors
        v: Lorentz vector or batch of vectors

    Returns:
        Float for single vectors, ndarray for batches
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    result = np.sum(u[..., 1:] * v[..., 1:], axis=-1) - u[..., 0] * v[..., 0]
    if np.ndim(result) == 0:
        return float(result)
    return result


def acosh_stable(x: float) -> float:
    """arccosh in log1p form, accurate for arguments just above 1"""
    t = x - 1.0
    if t < 0.0:
        if t < -CLAMP_TOL:
            raise DomainError(f"arccosh argument below 1: {x!r}")
        t = 0.0
    return float(np.log1p(t + np.sqrt(t * (t + 2.0))))


def _check_horo(u: np.ndarray) -> None:
    if u[0] <= 0:
        raise DomainError("horosphere vector must be future-pointing (x0 > 0)")
    scale = u[0] * u[0]
    if abs(inner(u, u)) > 1e-9 * scale:
        raise DomainError(f"horosphere vector is not light-like (<u,u> = {inner(u, u):.3e})")


def dist_point_plane(u, v) -> float:
    """
    Distance from a point of H^3 to a plane given by its unit space-like pole

    Args:
        u: Time-like lift of the point (<u,u> = -1)
        v: Space-like pole of the plane (<v,v> = 1), half-space <x,v> <= 0

    Returns:
        arcsinh(-<u,v>)
    """
    ip = inner(u, v)
    if ip > NORM_TOL:
        raise DomainError(f"point lies outside the half-space of the plane (<u,v> = {ip:.3e})")
    return float(np.arcsinh(max(-ip, 0.0)))


def dist_horo_plane(u, v) -> float:
    """
    Signed distance from a horosphere to a plane

    The horosphere is {x : <x,u> = -1/2} for a future-pointing light-like u;
    the distance is negative when the two intersect.
    """
    u = np.asarray(u, dtype=float)
    _check_horo(u)
    ip = inner(u, v)
    if ip >= 0:
        raise DomainError(f"plane does not separate from the horosphere center (<u,v> = {ip:.3e})")
    return float(np.log(-2.0 * ip))


def dist_horo_point(u, v) -> float:
    """Signed distance from a horosphere (light-like u) to a point v of H^3"""
    u = np.asarray(u, dtype=float)
    _check_horo(u)
    ip = inner(u, v)
    if ip >= 0:
        raise DomainError(f"point is not in the past of the horosphere vector (<u,v> = {ip:.3e})")
    return float(np.log(-2.0 * ip))


def dist_horo_horo(u, v) -> float:
    """Signed distance between two horospheres with light-like centers u, v"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_horo(u)
    _check_horo(v)
    ip = inner(u, v)
    if ip >= 0:
        raise DomainError("horospheres share their center")
    return float(np.log(-2.0 * ip))


def dihedral_angle(u, v) -> float:
    """
    Angle between two intersecting planes, from their outward unit poles

    Returns:
        arccos(-<u,v>) in [0, pi]
    """
    c = -inner(u, v)
    if c > 1.0 + CLAMP_TOL:
        raise DomainError(f"planes are ultraparallel (<u,v> = {-c:.6g})")
    if c < -1.0 - CLAMP_TOL:
        raise DomainError(f"planes meet outside the ball (<u,v> = {-c:.6g})")
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def dist_plane_plane(u, v) -> float:
    """Distance between ultraparallel planes, arccosh(-<u,v>)"""
    c = -inner(u, v)
    if c < 1.0 - CLAMP_TOL:
        raise DomainError(f"planes intersect (<u,v> = {-c:.6g})")
    return acosh_stable(max(c, 1.0))


def dist_point_point(u, v) -> float:
    """
    Distance between two points of H^3

    Equal to arccosh(-<u,v>), evaluated as 2 asinh(sqrt(<u-v, u-v>) / 2),
    which is exact at u = v and keeps full precision for nearby points.
    """
    c = -inner(u, v)
    if c < 1.0 - CLAMP_TOL:
        raise DomainError(f"vectors are not both on the upper sheet (<u,v> = {-c:.6g})")
    diff = np.asarray(u, dtype=float) - np.asarray(v, dtype=float)
    chord_sq = max(float(inner(diff, diff)), 0.0)
    return float(2.0 * np.arcsinh(np.sqrt(chord_sq) / 2.0))


def classify_point(p, eps: float = EPS_CLASS) -> PointClass:
    """Interior / Ideal / Ultraideal by comparing |p| with 1"""
    q = 1.0 - float(np.linalg.norm(np.asarray(p, dtype=float)))
    if abs(q) <= eps:
        return PointClass.IDEAL
    return PointClass.INTERIOR if q > 0 else PointClass.ULTRAIDEAL


def klein_project(v) -> np.ndarray:
    """Projective ball model image (v1, v2, v3) / v0 of a Lorentz vector"""
    v = np.asarray(v, dtype=float)
    if v[0] == 0.0:
        raise DomainError("vector with v0 = 0 projects to a point at infinity")
    return v[1:] / v[0]


def klein_lift(p, point_class: Optional[PointClass] = None) -> np.ndarray:
    """
    Normalized Lorentz lift of a point of the projective ball model

    Interior points go to the upper sheet <v,v> = -1, ultraideal points to
    the proper space-like lift with <v,v> = 1 and v0 > 0, ideal points to
    the unnormalized light-like (1, p) with p snapped onto the unit sphere.

    Args:
        p: Point of R^3
        point_class: Class of p; computed with the eps_class rule when omitted

    Returns:
        Lorentz 4-vector
    """
    p = np.asarray(p, dtype=float)
    if point_class is None:
        point_class = classify_point(p)

    norm = float(np.linalg.norm(p))
    if point_class is PointClass.IDEAL:
        if norm == 0.0:
            raise DomainError("origin cannot be ideal")
        return np.concatenate(([1.0], p / norm))

    q = 1.0 - norm * norm
    if point_class is PointClass.INTERIOR and q <= 0:
        raise DomainError(f"point {p.tolist()} is not interior")
    if point_class is PointClass.ULTRAIDEAL and q >= 0:
        raise DomainError(f"point {p.tolist()} is not ultraideal")
    return np.concatenate(([1.0], p)) / np.sqrt(abs(q))
