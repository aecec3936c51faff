"""
Schlafli Module
Closed-form dV/dh along the family R(h, r, theta) and its auxiliary functions
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import List, Tuple

import numpy as np

from config.config import GEOMETRY_CONFIG
from models.metrics import (
    edge_l01,
    edge_l03,
    l01_value,
    l03_values,
    lambert_radicand,
    normalizer_sq,
    radicand,
)
from models.orthoscheme import (
    CombinatorialType,
    FamilyParams,
    OrthoschemeParams,
    classify,
)
from utils.errors import RegimeError
from utils.lorentz import PointClass

logger = logging.getLogger(__name__)

EPS_CLASS = GEOMETRY_CONFIG["eps_class"]
CLAMP_TOL = GEOMETRY_CONFIG["clamp_tol"]


@dataclass(frozen=True)
class DerivativeReport:
    """dV/dh with the pieces it was assembled from"""

    h: float
    regime: CombinatorialType
    dv_dh: float
    l03: float
    l01: float
    dtheta12_dh: float
    dtheta23_dh: float
    one_sided: bool = False

    def reconstruct(self) -> float:
        """-1/2 (l03 * theta12' + l01 * theta23'); not defined for one-sided reports"""
        return -0.5 * (self.l03 * self.dtheta12_dh + self.l01 * self.dtheta23_dh)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["regime"] = self.regime.value
        return data


@dataclass(frozen=True)
class AuxFunctions:
    """C, F(h), G(h) and F'(h) of the root equation"""

    C: float
    F: float
    G: float
    dF: float

    def to_dict(self) -> dict:
        return asdict(self)


def _require_h_above_one(h: float) -> None:
    if h <= 1.0 + EPS_CLASS:
        raise RegimeError(
            f"analytic derivative defined for h > 1 (h = {h!r}); use the volume oracle for h <= 1"
        )


def _clamped_radicand(h: float, r: float) -> float:
    s_val = radicand(h, r)
    if s_val < 0:
        if s_val < -CLAMP_TOL * max(1.0, r * r):
            raise RegimeError(f"(1 - r^2) h^2 + r^2 < 0 at h = {h!r}: h lies in the Lambert range")
        s_val = 0.0
    return s_val


def dtheta12_dh(params: OrthoschemeParams) -> float:
    """
    Derivative of theta_12 with respect to h

    Non-Lambert: -r^2 sin cos / (N^2 sqrt(S)); Lambert: h / ((h^2 - 1) sqrt(Q)).
    On the ideal-vertex boundary the left derivative is -infinity.
    """
    _require_h_above_one(params.h)
    regime = classify(params)
    h, r, theta = params.h, params.r, params.theta
    if regime is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX:
        return -math.inf
    if regime is CombinatorialType.LAMBERT_CUBE:
        q = lambert_radicand(h, r)
        if q <= 0:
            raise RegimeError(f"(r^2 - 1) h^2 - r^2 must be positive (h={h}, r={r})")
        return h / ((h - 1.0) * (h + 1.0) * math.sqrt(q))
    s_val = radicand(h, r)
    if s_val <= 0:
        raise RegimeError(f"(1 - r^2) h^2 + r^2 must be positive (h={h}, r={r})")
    return -r * r * math.sin(theta) * math.cos(theta) / (normalizer_sq(h, r, theta) * math.sqrt(s_val))


def dtheta23_dh(params: OrthoschemeParams) -> float:
    """r sqrt(1 - r^2 cos^2) cos / N^2, the same in every regime"""
    _require_h_above_one(params.h)
    h, r, theta = params.h, params.r, params.theta
    c = math.cos(theta)
    a = math.sqrt(1.0 - (r * c) ** 2)
    return r * a * c / normalizer_sq(h, r, theta)


def dtheta12_limit_at_one(family: FamilyParams) -> float:
    """Limit of -dtheta12/dh as h decreases to 1 (finite for every r)"""
    return family.r ** 2 * math.sin(family.theta) * math.cos(family.theta)


def constant_c(family: FamilyParams) -> float:
    """C = l01 * sqrt(1 - r^2 cos^2) / (r sin)"""
    l01, _ = l01_value(family.r, family.theta)
    a = math.sqrt(1.0 - (family.r * math.cos(family.theta)) ** 2)
    return l01 * a / (family.r * math.sin(family.theta))


def function_f(family: FamilyParams, h: float) -> float:
    """F(h) = log((sqrt(S) + 1) / sqrt(h^2 - 1)) - C sqrt(S) for h > 1 with S >= 0"""
    _require_h_above_one(h)
    root_s = math.sqrt(_clamped_radicand(h, family.r))
    return (
        math.log(root_s + 1.0)
        - 0.5 * math.log((h - 1.0) * (h + 1.0))
        - constant_c(family) * root_s
    )


def function_g(family: FamilyParams, h: float) -> float:
    """G(h) = C (1 - r^2)(h^2 - 1) + 1"""
    r = family.r
    return constant_c(family) * (1.0 - r * r) * (h * h - 1.0) + 1.0


def function_f_prime(family: FamilyParams, h: float) -> float:
    """F'(h) = -h G(h) / ((h^2 - 1) sqrt(S)), S > 0 required"""
    _require_h_above_one(h)
    s_val = radicand(h, family.r)
    if s_val <= 0:
        raise RegimeError(f"F' is not defined where S <= 0 (h = {h!r})")
    return -h * function_g(family, h) / ((h - 1.0) * (h + 1.0) * math.sqrt(s_val))


def aux_functions(family: FamilyParams, h: float) -> AuxFunctions:
    return AuxFunctions(
        C=constant_c(family),
        F=function_f(family, h),
        G=function_g(family, h),
        dF=function_f_prime(family, h),
    )


def root_function(family: FamilyParams, h: float) -> float:
    """
    Phi(h) = F(h) - 1/2 log|1 - r^2| (F(h) alone when r = 1)

    On the non-Lambert range dV/dh = 1/2 (-theta12') Phi(h) with
    -theta12' > 0, so Phi and dV/dh share their sign and zeros.
    """
    value = function_f(family, h)
    if family.r_class is PointClass.IDEAL:
        return value
    r = family.r
    return value - 0.5 * math.log(abs((1.0 - r) * (1.0 + r)))


def g_roots(family: FamilyParams, lo: float, hi: float) -> List[float]:
    """Roots of G in the open interval (lo, hi)"""
    r = family.r
    k = constant_c(family) * (1.0 - r * r)
    if k == 0.0:
        return []
    h_sq = 1.0 - 1.0 / k
    if h_sq <= 0:
        return []
    root = math.sqrt(h_sq)
    return [root] if lo < root < hi else []


def boundary_limits(family: FamilyParams) -> Tuple[float, float]:
    """
    One-sided limits of dV/dh at h_b = r / sqrt(r^2 - 1)

    Returns:
        (left, right) = (1/2 (r^2-1) cot(theta)(1 - C), -1/2 (r^2-1) cot(theta)(1 + C))
    """
    if family.r_class is not PointClass.ULTRAIDEAL:
        raise RegimeError(f"no ideal-vertex boundary for r = {family.r!r} <= 1")
    r = family.r
    k = 0.5 * (r - 1.0) * (r + 1.0) / math.tan(family.theta)
    c_val = constant_c(family)
    return k * (1.0 - c_val), -k * (1.0 + c_val)


def _factored(family: FamilyParams, h: float, d12: float) -> float:
    return 0.5 * (-d12) * root_function(family, h)


def dv_dh(params: OrthoschemeParams, horosphere_scale: float = 1.0) -> DerivativeReport:
    """
    Closed-form dV/dh = -1/2 (l03 theta12' + l01 theta23') for h > 1

    On the ideal-vertex boundary the left limit is returned with
    one_sided=True.

    Args:
        params: Orthoscheme parameters with h > 1
        horosphere_scale: Rescaling of the horosphere at an ideal v0

    Returns:
        DerivativeReport

    Raises:
        RegimeError: If h <= 1 or a radicand leaves its domain
    """
    _require_h_above_one(params.h)
    regime = classify(params)
    family = params.family
    l01 = edge_l01(params, horosphere_scale).value
    d23 = dtheta23_dh(params)

    if regime is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX:
        left, _ = boundary_limits(family)
        logger.info(f"h={params.h} is on the ideal-vertex boundary; returning the left limit")
        return DerivativeReport(
            h=params.h, regime=regime, dv_dh=left, l03=0.0, l01=l01,
            dtheta12_dh=-math.inf, dtheta23_dh=d23, one_sided=True,
        )

    l03 = edge_l03(params, horosphere_scale).value
    d12 = dtheta12_dh(params)
    value = -0.5 * (l03 * d12 + l01 * d23)

    if regime is not CombinatorialType.LAMBERT_CUBE and horosphere_scale == 1.0:
        factored = _factored(family, params.h, d12)
        if not math.isclose(value, factored, rel_tol=1e-9, abs_tol=1e-12):
            logger.warning(
                f"Assembled and factored dV/dh disagree at h={params.h}: {value!r} vs {factored!r}"
            )

    return DerivativeReport(
        h=params.h, regime=regime, dv_dh=value, l03=l03, l01=l01,
        dtheta12_dh=d12, dtheta23_dh=d23,
    )


def dv_dh_factored(params: OrthoschemeParams) -> float:
    """dV/dh as 1/2 (-theta12') Phi(h); non-Lambert regimes only"""
    _require_h_above_one(params.h)
    regime = classify(params)
    if regime in (CombinatorialType.LAMBERT_CUBE, CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX):
        raise RegimeError(f"factored form does not cover {regime.value}")
    return _factored(params.family, params.h, dtheta12_dh(params))


def dv_dh_values(family: FamilyParams, h_values) -> np.ndarray:
    """
    Vectorized dV/dh on a grid of heights, all strictly above 1

    Heights are split by regime with the same eps_class rule as classify;
    ideal-boundary heights take the left limit.

    Args:
        family: (r, theta)
        h_values: Array-like of heights > 1

    Returns:
        ndarray of dV/dh, same shape as h_values
    """
    h = np.asarray(h_values, dtype=float)
    if np.any(h <= 1.0):
        raise RegimeError("dv_dh_values requires every h > 1")

    r, theta = family.r, family.theta
    s, c = math.sin(theta), math.cos(theta)
    l01, _ = l01_value(r, theta)
    n_sq = normalizer_sq(h, r, theta)
    d23 = r * math.sqrt(1.0 - (r * c) ** 2) * c / n_sq
    out = np.empty_like(h)

    r_cls = family.r_class
    if r_cls is not PointClass.ULTRAIDEAL:
        regime = (CombinatorialType.SIMPLE_FRUSTUM if r_cls is PointClass.INTERIOR
                  else CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0)
        d12 = -r * r * s * c / (n_sq * np.sqrt(radicand(h, r)))
        out[...] = -0.5 * (l03_values(h, r, theta, regime) * d12 + l01 * d23)
        return out

    h_b = family.lambert_threshold
    boundary = np.abs(h - h_b) <= EPS_CLASS
    lambert = (h > h_b) & ~boundary
    frustum = ~(lambert | boundary)

    if np.any(frustum):
        hf = h[frustum]
        d12 = -r * r * s * c / (n_sq[frustum] * np.sqrt(radicand(hf, r)))
        l03 = l03_values(hf, r, theta, CombinatorialType.DOUBLE_FRUSTUM)
        out[frustum] = -0.5 * (l03 * d12 + l01 * d23[frustum])
    if np.any(lambert):
        hl = h[lambert]
        d12 = hl / ((hl - 1.0) * (hl + 1.0) * np.sqrt(lambert_radicand(hl, r)))
        l03 = l03_values(hl, r, theta, CombinatorialType.LAMBERT_CUBE)
        out[lambert] = -0.5 * (l03 * d12 + l01 * d23[lambert])
    if np.any(boundary):
        out[boundary] = boundary_limits(family)[0]
    return out
