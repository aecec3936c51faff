"""
Volume Module
Volume of R(h, r, theta) by Schlafli integration and by a Monte-Carlo oracle
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import linprog

from config.config import GEOMETRY_CONFIG, VOLUME_CONFIG, get_default_seed
from models.orthoscheme import (
    CombinatorialType,
    FamilyParams,
    OrthoschemeGeometry,
    OrthoschemeParams,
    build,
    classify,
    contains,
    halfspace_system,
)
from models.schlafli import dv_dh, dv_dh_values
from utils.errors import DegeneratePolytopeError, DomainError, GeometryError, RegimeError
from utils.lorentz import PointClass

logger = logging.getLogger(__name__)

EPS_CLASS = GEOMETRY_CONFIG["eps_class"]


class VolumeMethod(str, Enum):
    SCHLAFLI_INTEGRAL = "SchlafliIntegral"
    MONTE_CARLO = "MonteCarlo"


@dataclass(frozen=True)
class VolumeEstimate:
    """
    Volume value with its error estimate

    steps counts integrand evaluations for the Schlafli integral and samples
    for Monte-Carlo; seed is set for Monte-Carlo only.
    """

    value: float
    method: VolumeMethod
    error: float
    steps: int
    seed: Optional[int] = None
    metadata: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method.value,
            "error": self.error,
            "steps": self.steps,
            "seed": self.seed,
            "metadata": dict(self.metadata),
        }


@dataclass
class SweepRow:
    h: float
    regime: Optional[str]
    dv_dh: Optional[float] = None
    volume: Optional[float] = None
    method: Optional[str] = None
    error: Optional[float] = None
    diagnostics: str = ""

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "regime": self.regime,
            "dv_dh": self.dv_dh,
            "volume": self.volume,
            "method": self.method,
            "error": self.error,
            "diagnostics": self.diagnostics,
        }


# ---------------------------------------------------------------------------
# Schlafli integral
# ---------------------------------------------------------------------------

def _integrand(family: FamilyParams):
    def f(t: float) -> float:
        return float(dv_dh_values(family, np.array([t]))[0])
    return f


def _tail_integrand(family: FamilyParams):
    f = _integrand(family)

    def g(u: float) -> float:
        # t = 1/u maps (0, 1/H] onto [H, inf)
        if u <= 0.0:
            return 0.0
        return f(1.0 / u) / (u * u)
    return g


def _quad(func, a: float, b: float, tol: float) -> Tuple[float, float, int]:
    result = quad(
        func, a, b,
        epsabs=tol, epsrel=VOLUME_CONFIG["quad_rel_tol"],
        limit=VOLUME_CONFIG["quad_limit"], full_output=1,
    )
    value, abserr, info = result[0], result[1], result[2]
    if len(result) > 3:
        logger.warning(f"quad on [{a}, {b}]: {result[3]}")
    return value, abserr, int(info["neval"])


def volume_schlafli(params: OrthoschemeParams, tol: Optional[float] = None) -> VolumeEstimate:
    """
    V(h) = -integral_h^inf dV/dt dt for h >= 1

    The range is split at h_b for r > 1; [H, inf) is integrated in u = 1/t.
    |h - 1| <= eps_class is treated as the one-sided limit from h = 1.

    Args:
        params: Orthoscheme parameters, h >= 1
        tol: Absolute quadrature tolerance

    Returns:
        VolumeEstimate with method SchlafliIntegral

    Raises:
        RegimeError: If h < 1
    """
    tol = tol or VOLUME_CONFIG["quad_tol"]
    h = params.h
    if h < 1.0 - EPS_CLASS:
        raise RegimeError(f"Schlafli integral covers h >= 1 (h = {h!r}); use the Monte-Carlo oracle")
    start = max(h, 1.0) if h > 1.0 + EPS_CLASS else 1.0
    family = params.family
    h_b = family.lambert_threshold

    tail_start = max(VOLUME_CONFIG["tail_split"], 2.0 * start)
    if math.isfinite(h_b):
        tail_start = max(tail_start, 2.0 * h_b)
    breakpoints = [start]
    if start < h_b < tail_start:
        breakpoints.append(h_b)
    breakpoints.append(tail_start)

    pieces = len(breakpoints)
    total, error, steps = 0.0, 0.0, 0
    segments = []
    f = _integrand(family)
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        value, abserr, neval = _quad(f, a, b, tol / pieces)
        segments.append({"a": a, "b": b, "integral": value})
        total += value
        error += abserr
        steps += neval

    tail, abserr, neval = _quad(_tail_integrand(family), 0.0, 1.0 / tail_start, tol / pieces)
    total += tail
    error += abserr
    steps += neval

    return VolumeEstimate(
        value=-total,
        method=VolumeMethod.SCHLAFLI_INTEGRAL,
        error=error,
        steps=steps,
        metadata={"start": start, "tail_start": tail_start, "tail": -tail, "segments": segments},
    )


# ---------------------------------------------------------------------------
# Monte-Carlo oracle
# ---------------------------------------------------------------------------

def bounding_box(geom: OrthoschemeGeometry) -> Tuple[np.ndarray, np.ndarray]:
    """
    Smallest axis-aligned box of the half-space system, clipped to [-1, 1]^3

    Each face <(1, x), w> <= 0 reads w[1:] . x <= w[0]; one linear program
    per coordinate and direction.
    """
    normals = halfspace_system(geom)
    a_ub = normals[:, 1:]
    b_ub = normals[:, 0]
    bounds = [(-1.0, 1.0)] * 3
    lower = np.empty(3)
    upper = np.empty(3)
    for axis in range(3):
        for sign in (1.0, -1.0):
            cost = np.zeros(3)
            cost[axis] = sign
            res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
            if not res.success:
                raise DegeneratePolytopeError(f"half-space system infeasible: {res.message}")
            if sign > 0:
                lower[axis] = res.fun
            else:
                upper[axis] = -res.fun
    return lower, upper


def _is_ideal_configuration(params: OrthoschemeParams) -> bool:
    family = params.family
    if family.r_class is PointClass.IDEAL or abs(params.h - 1.0) <= EPS_CLASS:
        return True
    return classify(params) is CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX


def _chunk_sums(geom: OrthoschemeGeometry, lower: np.ndarray, upper: np.ndarray,
                seq: np.random.SeedSequence, n: int) -> Tuple[float, float, int]:
    rng = np.random.default_rng(seq)
    points = lower + (upper - lower) * rng.random((n, 3))
    mask = contains(geom, points)
    inside = points[mask]
    weights = (1.0 - np.einsum("ij,ij->i", inside, inside)) ** -2
    return float(weights.sum()), float((weights * weights).sum()), int(mask.sum())


def volume_montecarlo(params: OrthoschemeParams, samples: Optional[int] = None,
                      seed: Optional[int] = None, workers: Optional[int] = None) -> VolumeEstimate:
    """
    Monte-Carlo volume with density (1 - |x|^2)^-2 in the projective model

    Samples are drawn uniformly from the polytope's bounding box in chunks,
    each chunk seeded from SeedSequence(seed).spawn; results do not depend
    on the number of workers.

    Args:
        params: Orthoscheme parameters without ideal vertices
        samples: Number of uniform samples
        seed: Seed of the sample stream, ORTHO_SEED by default
        workers: Threads used for chunks

    Returns:
        VolumeEstimate with a one-sigma standard error

    Raises:
        RegimeError: For ideal configurations (unbounded integrand)
        DegeneratePolytopeError: If no sample lands in the polytope
    """
    samples = samples or VOLUME_CONFIG["mc_samples"]
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    seed = get_default_seed() if seed is None else seed
    workers = workers or VOLUME_CONFIG["mc_workers"]
    if _is_ideal_configuration(params):
        raise RegimeError("Monte-Carlo oracle rejects ideal configurations: the density is unbounded")

    geom = build(params)
    lower, upper = bounding_box(geom)
    box_volume = float(np.prod(upper - lower))
    if box_volume <= 0:
        raise DegeneratePolytopeError("bounding box has zero volume")

    chunk = VOLUME_CONFIG["mc_chunk"]
    sizes = [chunk] * (samples // chunk)
    if samples % chunk:
        sizes.append(samples % chunk)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _chunk_sums(geom, lower, upper, *job), zip(seqs, sizes)))
    else:
        parts = [_chunk_sums(geom, lower, upper, seq, n) for seq, n in zip(seqs, sizes)]

    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    accepted = sum(p[2] for p in parts)
    if accepted == 0:
        raise DegeneratePolytopeError(f"no sample accepted out of {samples}")

    mean = s1 / samples
    variance = max((s2 - samples * mean * mean) / (samples - 1), 0.0)
    value = box_volume * mean
    stderr = box_volume * math.sqrt(variance / samples)
    logger.debug(f"MC volume {value} +- {stderr} ({accepted}/{samples} accepted)")

    return VolumeEstimate(
        value=value,
        method=VolumeMethod.MONTE_CARLO,
        error=stderr,
        steps=samples,
        seed=seed,
        metadata={
            "accepted": accepted,
            "box_lower": lower.tolist(),
            "box_upper": upper.tolist(),
            "chunk": chunk,
        },
    )


def volume(params: OrthoschemeParams, method: Optional[VolumeMethod] = None,
           samples: Optional[int] = None, seed: Optional[int] = None) -> VolumeEstimate:
    """Schlafli integral for h >= 1, Monte-Carlo below unless a method is forced"""
    if method is None:
        method = VolumeMethod.SCHLAFLI_INTEGRAL if params.h >= 1.0 - EPS_CLASS else VolumeMethod.MONTE_CARLO
    if method is VolumeMethod.SCHLAFLI_INTEGRAL:
        return volume_schlafli(params)
    return volume_montecarlo(params, samples=samples, seed=seed)


def sweep(family: FamilyParams, h_grid, samples: Optional[int] = None,
          seed: Optional[int] = None) -> List[SweepRow]:
    """
    Regime, dV/dh and volume at every height of a strictly increasing grid

    Failures are recorded in the row's diagnostics; the sweep continues.

    Args:
        family: (r, theta)
        h_grid: Strictly increasing heights
        samples: Monte-Carlo samples for rows with h < 1
        seed: Monte-Carlo seed

    Returns:
        One SweepRow per grid point
    """
    grid = np.asarray(h_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("h grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("h grid must be strictly increasing")
    samples = samples or VOLUME_CONFIG["sweep_mc_samples"]

    rows = []
    previous = None
    for h in grid:
        row = SweepRow(h=float(h), regime=None)
        try:
            params = family.at(float(h))
            regime = classify(params)
            row.regime = regime.value
            if previous is not None and regime.value != previous:
                logger.info(f"Regime change at h={h}: {previous} -> {regime.value}")
            previous = regime.value

            if h > 1.0 + EPS_CLASS:
                row.dv_dh = dv_dh(params).dv_dh
            estimate = volume(params, samples=samples, seed=seed)
            row.volume = estimate.value
            row.method = estimate.method.value
            row.error = estimate.error
        except GeometryError as e:
            logger.warning(f"Sweep row h={h} failed: {e}")
            row.diagnostics = f"{e.code}: {e}"
        rows.append(row)
    return rows
