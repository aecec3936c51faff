"""
Maximizer Module
Locate and certify the unique volume maximum of h -> V(R(h, r, theta))
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import bisect

from config.config import MAXIMIZER_CONFIG
from models.orthoscheme import CombinatorialType, FamilyParams, classify
from models.schlafli import dv_dh, dv_dh_values, g_roots, root_function
from utils.errors import BracketError
from utils.lorentz import PointClass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaximizerResult:
    """Location of the volume maximum for one (r, theta)"""

    r: float
    theta: float
    h_star: float
    regime_at_max: CombinatorialType
    residual: float
    bracket: Tuple[float, float]
    iterations: int
    on_boundary: bool = False
    closed_form: Optional[float] = None
    h_bisection: Optional[float] = None

    def to_dict(self) -> dict:
        data = asdict(self)
        data["regime_at_max"] = self.regime_at_max.value
        data["bracket"] = list(self.bracket)
        return data


@dataclass
class UniquenessReport:
    """Sign changes of dV/dh over a log-spaced grid in h - 1"""

    r: float
    theta: float
    grid_n: int
    h_range: Tuple[float, float]
    sign_changes: int
    crossings: List[float] = field(default_factory=list)
    g_root_count: int = 0

    @property
    def ok(self) -> bool:
        return self.sign_changes == 1 and self.g_root_count <= 1

    def to_dict(self) -> dict:
        data = asdict(self)
        data["h_range"] = list(self.h_range)
        data["ok"] = self.ok
        return data


@dataclass
class LambertDecreaseReport:
    """dV/dh samples on the Lambert range (h_b, h_max]"""

    r: float
    theta: float
    samples: int
    h_range: Tuple[float, float]
    max_dv_dh: float
    violations: List[float] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        data = asdict(self)
        data["h_range"] = list(self.h_range)
        data["ok"] = self.ok
        return data


def closed_form_r1(theta: float) -> float:
    """Maximizing height for r = 1: sqrt(1 + 1/sin^2(theta))"""
    return math.sqrt(1.0 + 1.0 / math.sin(theta) ** 2)


def _lower_end() -> float:
    return 1.0 + MAXIMIZER_CONFIG["delta0"]


def _grow_upper(family: FamilyParams, start: float = 2.0) -> float:
    """Double the upper end until the root function turns negative"""
    hi = start
    for _ in range(MAXIMIZER_CONFIG["max_expand"]):
        if root_function(family, hi) < 0:
            return hi
        hi *= 2.0
    raise BracketError(
        f"root function still non-negative at h={hi:.6g} for r={family.r}, theta={family.theta}"
    )


def _bisect(family: FamilyParams, lo: float, hi: float) -> Tuple[float, int]:
    root, info = bisect(
        lambda h: root_function(family, h), lo, hi,
        xtol=MAXIMIZER_CONFIG["xtol"],
        rtol=MAXIMIZER_CONFIG["rtol"],
        maxiter=MAXIMIZER_CONFIG["maxiter"],
        full_output=True, disp=False,
    )
    if not info.converged:
        raise BracketError(f"bisection did not converge on [{lo}, {hi}]: {info.flag}")
    return root, info.iterations


def find_max(family: FamilyParams) -> MaximizerResult:
    """
    Find the height h* > 1 maximizing the volume of R(h, r, theta)

    For r <= 1 the root of Phi is bracketed in (1 + delta0, H) with H grown
    by doubling. For r > 1 the bracket is (1 + delta0, h_b); when Phi stays
    non-negative up to h_b the maximum is the ideal-vertex boundary itself.

    Args:
        family: (r, theta)

    Returns:
        MaximizerResult

    Raises:
        BracketError: If no sign change can be bracketed
    """
    r, theta = family.r, family.theta
    lo = _lower_end()
    if root_function(family, lo) <= 0:
        raise BracketError(f"root function not positive at h={lo} for r={r}, theta={theta}")

    if family.r_class is PointClass.ULTRAIDEAL:
        h_b = family.lambert_threshold
        hi = h_b - MAXIMIZER_CONFIG["delta0"]
        if hi <= lo or root_function(family, hi) >= 0:
            residual = abs(root_function(family, h_b))
            logger.info(f"Maximum for r={r}, theta={theta} on the ideal-vertex boundary h_b={h_b}")
            return MaximizerResult(
                r=r, theta=theta, h_star=h_b,
                regime_at_max=CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX,
                residual=residual, bracket=(lo, h_b), iterations=0, on_boundary=True,
            )
        root, iterations = _bisect(family, lo, hi)
        logger.info(f"Interior maximum for r={r}, theta={theta}: h*={root} ({iterations} iterations)")
        return MaximizerResult(
            r=r, theta=theta, h_star=root,
            regime_at_max=classify(family.at(root)),
            residual=abs(root_function(family, root)),
            bracket=(lo, hi), iterations=iterations,
        )

    hi = _grow_upper(family)
    root, iterations = _bisect(family, lo, hi)

    if family.r_class is PointClass.IDEAL:
        h_star = closed_form_r1(theta)
        return MaximizerResult(
            r=r, theta=theta, h_star=h_star,
            regime_at_max=classify(family.at(h_star)),
            residual=abs(root_function(family, h_star)),
            bracket=(lo, hi), iterations=iterations,
            closed_form=h_star, h_bisection=root,
        )

    logger.info(f"Maximum for r={r}, theta={theta}: h*={root} ({iterations} iterations)")
    return MaximizerResult(
        r=r, theta=theta, h_star=root,
        regime_at_max=classify(family.at(root)),
        residual=abs(root_function(family, root)),
        bracket=(lo, hi), iterations=iterations,
    )


def flank_signs(family: FamilyParams, result: MaximizerResult) -> Tuple[float, float]:
    """dV/dh at h* - delta and h* + delta"""
    delta = MAXIMIZER_CONFIG["flank_delta"]
    left = dv_dh(family.at(result.h_star - delta)).dv_dh
    right = dv_dh(family.at(result.h_star + delta)).dv_dh
    return left, right


def _scan_upper(family: FamilyParams) -> float:
    if family.r_class is PointClass.ULTRAIDEAL:
        return family.lambert_threshold * (1.0 + 1e-3)
    return 2.0 * _grow_upper(family)


def verify_uniqueness(family: FamilyParams, grid_n: Optional[int] = None) -> UniquenessReport:
    """
    Count sign changes of dV/dh on a grid log-spaced in h - 1

    The grid runs from 1 + delta0 to just past h_b for r > 1 (so a boundary
    maximum is seen), otherwise to twice the bracketing height.

    Args:
        family: (r, theta)
        grid_n: Number of grid points

    Returns:
        UniquenessReport; ok when there is exactly one sign change
    """
    grid_n = grid_n or MAXIMIZER_CONFIG["uniqueness_grid"]
    lo = _lower_end()
    hi = _scan_upper(family)
    hs = 1.0 + np.geomspace(lo - 1.0, hi - 1.0, grid_n)
    values = dv_dh_values(family, hs)

    nonzero = values != 0.0
    signs = np.sign(values[nonzero])
    h_nz = hs[nonzero]
    flips = np.nonzero(signs[1:] != signs[:-1])[0]
    crossings = [float(0.5 * (h_nz[i] + h_nz[i + 1])) for i in flips]

    g_count = 0
    if family.r_class is PointClass.ULTRAIDEAL:
        g_count = len(g_roots(family, 1.0, family.lambert_threshold))

    report = UniquenessReport(
        r=family.r, theta=family.theta, grid_n=grid_n, h_range=(float(hs[0]), float(hs[-1])),
        sign_changes=len(flips), crossings=crossings, g_root_count=g_count,
    )
    if not report.ok:
        logger.warning(f"Uniqueness check failed for r={family.r}, theta={family.theta}: {report.sign_changes} sign changes")
    return report


def verify_lambert_decrease(family: FamilyParams, samples: Optional[int] = None) -> LambertDecreaseReport:
    """
    Check dV/dh < 0 at log-spaced heights of the Lambert range

    Args:
        family: (r, theta) with r > 1
        samples: Number of heights

    Returns:
        LambertDecreaseReport
    """
    if family.r_class is not PointClass.ULTRAIDEAL:
        raise BracketError(f"no Lambert range for r = {family.r!r} <= 1")
    samples = samples or MAXIMIZER_CONFIG["lambert_samples"]
    h_b = family.lambert_threshold
    lo = h_b * (1.0 + 1e-6)
    hi = max(MAXIMIZER_CONFIG["lambert_h_max"], 10.0 * h_b)
    hs = np.geomspace(lo, hi, samples)
    values = dv_dh_values(family, hs)
    violations = [float(h) for h, v in zip(hs, values) if v >= 0]
    return LambertDecreaseReport(
        r=family.r, theta=family.theta, samples=samples, h_range=(lo, hi),
        max_dv_dh=float(values.max()), violations=violations,
    )


def family_grid(n_r: int = 20, n_theta: int = 20) -> List[FamilyParams]:
    """
    (r, theta) grid spanning r < 1, r = 1 and r > 1

    For each r, theta runs over an admissible range with r cos(theta) < 1.
    """
    radii = np.geomspace(0.2, 4.0, n_r - 1)
    radii = np.sort(np.append(radii, 1.0))
    grid = []
    for r in radii:
        theta_min = 0.05
        if r * math.cos(theta_min) >= 0.95:
            theta_min = math.acos(0.95 / r) + 0.02
        for theta in np.linspace(theta_min, math.pi / 2 - 0.05, n_theta):
            grid.append(FamilyParams(float(r), float(theta)))
    return grid
