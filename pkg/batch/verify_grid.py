"""
Theorem Grid Verifier
Checks the unique volume maximum over an (r, theta) grid and logs the outcome
"""

import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

import pandas as pd

BASE_DIR = Path(__file__).parent.parent
if str(BASE_DIR) not in sys.path:
    sys.path.insert(0, str(BASE_DIR))

from config.config import BATCH_CONFIG, LOGGING_CONFIG  # noqa: E402
from models.maximizer import (  # noqa: E402
    family_grid,
    find_max,
    flank_signs,
    verify_lambert_decrease,
    verify_uniqueness,
)
from models.orthoscheme import FamilyParams  # noqa: E402
from utils.errors import GeometryError  # noqa: E402
from utils.lorentz import PointClass  # noqa: E402

logger = logging.getLogger(__name__)


def check_family(family: FamilyParams) -> Dict[str, object]:
    """
    Run every check for one (r, theta)

    Args:
        family: (r, theta)

    Returns:
        Dictionary with the maximizer result and a passed flag
    """
    record = {
        "r": family.r,
        "theta": family.theta,
        "h_star": None,
        "regime_at_max": None,
        "on_boundary": None,
        "residual": None,
        "flank_left": None,
        "flank_right": None,
        "sign_changes": None,
        "lambert_ok": None,
        "passed": False,
        "detail": "",
    }
    try:
        result = find_max(family)
        left, right = flank_signs(family, result)
        uniqueness = verify_uniqueness(family)
        lambert_ok = True
        if family.r_class is PointClass.ULTRAIDEAL:
            lambert_ok = verify_lambert_decrease(family).ok

        record.update({
            "h_star": result.h_star,
            "regime_at_max": result.regime_at_max.value,
            "on_boundary": result.on_boundary,
            "residual": result.residual,
            "flank_left": left,
            "flank_right": right,
            "sign_changes": uniqueness.sign_changes,
            "lambert_ok": lambert_ok,
        })
        record["passed"] = bool(result.h_star > 1 and left > 0 > right and uniqueness.ok and lambert_ok)

    except GeometryError as e:
        logger.error(f"Error checking r={family.r}, theta={family.theta}: {e}")
        record["detail"] = str(e)

    return record


def save_run_log(stats: Dict[str, float], log_file: Path) -> None:
    """Append one summary line per run"""
    try:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        log_entry = (
            f"{datetime.now().isoformat()} | "
            f"Passed: {stats['passed']}/{stats['total']} | "
            f"Duration: {stats['duration']:.1f}s\n"
        )
        with open(log_file, "a") as f:
            f.write(log_entry)
    except OSError as e:
        logger.error(f"Error saving run log: {e}")


def main(n_r: Optional[int] = None, n_theta: Optional[int] = None,
         results_file: Optional[Path] = None, log_file: Optional[Path] = None) -> int:
    """Verify the grid; 0 when every cell passes, 1 otherwise"""
    n_r = n_r or BATCH_CONFIG["n_r"]
    n_theta = n_theta or BATCH_CONFIG["n_theta"]
    results_file = results_file or BATCH_CONFIG["results_file"]
    log_file = log_file or BATCH_CONFIG["log_file"]

    logger.info("=" * 60)
    logger.info("Starting theorem grid verification")
    logger.info("=" * 60)
    start_time = time.time()

    grid = family_grid(n_r, n_theta)
    logger.info(f"Checking {len(grid)} (r, theta) cells")

    stats = {"total": len(grid), "passed": 0, "failed": 0, "boundary": 0, "duration": 0.0}
    records = []
    for family in grid:
        record = check_family(family)
        records.append(record)
        if record["passed"]:
            stats["passed"] += 1
        else:
            stats["failed"] += 1
            logger.warning(f"Cell r={family.r:.6g}, theta={family.theta:.6g} failed {record['detail']}")
        if record["on_boundary"]:
            stats["boundary"] += 1

    stats["duration"] = time.time() - start_time

    results_file.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(records).to_csv(results_file, index=False, float_format="%.17g", lineterminator="\n")

    logger.info("=" * 60)
    logger.info(f"Verification completed: {stats['passed']}/{stats['total']} passed "
                f"({stats['boundary']} maxima on the ideal-vertex boundary)")
    logger.info(f"Duration: {stats['duration']:.1f} seconds")
    logger.info("=" * 60)

    save_run_log(stats, log_file)

    if stats["failed"]:
        logger.error(f"{stats['failed']} cells failed")
        return 1
    return 0


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format=LOGGING_CONFIG["format"])
    try:
        sys.exit(main())
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        sys.exit(1)
