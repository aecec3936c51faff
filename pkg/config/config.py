# Configuration file for Orthoscheme Lab
import os
from pathlib import Path
from dotenv import load_dotenv

# Base directories
BASE_DIR = Path(__file__).parent.parent
DATA_DIR = BASE_DIR / "data"
LOGS_DIR = BASE_DIR / "logs"

# Load environment variables from .env file
load_dotenv(BASE_DIR / ".env")

# Default Monte-Carlo seed when ORTHO_SEED is not set
DEFAULT_SEED = 20140101

# Geometry tolerances
GEOMETRY_CONFIG = {
    "eps_class": 1e-10,       # |r-1|, |h-1|, |h-h_b| below this snap to the ideal case
    "norm_tol": 1e-12,        # <v,v> = -1 / 0 / +1 checks
    "incidence_tol": 1e-10,   # <v_i, w_j> = 0 for i != j
    "clamp_tol": 1e-12,       # arccos / arccosh arguments may overshoot by this much
}

# Maximizer settings
MAXIMIZER_CONFIG = {
    "delta0": 1e-9,           # lower bracket end is 1 + delta0
    "xtol": 1e-14,
    "rtol": 8.9e-16,          # smallest rtol scipy's bisect accepts
    "maxiter": 400,
    "max_expand": 200,        # doublings of the upper bracket end
    "flank_delta": 1e-6,
    "uniqueness_grid": 10_000,
    "lambert_samples": 100,
    "lambert_h_max": 1e3,
}

# Volume settings
VOLUME_CONFIG = {
    "quad_tol": 1e-9,
    "quad_rel_tol": 1e-11,
    "quad_limit": 500,
    "tail_split": 10.0,       # [H, inf) is integrated in u = 1/t
    "mc_samples": 1_000_000,
    "mc_chunk": 250_000,
    "mc_workers": 1,
    "sweep_mc_samples": 200_000,
}

# Output settings
OUTPUT_CONFIG = {
    "schema_version": "1.0",
    "csv_columns": ["h", "regime", "dv_dh", "volume", "method", "error"],
    "float_format": "%.17g",
}

# Batch verification
BATCH_CONFIG = {
    "n_r": 20,
    "n_theta": 20,
    "results_file": DATA_DIR / "theorem_grid.csv",
    "log_file": LOGS_DIR / "verify_grid.log",
}

# Logging
LOGGING_CONFIG = {
    "level": os.getenv("ORTHO_LOG_LEVEL", "WARNING").upper(),
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
}


def get_default_seed() -> int:
    """
    Monte-Carlo seed from ORTHO_SEED, read at call time

    Returns:
        Seed as a non-negative integer

    Raises:
        ValueError: If ORTHO_SEED is set but is not a non-negative integer
    """
    raw = os.getenv("ORTHO_SEED", "").strip()
    if not raw:
        return DEFAULT_SEED
    seed = int(raw)
    if seed < 0:
        raise ValueError(f"ORTHO_SEED must be non-negative, got {seed}")
    return seed
