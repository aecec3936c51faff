"""
Orthoscheme Lab - Command Line Interface
Classify, measure and maximize the volume of truncated hyperbolic orthoschemes
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from config.config import GEOMETRY_CONFIG, LOGGING_CONFIG, get_default_seed
from models.maximizer import (
    find_max,
    flank_signs,
    verify_lambert_decrease,
    verify_uniqueness,
)
from models.metrics import closed_form, measure
from models.ortho2d import Params2D, area, classify2d, max_area
from models.orthoscheme import (
    CombinatorialType,
    FamilyParams,
    OrthoschemeParams,
    classify,
    edge03_euclidean_distance,
    ideal_vertices,
    vertex_classes,
)
from models.schlafli import aux_functions, dv_dh
from models.volume import VolumeMethod, sweep, volume
from utils.errors import DomainError, GeometryError
from utils.lorentz import PointClass
from utils.output import OutputRecord, error_payload
from utils.sweep_logger import SweepLogger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_REGIME = 3
EXIT_USAGE = 64


class UsageError(Exception):
    """Invalid command line"""


class _ParserExit(Exception):
    def __init__(self, status: int):
        super().__init__(status)
        self.status = status


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 64 instead of exiting"""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise _ParserExit(status)


def _add_family_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=float, required=True, help="Distance of v0 from the origin (r > 0)")
    angle = parser.add_mutually_exclusive_group(required=True)
    angle.add_argument("--theta", type=float, help="Angle at v2 in radians, 0 < theta < pi/2")
    angle.add_argument("--theta-deg", type=float, dest="theta_deg", help="Angle at v2 in degrees")


def _add_params_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--h", type=float, required=True, help="Height of v3 (h > 0)")
    _add_family_args(parser)


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="orthoscheme",
        description="Hyperbolic orthoschemes R(h, r, theta): classification, metrics, "
                    "Schlafli derivative, volume and its maximum",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Combinatorial type of R(h, r, theta)", allow_abbrev=False)
    _add_params_args(p)

    p = sub.add_parser("metrics", help="Edge lengths and dihedral angles", allow_abbrev=False)
    _add_params_args(p)

    p = sub.add_parser("dvdh", help="Closed-form dV/dh (h > 1)", allow_abbrev=False)
    _add_params_args(p)

    p = sub.add_parser("volume", help="Volume estimate", allow_abbrev=False)
    _add_params_args(p)
    p.add_argument("--method", choices=["auto", "schlafli", "montecarlo"], default="auto")
    p.add_argument("--samples", type=int, default=None, help="Monte-Carlo samples")
    p.add_argument("--seed", type=int, default=None, help="Monte-Carlo seed (default: ORTHO_SEED)")

    p = sub.add_parser("maximize", help="Height maximizing the volume", allow_abbrev=False)
    _add_family_args(p)
    p.add_argument("--verify", action="store_true", help="Also run the uniqueness checks")

    p = sub.add_parser("sweep", help="Regime, dV/dh and volume over a grid of heights", allow_abbrev=False)
    _add_family_args(p)
    p.add_argument("--h-min", type=float, required=True, dest="h_min")
    p.add_argument("--h-max", type=float, required=True, dest="h_max")
    p.add_argument("--steps", type=int, required=True, help="Number of grid points")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", type=Path, default=None, help="Write rows to this file instead of stdout")
    p.add_argument("--samples", type=int, default=None, help="Monte-Carlo samples for rows with h < 1")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("area2d", help="Area of the 2D analogue", allow_abbrev=False)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--r", type=float, required=True)

    return parser


def _theta(args) -> float:
    return args.theta if args.theta is not None else math.radians(args.theta_deg)


def _params(args) -> OrthoschemeParams:
    return OrthoschemeParams(h=args.h, r=args.r, theta=_theta(args))


def _seed(args) -> int:
    if args.seed is not None:
        if args.seed < 0:
            raise DomainError(f"seed must be non-negative, got {args.seed}")
        return args.seed
    try:
        return get_default_seed()
    except ValueError as e:
        raise DomainError(str(e)) from e


def cmd_classify(args) -> OutputRecord:
    params = _params(args)
    family = params.family
    h_b = family.lambert_threshold
    payload = {
        "type": classify(params).value,
        "lambert_threshold": h_b if math.isfinite(h_b) else None,
        "ideal_vertices": ideal_vertices(params),
        "vertex_classes": [cls.value for cls in vertex_classes(params)],
        "edge03_distance": edge03_euclidean_distance(params),
    }
    return OutputRecord("classify", params.to_dict(), payload)


def cmd_metrics(args) -> OutputRecord:
    params = _params(args)
    payload = measure(params).to_dict()
    if params.h > 1.0 + GEOMETRY_CONFIG["eps_class"]:
        payload["closed_form"] = closed_form(params).to_dict()
    return OutputRecord("metrics", params.to_dict(), payload)


def cmd_dvdh(args) -> OutputRecord:
    params = _params(args)
    report = dv_dh(params)
    payload = report.to_dict()
    if report.regime not in (CombinatorialType.LAMBERT_CUBE, CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX):
        payload["aux"] = aux_functions(params.family, params.h).to_dict()
    warnings = ["left limit at the ideal-vertex boundary"] if report.one_sided else []
    return OutputRecord("dvdh", params.to_dict(), payload, warnings)


def cmd_volume(args) -> OutputRecord:
    params = _params(args)
    method = {
        "auto": None,
        "schlafli": VolumeMethod.SCHLAFLI_INTEGRAL,
        "montecarlo": VolumeMethod.MONTE_CARLO,
    }[args.method]
    seed = _seed(args)
    if args.samples is not None and args.samples < 2:
        raise DomainError(f"--samples must be at least 2, got {args.samples}")
    estimate = volume(params, method=method, samples=args.samples, seed=seed)
    return OutputRecord("volume", params.to_dict(), estimate.to_dict())


def cmd_maximize(args) -> OutputRecord:
    family = FamilyParams(args.r, _theta(args))
    result = find_max(family)
    payload = result.to_dict()
    if args.verify:
        left, right = flank_signs(family, result)
        payload["flank_dv_dh"] = [left, right]
        payload["uniqueness"] = verify_uniqueness(family).to_dict()
        if family.r_class is PointClass.ULTRAIDEAL:
            payload["lambert_decrease"] = verify_lambert_decrease(family).to_dict()
    return OutputRecord("maximize", {"r": family.r, "theta": family.theta}, payload)


def cmd_sweep(args):
    family = FamilyParams(args.r, _theta(args))
    if args.steps < 1:
        raise DomainError(f"--steps must be at least 1, got {args.steps}")
    if args.samples is not None and args.samples < 2:
        raise DomainError(f"--samples must be at least 2, got {args.samples}")
    grid = np.linspace(args.h_min, args.h_max, args.steps)
    rows = sweep(family, grid, samples=args.samples, seed=_seed(args))
    sweep_logger = SweepLogger(rows)

    if args.out is not None:
        sweep_logger.write(args.out, fmt=args.format)
        params = {"r": family.r, "theta": family.theta, "h_min": args.h_min,
                  "h_max": args.h_max, "steps": args.steps, "out": str(args.out)}
        return OutputRecord("sweep", params, sweep_logger.get_summary())
    return sweep_logger.to_csv() if args.format == "csv" else sweep_logger.to_json() + "\n"


def cmd_area2d(args) -> OutputRecord:
    params = Params2D(h=args.h, r=args.r)
    report = area(params)
    payload = report.to_dict()
    payload["shape"] = classify2d(params).value
    payload["max_area"] = max_area(params.r).to_dict()
    return OutputRecord("area2d", {"h": params.h, "r": params.r}, payload)


COMMANDS = {
    "classify": cmd_classify,
    "metrics": cmd_metrics,
    "dvdh": cmd_dvdh,
    "volume": cmd_volume,
    "maximize": cmd_maximize,
    "sweep": cmd_sweep,
    "area2d": cmd_area2d,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except _ParserExit as e:
        return e.status

    logging.basicConfig(
        level=getattr(logging, LOGGING_CONFIG["level"], logging.WARNING),
        format=LOGGING_CONFIG["format"],
        stream=sys.stderr,
    )

    try:
        result = COMMANDS[args.command](args)
    except DomainError as e:
        print(error_payload(e.code, e.detail), file=sys.stderr)
        return EXIT_DOMAIN
    except GeometryError as e:
        print(error_payload(e.code, e.detail), file=sys.stderr)
        return EXIT_REGIME
    except OSError as e:
        print(error_payload("io_error", str(e)), file=sys.stderr)
        return EXIT_IO

    text = result.to_json() + "\n" if isinstance(result, OutputRecord) else result
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
