"""
DimDatum - Command Line Entry Point

Runs the verification suites, prints averaged characters, compares
spectrum files and manages the weight-multiplicity cache.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
usage error.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from datum.cache import WeightCache, atomic_write_bytes
from datum.exceptions import DatumError
from datum.lattice import parse_weight
from datum.rootsys import theorem_weight

from .config import Settings, get_settings
from .report import Report
from .suites import (
    averaged_character_document,
    run_affine,
    run_compare,
    run_identities,
    run_spectrum,
    run_theorem,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimdatum",
        description="Verify dimension-datum identities, branching data and affine root systems.",
    )
    parser.add_argument("--cache-dir", help="Weight-multiplicity cache directory")
    parser.add_argument("--jobs", type=int, help="Worker processes")
    parser.add_argument("--format", choices=["json", "text"], dest="output_format")
    parser.add_argument("--seed", type=int, help="Seed for random evaluation points")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--timings", action="store_true", help="Record per-check wall time")
    parser.add_argument("--output", type=Path, help="Write the report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="Factorization, determinant and irreducibility sweep")
    p.add_argument("--max-m", type=int, help="Defaults to the max_polynomial_rank setting")
    p.add_argument("--max-coeff", type=int, default=3)

    p = sub.add_parser("theorem", help="tau-dimension data of H1 and H2 in SU(4n+2)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--lambda", dest="lam", default="1,0,-1")
    p.add_argument("--cutoff", type=int)

    p = sub.add_parser("chars", help="Print F_{Phi,lambda,W} as JSON")
    p.add_argument("--system", required=True, help="Root system label, e.g. A2 or C1+D2")
    p.add_argument("--weight", required=True)
    p.add_argument("--average", choices=["full", "own"], default="full")

    p = sub.add_parser("spectrum", help="Laplace spectrum of a homogeneous bundle")
    p.add_argument("--group", required=True, help="e.g. SU6")
    p.add_argument("--subgroup", required=True, choices=["H1", "H2", "torus", "G"])
    fiber = p.add_mutually_exclusive_group()
    fiber.add_argument("--tau", help="Highest weight of the fiber in subgroup coordinates")
    fiber.add_argument(
        "--lambda",
        dest="lam",
        help="Theorem weight; becomes lambda on H1 and lambda' on H2",
    )
    p.add_argument("--cutoff", required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("compare", help="Compare two spectrum (or other JSON) files")
    p.add_argument("left", type=Path)
    p.add_argument("right", type=Path)

    p = sub.add_parser("affine", help="Affine root system checks")
    p.add_argument("--selector", help="e.g. m*A2n:BCn@m=2,n=1")
    p.add_argument(
        "--check",
        action="append",
        choices=["validate", "density", "integration"],
        help="Repeatable; defaults to validate",
    )
    p.add_argument("--points", type=int)
    p.add_argument("--dimension", type=int, default=5)

    p = sub.add_parser("cache", help="Inspect or clear the weight-multiplicity cache")
    p.add_argument("action", choices=["stats", "clear"])
    return parser


def resolve_settings(args: argparse.Namespace) -> Settings:
    """Environment settings with command-line flags layered on top."""
    update: dict[str, Any] = {}
    for flag in ("cache_dir", "jobs", "output_format", "seed", "log_level"):
        value = getattr(args, flag, None)
        if value is not None:
            update[flag] = value
    settings = get_settings().model_copy(update=update)
    if settings.jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {settings.jobs}")
    if settings.seed < 0:
        raise ValueError(f"--seed must be nonnegative, got {settings.seed}")
    return settings


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    atomic_write_bytes(output, text.encode("utf-8"))
    logger.info(f"Wrote report to {output}")


def _json_text(document: Any) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _theorem_tau(args: argparse.Namespace) -> Optional[tuple[int, ...]]:
    """--tau as given, or --lambda mapped to the subgroup's own weight."""
    if args.tau is not None:
        return parse_weight(args.tau)
    if args.lam is None:
        return None
    lam = parse_weight(args.lam)
    return theorem_weight(lam) if args.subgroup == "H2" else lam


def dispatch(args: argparse.Namespace, settings: Settings) -> int:
    """Run one subcommand and emit its output; returns the exit code."""
    report: Optional[Report] = None

    if args.command == "identities":
        max_m = args.max_m if args.max_m is not None else settings.max_polynomial_rank
        report = run_identities(max_m, args.max_coeff, settings, args.timings)
    elif args.command == "theorem":
        cutoff = args.cutoff if args.cutoff is not None else settings.theorem_cutoff
        report = run_theorem(args.n, parse_weight(args.lam), cutoff, settings, args.timings)
    elif args.command == "chars":
        document = averaged_character_document(args.system, parse_weight(args.weight), args.average)
        _emit(_json_text(document), args.output)
        return EXIT_OK
    elif args.command == "spectrum":
        report = run_spectrum(
            args.group,
            args.subgroup,
            _theorem_tau(args),
            Fraction(args.cutoff),
            args.out,
            settings,
            args.timings,
        )
    elif args.command == "compare":
        report = run_compare(args.left, args.right)
    elif args.command == "affine":
        report = run_affine(
            args.selector,
            args.check or ["validate"],
            settings,
            points=args.points,
            dimension=args.dimension,
            timings=args.timings,
        )
    elif args.command == "cache":
        cache = WeightCache(settings.cache_dir)
        if args.action == "stats":
            document = {"schema_version": 1, **cache.get_stats()}
        else:
            document = {"schema_version": 1, "removed": cache.clear(), "cache_dir": str(cache.cache_dir)}
        _emit(_json_text(document), args.output)
        return EXIT_OK

    assert report is not None
    _emit(report.render(settings.output_format), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = resolve_settings(args)
    except ValueError as e:
        print(f"dimdatum: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if settings.debug else getattr(logging, settings.log_level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logger.debug(f"Running {args.command} with jobs={settings.jobs} seed={settings.seed}")

    try:
        return dispatch(args, settings)
    except (DatumError, ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"dimdatum {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
