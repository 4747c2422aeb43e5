"""Command-line entry point: run verification suites and write reports.

Usage:  verify <suite> [--config FILE] [--grid N1,N2] [--out report.csv]
                       [--seed S] [--json]

Exit code 0 when every check passes, 1 on any numerical failure (the
report is still written), 2 on usage errors.  The environment variable
BIQUAT_TOL overrides the algebraic tolerance (default 1e-12).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .harness import SUITE_NAMES, SuiteConfig, run_suite


def _parse_grids(text: str):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if len(parts) < 2:
        raise argparse.ArgumentTypeError("need at least two grid sizes for convergence pairs")
    if any(p < 5 for p in parts):
        raise argparse.ArgumentTypeError("grid sizes must be at least 5")
    return parts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Run the biquaternion-calculus verification suites.")
    p.add_argument("suite", choices=SUITE_NAMES, help="suite name")
    p.add_argument("--config", metavar="FILE", default=None,
                   help="JSON file with SuiteConfig fields")
    p.add_argument("--grid", metavar="N1,N2", type=_parse_grids, default=None,
                   help="override the convergence grid pair, e.g. 17,33")
    p.add_argument("--out", metavar="PATH", default="report.csv",
                   help="CSV report path (default report.csv)")
    p.add_argument("--seed", type=int, default=None, help="override the random seed")
    p.add_argument("--json", action="store_true",
                   help="print the report as JSON instead of per-check lines")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = SuiteConfig.from_json(args.config) if args.config else SuiteConfig()
    except (OSError, ValueError, json.JSONDecodeError) as err:
        print(f"verify: bad config: {err}", file=sys.stderr)
        return 2
    overrides = {"suite": args.suite}
    if args.grid is not None:
        overrides["grids"] = args.grid
    if args.seed is not None:
        overrides["seed"] = args.seed
    cfg = replace(cfg, **overrides)

    try:
        report = run_suite(cfg)
    except ValueError as err:
        print(f"verify: {err}", file=sys.stderr)
        return 2
    report.write_csv(args.out)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        report.print_lines()
        print(f"report written to {args.out}")
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
