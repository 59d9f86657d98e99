"""Command line entry point.

Exit codes: 0 success, 2 config error, 3 numeric failure, 4 comparison mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, HorizonError, NumericFailure
from .scenario import compare, galilean_report, load_config, parse_range, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_MISMATCH = 4


def build_parser():
    p = argparse.ArgumentParser(
        prog="bec-rindler",
        description="Particle creation in an accelerated cavity for photons and BEC phonons.",
    )
    p.add_argument("--config", required=True, metavar="PATH", help="JSON scenario file")
    p.add_argument("--sweep", metavar="LO:HI:N", help="log-spaced h values, overriding the config")
    p.add_argument("--cutoff", type=int, metavar="N", help="number of modes per basis")
    p.add_argument("--tol", type=float, metavar="X", help="absolute quadrature tolerance")
    p.add_argument("--out", metavar="DIR", help="directory for CSV and JSON outputs")
    p.add_argument("--compare", metavar="PATH2", help="second scenario to compare against")
    p.add_argument(
        "--galilean",
        metavar="LO:HI:N",
        help="also tabulate Rindler-minus-Galilean residuals over log-spaced eps",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
    return p


def _apply_overrides(config, args):
    changes = {}
    if args.sweep:
        changes["sweep"] = parse_range(args.sweep)
    if args.cutoff is not None:
        changes["cutoff"] = args.cutoff
    if args.tol is not None:
        changes["tol"] = args.tol
    if args.out:
        changes["out"] = args.out
    return replace(config, **changes) if changes else config


def _print_sweep(result):
    print(f"medium={result.config.medium} c_eff={result.config.c_eff!r} L={result.config.L!r} cutoff={result.config.cutoff}")
    print(f"{'h':>12} {'total_N':>14} {'res_canon':>10} {'res_sym':>10} {'K':>3}")
    for r in result.rows:
        print(f"{r.h:12.5g} {r.total_N:14.6e} {r.residual_canonical:10.2e} {r.residual_symmetry:10.2e} {r.trusted_block:3d}")
    if result.slope is not None:
        print(f"log-log slope of total_N vs h: {result.slope:.4f}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.compare:
            other = _apply_overrides(load_config(args.compare), args)
            report = compare(config, other, jobs=args.jobs)
            text = json.dumps(report.to_dict(), indent=2)
            print(text)
            if config.out:
                Path(config.out).mkdir(parents=True, exist_ok=True)
                (Path(config.out) / "compare.json").write_text(text)
            return EXIT_OK if report.match else EXIT_MISMATCH

        result = run(config, jobs=args.jobs)
        _print_sweep(result)
        if args.galilean:
            report = galilean_report(config, parse_range(args.galilean))
            print(json.dumps(report.to_dict(), indent=2))
            if config.out:
                (Path(config.out) / "galilean.csv").write_text(report.to_csv())
                (Path(config.out) / "galilean.json").write_text(json.dumps(report.to_dict(), indent=2))
    except (ConfigError, HorizonError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
