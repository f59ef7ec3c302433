"""Command-line front end: point reports, sweeps and self-validation.

Exit codes: 0 success, 2 config error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .config import ParameterError, read_config, run_settings_from_config
from .sweep import (rows_to_csv, rows_to_json, run_point, run_sweep,
                    run_validate, sweep_spec_from_config, write_artifact)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="owcrelay",
        description="Outage analysis of a hybrid RF/optical backhaul relayed "
                    "into an indoor multi-LED cell")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=False, with_format=None):
        p.add_argument("--config", required=True, help="path to the scenario config")
        p.add_argument("--samples", type=int, default=None,
                       help="Monte Carlo samples (overrides [run] samples)")
        p.add_argument("--seed", type=int, default=None,
                       help="Monte Carlo seed (overrides [run] seed)")
        p.add_argument("--workers", type=int, default=None,
                       help="worker threads (overrides [run] workers)")
        if with_out:
            p.add_argument("--out", default=None, help="output file (default: stdout)")
        if with_format:
            p.add_argument("--format", choices=with_format, default=with_format[0])

    point = sub.add_parser("point", help="evaluate a single scenario")
    common(point, with_format=("text", "json", "csv"))
    point.add_argument("--fso-only-baseline", action="store_true", default=True,
                       help="include the no-radio-backup comparison (default on)")

    swp = sub.add_parser("sweep", help="run the configured parameter sweep")
    common(swp, with_out=True, with_format=("csv", "json"))
    swp.add_argument("--fso-only-baseline", action="store_true",
                     help="also compute the no-radio-backup comparison column")

    val = sub.add_parser("validate", help="run analytic-vs-MC and invariant checks")
    common(val)
    return parser


def _settings(args, cfg):
    run = run_settings_from_config(cfg)
    if args.samples is not None:
        run = replace(run, samples=args.samples)
    if args.seed is not None:
        run = replace(run, seed=args.seed)
    if getattr(args, "workers", None) is not None:
        run = replace(run, workers=args.workers)
    return run


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = read_config(args.config)
        run = _settings(args, cfg)

        if args.command == "point":
            report = run_point(cfg, run)
            if args.format == "json":
                print(json.dumps(report, indent=2))
            elif args.format == "csv":
                row = {key: report.get(key) for key in
                       ("mu1_db", "mu2_db", "rytov_var", "n_leds", "pt_w", "L_m",
                        "gamma_th_db", "pout_analytic", "pout_fso_only", "pout_floor",
                        "pout_mc", "mc_ci95", "mc_samples")}
                print(rows_to_csv([row]), end="")
            else:
                for key, value in report.items():
                    print(f"{key} = {value}")
            return EXIT_OK

        if args.command == "sweep":
            spec = sweep_spec_from_config(cfg)
            if spec is None:
                raise ParameterError("sweep", "config has no [sweep] section")
            if args.fso_only_baseline:
                spec = replace(spec, fso_only_baseline=True)
            rows = run_sweep(cfg, run, spec)
            if args.out:
                write_artifact(rows, args.out, args.format)
            else:
                text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
                print(text, end="")
            return EXIT_OK

        # validate
        checks = run_validate(cfg, run)
        failed = [c for c in checks if not c["passed"]]
        for c in checks:
            status = "PASS" if c["passed"] else "FAIL"
            print(f"[{status}] {c['name']}: {c['detail']}")
        if failed:
            print(f"{len(failed)} of {len(checks)} checks failed", file=sys.stderr)
            return EXIT_VALIDATION
        print(f"all {len(checks)} checks passed")
        return EXIT_OK

    except ParameterError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
