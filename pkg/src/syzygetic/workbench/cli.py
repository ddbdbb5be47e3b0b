"""Command line: ``syzygetic run --config PATH`` and ``syzygetic validate --config PATH``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .report import emit_report
from .tasks import TaskError, run

EXIT_OK = 0
EXIT_TASK_ERROR = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syzygetic", description="Run graded commutative algebra experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the task described by a config file")
    p_run.add_argument("--config", required=True, help="path to a JSON config")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--jobs", type=int, default=None,
                       help="worker processes for sweeps (default: available CPUs)")
    p_run.add_argument("--out", default=None,
                       help="directory for report.json, summary.csv and timing.json")

    p_val = sub.add_parser("validate", help="check a config without running it")
    p_val.add_argument("--config", required=True, help="path to a JSON config")
    return parser


def _fail(payload: dict, code: int) -> int:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def cmd_validate(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        return _fail(exc.to_json(), EXIT_CONFIG_ERROR)
    sys.stdout.write(json.dumps({"valid": True, "task": cfg.task}, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("seed must be nonnegative", "--seed")
            cfg = cfg.with_seed(args.seed)
    except ConfigError as exc:
        return _fail(exc.to_json(), EXIT_CONFIG_ERROR)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if jobs < 1:
        return _fail({"error": "config", "message": "--jobs must be positive", "location": "--jobs",
                      "line": None}, EXIT_CONFIG_ERROR)
    try:
        report = run(cfg, jobs=jobs)
    except TaskError as exc:
        return _fail(exc.to_json(), EXIT_TASK_ERROR)
    if args.out:
        out = Path(args.out)
        paths = dict(json_path=out / "report.json", csv_path=out / "summary.csv", timing_path=out / "timing.json")
    elif cfg.output:
        js = cfg.output.get("json")
        paths = dict(json_path=js, csv_path=cfg.output.get("csv"),
                     timing_path=(str(Path(js).with_suffix("")) + ".timing.json") if js else None)
    else:
        sys.stdout.write(report.dumps())
        return EXIT_OK
    try:
        written = emit_report(report, **paths)
    except OSError as exc:
        return _fail({"error": "output", "message": str(exc)}, EXIT_TASK_ERROR)
    sys.stdout.write(json.dumps({"written": [str(p) for p in written]}, sort_keys=True) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args)
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
