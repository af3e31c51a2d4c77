"""Command line entry point for running opnumlab experiments."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Iterable, Tuple

from .config import LabConfig, load_yaml
from .errors import LabError
from .experiments import (
    EXIT_FAILED,
    EXIT_OK,
    REGISTRY,
    ExperimentConfig,
    get_experiment,
    parse_params,
    run,
)
from .experiments.output import jsonable


def _formats(raw: str) -> Tuple[str, ...]:
    return tuple(item.strip() for item in raw.split(",") if item.strip())


def _lab_config(path: Path | None) -> LabConfig:
    base = LabConfig.from_env()
    if path is None:
        return base
    return load_yaml(path, base)


def _run(args: argparse.Namespace) -> int:
    try:
        lab_config = _lab_config(args.config)
        exp_config = ExperimentConfig(
            experiment_id=args.experiment,
            overrides=parse_params(args.param),
            output_dir=args.out,
            formats=_formats(args.format),
        )
    except LabError as exc:
        print(f"Error: {exc.message}")
        return EXIT_FAILED

    outcome = run(exp_config, lab_config)
    if outcome.status != EXIT_OK:
        print(f"Error: {outcome.error['message'] if outcome.error else 'run failed'}")
        print(f"  Report: {outcome.run_dir / 'error.json'}")
        return outcome.status

    print(f"Experiment '{args.experiment}' finished")
    print(f"  Run directory: {outcome.run_dir}")
    for path in outcome.files:
        print(f"  Wrote {path.name}")
    return EXIT_OK


def _list(args: argparse.Namespace) -> int:
    width = max(len(key) for key in REGISTRY)
    print(f"Registered experiments ({len(REGISTRY)}):")
    for key in sorted(REGISTRY):
        print(f"  {key.ljust(width)}  {REGISTRY[key].description}")
    return EXIT_OK


def _show(args: argparse.Namespace) -> int:
    try:
        entry = get_experiment(args.experiment)
    except LabError as exc:
        print(f"Error: {exc.message}")
        return EXIT_FAILED
    print(f"{entry.id}: {entry.description}")
    if not entry.defaults:
        print("  (no parameters)")
    for key in sorted(entry.defaults):
        print(f"  {key} = {jsonable(entry.defaults[key])}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opnum-lab", description=__doc__)
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress to stderr")

    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run one experiment and write its artifacts")
    run_parser.add_argument("experiment", help="Experiment identifier (see 'opnum-lab list')")
    run_parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a parameter; values accept YAML scalars, lists and e, pi with / (repeatable)",
    )
    run_parser.add_argument("--out", type=Path, help="Root directory for run outputs")
    run_parser.add_argument("--format", default="csv,json", help="Comma separated output formats")
    run_parser.add_argument("--config", type=Path, help="YAML file with configuration overrides")
    run_parser.add_argument(
        "--verbose", "-v", action="store_true", default=argparse.SUPPRESS, help="Log progress to stderr"
    )
    run_parser.set_defaults(func=_run)

    list_parser = subparsers.add_parser("list", help="List registered experiments")
    list_parser.set_defaults(func=_list)

    show_parser = subparsers.add_parser("show", help="Show the parameter defaults of an experiment")
    show_parser.add_argument("experiment", help="Experiment identifier")
    show_parser.set_defaults(func=_show)

    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover - CLI entry point
    sys.exit(main())
