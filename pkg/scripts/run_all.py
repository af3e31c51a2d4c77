"""Run every registered experiment with its defaults into one output directory."""

from __future__ import annotations

import argparse
from pathlib import Path
import sys

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT / "src") not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT / "src"))

from opnumlab.config import LabConfig
from opnumlab.experiments import EXIT_OK, REGISTRY, ExperimentConfig, run


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        type=Path,
        default=PROJECT_ROOT / "runs",
        help="Root directory receiving one sub-directory per experiment.",
    )
    parser.add_argument(
        "--skip",
        action="append",
        default=[],
        metavar="ID",
        help="Experiment to leave out (repeatable).",
    )
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    lab_config = LabConfig.from_env()
    failed = []
    for experiment_id in sorted(REGISTRY):
        if experiment_id in args.skip:
            continue
        outcome = run(ExperimentConfig(experiment_id, output_dir=args.out), lab_config)
        status = "ok" if outcome.status == EXIT_OK else outcome.error["code"]
        print(f"{experiment_id:<20} {status:<12} {outcome.run_dir}")
        if outcome.status != EXIT_OK:
            failed.append(experiment_id)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
