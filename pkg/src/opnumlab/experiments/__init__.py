"""Experiment registry, runner and artifact writers."""

from .output import CSV_COLUMNS, Row, RunResult, git_blob_hash, write_csv, write_json, write_manifest
from .params import parse_expression, parse_param, parse_params, parse_value, merge_params
from .registry import REGISTRY, Experiment, experiment, get_experiment
from .runner import EXIT_FAILED, EXIT_OK, FORMATS, ExperimentConfig, RunOutcome, run

__all__ = [
    "CSV_COLUMNS",
    "EXIT_FAILED",
    "EXIT_OK",
    "Experiment",
    "ExperimentConfig",
    "FORMATS",
    "REGISTRY",
    "Row",
    "RunOutcome",
    "RunResult",
    "experiment",
    "get_experiment",
    "git_blob_hash",
    "merge_params",
    "parse_expression",
    "parse_param",
    "parse_params",
    "parse_value",
    "run",
    "write_csv",
    "write_json",
    "write_manifest",
]
