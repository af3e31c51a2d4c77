"""Run one registered experiment and write its artifacts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Tuple

from .. import __version__
from ..config import LabConfig
from ..errors import ConfigError, LabError
from .output import write_csv, write_json, write_manifest
from .params import merge_params
from .registry import get_experiment

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
EXIT_OK = 0
EXIT_FAILED = 2


@dataclass(slots=True)
class ExperimentConfig:
    """Everything that determines one run.

    Attributes
    ----------
    experiment_id:
        Registry key.
    overrides:
        Parameter overrides; keys unknown to the experiment are rejected.
    n_max, d_max, k_max:
        Truncation caps (matrix side, two-variable degree, block count);
        ``None`` keeps the value of the lab configuration.
    output_dir:
        Root of the run directories; the run writes to ``<output_dir>/<id>``.
    formats:
        Subset of ``("csv", "json")``.
    """

    experiment_id: str
    overrides: Dict[str, Any] = field(default_factory=dict)
    n_max: int | None = None
    d_max: int | None = None
    k_max: int | None = None
    output_dir: Path | None = None
    formats: Tuple[str, ...] = FORMATS

    def __post_init__(self) -> None:
        unknown = sorted(set(self.formats) - set(FORMATS))
        if unknown or not self.formats:
            raise ConfigError(f"Unsupported output formats: {', '.join(unknown) or 'none given'}")

    def caps(self) -> Dict[str, int]:
        """Caps set on this run, without the ones left to the lab configuration."""
        items = {"n_max": self.n_max, "d_max": self.d_max, "k_max": self.k_max}
        return {key: value for key, value in items.items() if value is not None}


@dataclass(slots=True)
class RunOutcome:
    status: int
    run_dir: Path
    files: List[Path] = field(default_factory=list)
    error: Dict[str, Any] | None = None


def run(config: ExperimentConfig, lab_config: LabConfig | None = None) -> RunOutcome:
    """Execute ``config`` and write results, an ``error.json`` report on failure, and a manifest.

    Returns
    -------
    A :class:`RunOutcome` with status 0 on success and 2 when a
    :class:`~opnumlab.errors.LabError` aborted the run.
    """
    base = lab_config or LabConfig.from_env()
    overrides: Dict[str, Any] = dict(config.caps())
    if config.output_dir is not None:
        overrides["output_dir"] = config.output_dir
    cfg = base.with_overrides(overrides)
    caps = {"n_max": cfg.n_max, "d_max": cfg.d_max, "k_max": cfg.k_max}
    run_dir = cfg.resolved_output_dir() / config.experiment_id
    run_dir.mkdir(parents=True, exist_ok=True)

    parameters: Dict[str, Any] = dict(config.overrides)
    files: List[Path] = []
    try:
        experiment = get_experiment(config.experiment_id)
        parameters = merge_params(experiment.defaults, config.overrides, experiment.id)
        logger.info("Running %s with %s", experiment.id, parameters)
        result = experiment.func(parameters, cfg)
    except LabError as exc:
        logger.error("Experiment %s failed: %s", config.experiment_id, exc.message)
        report = exc.to_dict()
        report["experiment"] = config.experiment_id
        files.append(write_json(run_dir / "error.json", report))
        files.append(
            write_manifest(run_dir, config.experiment_id, parameters, caps, files, __version__)
        )
        return RunOutcome(EXIT_FAILED, run_dir, files, report)

    if "csv" in config.formats:
        files.append(write_csv(run_dir / "results.csv", experiment.id, result.rows))
    if "json" in config.formats:
        payload = {"experiment": experiment.id, "parameters": parameters, "summary": result.summary}
        files.append(write_json(run_dir / "results.json", payload))
    files.append(
        write_manifest(run_dir, experiment.id, parameters, caps, files, __version__, result.tail_budgets)
    )
    logger.info("Wrote %d files to %s", len(files), run_dir)
    return RunOutcome(EXIT_OK, run_dir, files)
