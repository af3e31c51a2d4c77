"""Deterministic CSV, JSON and manifest writers for experiment runs."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence

import numpy as np

from ..hardy.spectrum import SingularSpectrum

CSV_COLUMNS = ("experiment", "series", "n", "value", "stabilized", "proxy")


@dataclass(slots=True)
class Row:
    series: str
    n: int
    value: float
    stabilized: bool = True
    proxy: bool = False


@dataclass(slots=True)
class RunResult:
    """Rows for the CSV table, a summary mapping for the JSON report and the tail budget of every spectrum series."""

    rows: List[Row] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    tail_budgets: Dict[str, float] = field(default_factory=dict)

    def add_values(
        self,
        series: str,
        values: Iterable[float],
        stabilized: Sequence[bool] | None = None,
        proxy: bool = False,
        start: int = 1,
    ) -> None:
        for offset, value in enumerate(values):
            flag = True if stabilized is None else bool(stabilized[offset])
            self.rows.append(Row(series, start + offset, float(value), flag, proxy))

    def add_points(
        self, series: str, indices: Iterable[int], values: Iterable[float], proxy: bool = False
    ) -> None:
        for n, value in zip(indices, values):
            self.rows.append(Row(series, int(n), float(value), True, proxy))

    def add_spectrum(self, series: str, spectrum: SingularSpectrum) -> None:
        self.add_values(series, spectrum.values, spectrum.stabilized)
        self.tail_budgets[series] = float(spectrum.tail_budget)
        if spectrum.blocks is not None:
            self.add_values(f"{series}:block", spectrum.blocks, spectrum.stabilized)


def jsonable(value: Any) -> Any:
    """Convert numpy scalars, arrays and non-finite floats for ``json.dumps``."""
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    return value


def dumps(payload: Any) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


def git_blob_hash(data: bytes) -> str:
    """SHA-1 of ``blob <size>\\0<data>``, the hash git gives the same content."""
    header = f"blob {len(data)}\0".encode("utf-8")
    return hashlib.sha1(header + data).hexdigest()


def _format_value(value: float) -> str:
    return repr(float(value)) if math.isfinite(value) else ("nan" if math.isnan(value) else repr(value))


def write_csv(path: Path, experiment: str, rows: Iterable[Row]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    experiment,
                    row.series,
                    row.n,
                    _format_value(row.value),
                    str(row.stabilized).lower(),
                    str(row.proxy).lower(),
                ]
            )
    return path


def write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps(payload))
    return path


def write_manifest(
    run_dir: Path,
    experiment: str,
    parameters: Mapping[str, Any],
    caps: Mapping[str, Any],
    files: Sequence[Path],
    version: str,
    tail_budgets: Mapping[str, float] | None = None,
) -> Path:
    """Record inputs, their content hash, the tail budget of every spectrum and the hashes of every written file."""
    inputs = {"experiment": experiment, "parameters": parameters, "caps": caps}
    manifest = {
        "experiment": experiment,
        "version": version,
        "parameters": parameters,
        "caps": caps,
        "input_hash": git_blob_hash(dumps(inputs).encode("utf-8")),
        "tail_budgets": dict(tail_budgets or {}),
        "files": {path.name: git_blob_hash(path.read_bytes()) for path in sorted(files)},
    }
    return write_json(run_dir / "manifest.json", manifest)
