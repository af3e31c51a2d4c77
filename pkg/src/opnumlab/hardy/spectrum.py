"""Singular values, eigenvalues and stabilization certificates."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import linalg

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import DecompositionError, DomainError
from .matrix import OperatorMatrix

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class SingularSpectrum:
    """Non-increasing singular values with truncation metadata.

    Attributes
    ----------
    values:
        ``a_1 >= a_2 >= ...``.
    truncation:
        Matrix side the values were computed at.
    stabilized:
        Per-value flag: relative change under truncation halving below the
        configured tolerance and above the round-off floor.
    relative_change:
        Per-value relative change against the half truncation (``inf`` where
        no comparison exists).
    certificate:
        Largest relative change among the comparable values.
    tail_budget:
        Perturbation budget inherited from the matrix tails.
    blocks:
        Optional provenance (block index) of every value.
    """

    values: np.ndarray
    truncation: int
    stabilized: np.ndarray
    relative_change: np.ndarray
    certificate: float
    tail_budget: float = 0.0
    blocks: Optional[np.ndarray] = None
    extras: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_values(cls, values: Sequence[float], truncation: int | None = None) -> "SingularSpectrum":
        """Wrap exact values (all flagged stabilized), sorted non-increasing."""
        ordered = np.sort(np.asarray(values, dtype=float))[::-1]
        return cls(
            values=ordered,
            truncation=len(ordered) if truncation is None else truncation,
            stabilized=np.ones(len(ordered), dtype=bool),
            relative_change=np.zeros(len(ordered)),
            certificate=0.0,
        )

    def __len__(self) -> int:
        return len(self.values)

    def stabilized_count(self) -> int:
        """Length of the leading run of stabilized values."""
        if np.all(self.stabilized):
            return len(self.values)
        return int(np.argmin(self.stabilized))

    def stabilized_prefix(self) -> np.ndarray:
        return self.values[: self.stabilized_count()]

    def to_csv(self, path: Path) -> Path:
        """Write columns ``n, a_n, stabilized, tail_budget`` (plus ``block``)."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        header = ["n", "a_n", "stabilized", "tail_budget"]
        if self.blocks is not None:
            header.append("block")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for index, value in enumerate(self.values):
                row = [index + 1, repr(float(value)), str(bool(self.stabilized[index])).lower(), repr(self.tail_budget)]
                if self.blocks is not None:
                    row.append(int(self.blocks[index]))
                writer.writerow(row)
        return path


def noise_floor(leading: float, config: LabConfig | None = None) -> float:
    cfg = config or DEFAULT_CONFIG
    return cfg.noise_factor * np.finfo(float).eps * leading


def certify(
    values: np.ndarray,
    coarse_values: np.ndarray,
    tail_budget: float = 0.0,
    config: LabConfig | None = None,
    floor: float | None = None,
) -> SingularSpectrum:
    """Compare ``values`` with the spectrum of the half truncation.

    A value is stabilized when its relative change is below
    ``config.stabilization_tolerance`` and it lies above the round-off floor,
    ``noise_floor(a_1)`` unless ``floor`` is given.
    """
    cfg = config or DEFAULT_CONFIG
    values = np.asarray(values, dtype=float)
    coarse = np.asarray(coarse_values, dtype=float)
    change = np.full(len(values), np.inf)
    shared = min(len(values), len(coarse))
    if shared:
        reference = values[:shared]
        with np.errstate(divide="ignore", invalid="ignore"):
            change[:shared] = np.where(
                reference > 0, np.abs(reference - coarse[:shared]) / reference, np.inf
            )
    if floor is None:
        floor = noise_floor(values[0], cfg) if len(values) else 0.0
    stabilized = (change < cfg.stabilization_tolerance) & (values > floor)
    finite = change[np.isfinite(change)]
    certificate = float(np.max(finite)) if len(finite) else float("inf")
    return SingularSpectrum(
        values=values,
        truncation=0,
        stabilized=stabilized,
        relative_change=change,
        certificate=certificate,
        tail_budget=tail_budget,
    )


def dense_singular_values(data: np.ndarray) -> np.ndarray:
    if data.size == 0:
        return np.zeros(0)
    try:
        return linalg.svdvals(data)
    except (linalg.LinAlgError, ValueError) as exc:
        raise DecompositionError("Singular value decomposition failed", shape=data.shape) from exc


def singular_values(
    matrix: OperatorMatrix, n_keep: int, config: LabConfig | None = None
) -> SingularSpectrum:
    """Leading ``n_keep`` singular values, certified against the ``N/2`` truncation."""
    size = matrix.truncation
    if n_keep > size:
        raise DomainError("Cannot keep more values than the truncation", n_keep=n_keep, N=size)
    full = dense_singular_values(matrix.data)[:n_keep]
    coarse = dense_singular_values(matrix.leading_block(size // 2))[:n_keep]
    spectrum = certify(full, coarse, matrix.tail_budget(), config)
    spectrum.truncation = size
    logger.debug(
        "Spectrum N=%d kept=%d stabilized=%d certificate=%.3g",
        size, n_keep, spectrum.stabilized_count(), spectrum.certificate,
    )
    return spectrum


def eigenvalues(matrix: OperatorMatrix, n_keep: int) -> np.ndarray:
    """Eigenvalues of the truncation with the largest moduli, non-increasing modulus."""
    if matrix.data.shape[0] != matrix.data.shape[1]:
        raise DomainError("Eigenvalues need a square matrix", shape=matrix.data.shape)
    try:
        values = linalg.eigvals(matrix.data)
    except (linalg.LinAlgError, ValueError) as exc:
        raise DecompositionError("Eigenvalue decomposition failed", shape=matrix.data.shape) from exc
    order = np.argsort(-np.abs(values), kind="stable")
    return values[order][:n_keep]


def weyl_check(spectrum: SingularSpectrum, eigs: np.ndarray, slack: float = 1e-9) -> bool:
    """Weyl's inequalities ``prod_{j<=k} |lambda_j| <= prod_{j<=k} a_j`` and ``a_1 a_n >= |lambda_{2n}|^2``."""
    moduli = np.abs(np.asarray(eigs))
    count = min(len(moduli), len(spectrum.values))
    a = spectrum.values[:count]
    for k in range(1, count + 1):
        if np.prod(moduli[:k]) > np.prod(a[:k]) * (1.0 + slack) + slack:
            return False
    for n in range(1, count // 2 + 1):
        if moduli[2 * n - 1] ** 2 > spectrum.values[0] * a[n - 1] * (1.0 + slack) + slack:
            return False
    return True
