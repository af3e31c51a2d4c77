"""Truncated matrices of weighted composition operators on the Hardy space."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import BudgetError, DomainError
from ..parallel import parallel_map
from ..symbols.evaluate import evaluate
from ..symbols.series import (
    circle_points,
    coefficients_from_samples,
    default_radius,
    sampling_plan,
    sup_bound,
)
from ..symbols.spec import SymbolSpec
from .quadrature import boundary_image, boundary_modulus, contact_at_real_points, graded_nodes, uniform_nodes

logger = logging.getLogger(__name__)

_CHUNK_ELEMENTS = 1 << 22
_IMAGE_LEVELS = 200
_IMAGE_SAMPLES = 4096


class Basis(str, Enum):
    """Orthonormal bases: ``z^n`` for Hardy, ``sqrt(n + 1) z^n`` for Bergman."""

    HARDY = "hardy"
    BERGMAN = "bergman"


@dataclass(slots=True)
class OperatorMatrix:
    """Dense ``N x N`` matrix of ``M_w C_phi`` between two bases.

    Column ``n`` holds the first ``N`` Hardy coefficients of the image of the
    ``n``-th domain basis vector. ``column_tails[n]`` bounds the Hardy norm of
    the discarded coefficients of that column, so the image norm is at most
    the column norm plus the tail.
    """

    data: np.ndarray
    domain: Basis
    codomain: Basis
    truncation: int
    column_tails: np.ndarray
    radius: float
    samples: int
    symbol: Dict[str, Any] = field(default_factory=dict)

    def tail_budget(self) -> float:
        """Hilbert-Schmidt size of the discarded rows, a perturbation budget for the spectrum."""
        return float(np.sqrt(np.sum(self.column_tails**2)))

    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.data, axis=0)

    def column_norm_partial_sums(self) -> np.ndarray:
        """Cumulative sums of squared column norms, ``sum_{k <= n} ||col_k||^2``."""
        return np.cumsum(self.column_norms() ** 2)

    def leading_block(self, size: int) -> np.ndarray:
        return self.data[:size, :size]


def _column_chunks(size: int, samples: int) -> List[Tuple[int, int]]:
    width = max(1, _CHUNK_ELEMENTS // samples)
    return [(start, min(size, start + width)) for start in range(0, size, width)]


def image_norms_squared(weight: SymbolSpec | None, symbol: SymbolSpec, size: int) -> np.ndarray:
    """``||w phi^n||^2`` in the Hardy space for ``n < size``, by boundary quadrature.

    Symbols touching the circle only at ``1`` or ``-1`` use the graded rule,
    where ``|phi|^(2n)`` concentrates for large ``n``; the others a uniform
    midpoint rule.
    """
    if contact_at_real_points(symbol):
        nodes = graded_nodes(_IMAGE_LEVELS)
    else:
        nodes = uniform_nodes(max(_IMAGE_SAMPLES, 8 * size))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_modulus = np.log1p(-np.minimum(boundary_image(symbol, nodes).defect(), 1.0))
    mass = nodes.weight * boundary_modulus(weight, nodes) ** 2
    out = np.empty(size)
    for start, stop in _column_chunks(size, len(nodes)):
        n = np.arange(start, stop, dtype=float)
        with np.errstate(invalid="ignore", under="ignore"):
            powers = np.exp(n[:, None] * log_modulus[None, :])
        # 0 * log(0)
        powers[n == 0] = 1.0
        out[start:stop] = powers @ mass
    return out


def build_matrix(
    weight: SymbolSpec | None,
    symbol: SymbolSpec,
    size: int,
    domain: Basis = Basis.HARDY,
    config: LabConfig | None = None,
) -> OperatorMatrix:
    """Matrix of ``M_w C_phi`` truncated to ``size`` columns and rows.

    Parameters
    ----------
    weight:
        Bounded analytic weight, ``None`` for the constant 1.
    symbol:
        Self-map ``phi``.
    size:
        Truncation ``N``.
    domain:
        Basis of the domain space; the codomain is always Hardy.
    config:
        Truncation cap, aliasing tolerance and worker threads.

    Raises
    ------
    BudgetError
        When ``size`` exceeds ``config.n_max``.
    AliasingError
        When the sampling radius cannot meet the aliasing tolerance.
    """
    cfg = config or DEFAULT_CONFIG
    if size < 1:
        raise DomainError("Truncation must be positive", size=size)
    if size > cfg.n_max:
        raise BudgetError("Truncation exceeds the configured maximum", size=size, n_max=cfg.n_max)
    if not symbol.is_self_map():
        raise DomainError("Composition symbol must map the disk into itself", symbol=symbol.to_dict())

    radius = default_radius(size - 1)
    bound = sup_bound(weight)
    samples, alias = sampling_plan(size - 1, radius, bound, cfg)
    points = circle_points(radius, samples)
    phi = np.asarray(evaluate(symbol, points))
    base = np.ones(samples, dtype=complex) if weight is None else np.asarray(evaluate(weight, points))
    chunks = _column_chunks(size, samples)
    logger.debug(
        "Building %dx%d matrix (domain=%s, rho=%.6f, M=%d, chunks=%d)",
        size, size, domain.value, radius, samples, len(chunks),
    )

    def _build(bounds: Tuple[int, int]) -> np.ndarray:
        start, stop = bounds
        factors = np.empty((samples, stop - start), dtype=complex)
        factors[:, 0] = base * np.power(phi, start)
        factors[:, 1:] = phi[:, None]
        return coefficients_from_samples(np.cumprod(factors, axis=1), radius, size - 1)

    blocks = parallel_map(_build, chunks, cfg.threads)
    data = np.ascontiguousarray(np.concatenate(blocks, axis=1))
    # ||image||^2 - ||column||^2 is the discarded mass; aliasing perturbs every kept coefficient.
    images = image_norms_squared(weight, symbol, size)
    kept = np.linalg.norm(data, axis=0)
    tails = np.sqrt(np.maximum(images - kept**2, 0.0)) + math.sqrt(size) * alias
    if domain is Basis.BERGMAN:
        scale = np.sqrt(np.arange(size, dtype=float) + 1.0)
        data = data * scale[None, :]
        tails = tails * scale
    return OperatorMatrix(
        data=data,
        domain=domain,
        codomain=Basis.HARDY,
        truncation=size,
        column_tails=tails,
        radius=radius,
        samples=samples,
        symbol={
            "weight": None if weight is None else weight.to_dict(),
            "phi": symbol.to_dict(),
        },
    )


def dump_matrix(matrix: OperatorMatrix, path: Path) -> Tuple[Path, Path]:
    """Write the matrix as little-endian complex128 in column-major order plus a JSON sidecar.

    Returns
    -------
    Paths of the binary file and of the sidecar.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # tofile writes C order, so the transpose yields column-major bytes.
    np.ascontiguousarray(matrix.data.T, dtype="<c16").tofile(path)
    sidecar = path.with_suffix(path.suffix + ".json")
    payload = {
        "N": matrix.truncation,
        "basis": matrix.domain.value,
        "codomain": matrix.codomain.value,
        "dtype": "<c16",
        "order": "column-major",
        "symbol": matrix.symbol,
        "tail_budget": matrix.tail_budget(),
    }
    sidecar.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path, sidecar
