"""Estimates of the parameter ``beta_d = lim [a_{n^d}]^(1/n)``."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np
from scipy import stats

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import DomainError, FitError
from ..hardy.spectrum import SingularSpectrum

logger = logging.getLogger(__name__)

APPROACHING_ONE = "approaching 1"
BOUNDED = "bounded"
INCONCLUSIVE = "inconclusive"

TRAILING = 3


@dataclass(slots=True)
class BetaEstimate:
    """Sequence ``b_n = a_{n^d}^(1/n)`` with its trend classification.

    ``value`` is the last ``b_n``; ``stretch`` is ``1 - d p`` where ``p`` is
    the slope of ``log(-log a_N)`` against ``log N``, so that ``-log b_n``
    behaves like ``n^-stretch``.
    """

    d: int
    indices: List[int]
    b: List[float]
    trend: str
    value: float
    stretch: float
    thresholds: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "d": self.d,
            "indices": self.indices,
            "b": self.b,
            "trend": self.trend,
            "value": self.value,
            "stretch": self.stretch,
            "thresholds": self.thresholds,
        }


def _largest_root(length: int, d: int) -> int:
    n = int(math.floor(length ** (1.0 / d)))
    while (n + 1) ** d <= length:
        n += 1
    while n > 0 and n**d > length:
        n -= 1
    return n


def stretch_exponent(values: np.ndarray, d: int, skip: int = 1) -> float:
    """``1 - d p`` from the regression of ``log(-log a_N)`` on ``log N``; ``nan`` without data.

    Only the trailing half of the values past ``skip`` enters the regression.
    """
    n = np.arange(1, len(values) + 1)
    mask = (n > max(skip, 1, len(values) // 2)) & (values < 1.0) & (values > 0.0)
    if np.count_nonzero(mask) < 3:
        return float("nan")
    slope = stats.linregress(np.log(n[mask]), np.log(-np.log(values[mask]))).slope
    return float(1.0 - d * slope)


def beta_estimate(spectrum: SingularSpectrum, d: int, config: LabConfig | None = None) -> BetaEstimate:
    """Compute ``b_n`` on the stabilized prefix and classify its trend.

    The rules, checked in order on the last three ``b_n``:

    * ``approaching 1`` when they increase and the final value exceeds
      ``config.approach_final``; with ``config.approach_stretch_clause`` a
      stretch exponent of at least ``config.approach_exponent`` also counts;
    * ``bounded`` when their spread is at most ``config.bounded_spread`` and
      their maximum stays below ``config.bounded_max``;
    * ``inconclusive`` otherwise.

    Raises
    ------
    FitError
        When the stabilized prefix does not reach ``a_{3^d}``.
    """
    cfg = config or DEFAULT_CONFIG
    if d < 1:
        raise DomainError("Dimension must be at least 1", d=d)
    prefix = spectrum.stabilized_prefix()
    top = _largest_root(len(prefix), d)
    if top < TRAILING:
        raise FitError("Stabilized spectrum too short for beta estimation", stabilized=len(prefix), d=d)
    indices = list(range(1, top + 1))
    b = [float(prefix[n**d - 1] ** (1.0 / n)) for n in indices]
    stretch = stretch_exponent(prefix, d, cfg.fit_skip)

    trailing = np.asarray(b[-TRAILING:])
    increasing = bool(np.all(np.diff(trailing) > 0.0))
    stretched = cfg.approach_stretch_clause and stretch >= cfg.approach_exponent
    if increasing and (trailing[-1] > cfg.approach_final or stretched):
        trend = APPROACHING_ONE
    elif np.ptp(trailing) <= cfg.bounded_spread and trailing.max() < cfg.bounded_max:
        trend = BOUNDED
    else:
        trend = INCONCLUSIVE
    logger.debug("beta_%d: b=%s stretch=%.3f trend=%s", d, b[-TRAILING:], stretch, trend)
    return BetaEstimate(
        d=d,
        indices=indices,
        b=b,
        trend=trend,
        value=b[-1],
        stretch=stretch,
        thresholds={
            "bounded_max": cfg.bounded_max,
            "bounded_spread": cfg.bounded_spread,
            "approach_final": cfg.approach_final,
            "approach_exponent": cfg.approach_exponent,
            "approach_stretch_clause": float(cfg.approach_stretch_clause),
        },
    )
