"""Lower-bound formulas and index schedules for triangular symbols."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..capacity.green import capacity_growth_proxy
from ..errors import DomainError, HypothesisError
from ..hardy.bounds import special_rate
from ..symbols.blaschke import blaschke_radii
from ..symbols.geometry import pseudo_diameter
from ..symbols.spec import Cusp, Lens, SymbolSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Level:
    """One circle ``|z| = r`` with the floor ``delta`` of ``|psi|`` on it and ``Gamma = exp(-1/cap)``."""

    r: float
    delta: float
    gamma: float
    proxy: bool = False

    def to_dict(self) -> dict:
        return {"r": self.r, "delta": self.delta, "gamma": self.gamma, "proxy": self.proxy}


@dataclass(frozen=True, slots=True)
class BoundEstimate:
    value: float
    level: int
    proxy: bool

    def to_dict(self) -> dict:
        return {"value": self.value, "level": self.level, "proxy": self.proxy}


def estim_inf_bound(N: int, levels: Sequence[Level]) -> BoundEstimate:
    """``sup_l sqrt(1 - r_l) exp(-8 sqrt(N) sqrt(log 1/delta_l) sqrt(log 1/Gamma_l))``.

    The value is the lower bound for ``a_N`` up to an absolute constant; it
    is flagged as a proxy when the maximizing level carries a proxy ``Gamma``.

    Raises
    ------
    HypothesisError
        When some level has ``delta > Gamma``.
    """
    if N < 1:
        raise DomainError("N must be positive", N=N)
    if not levels:
        raise DomainError("At least one level is required")
    best, best_level = -1.0, 0
    for index, level in enumerate(levels):
        if not 0.0 < level.gamma < 1.0 or not 0.0 < level.delta <= 1.0:
            raise DomainError("Level needs delta in (0, 1] and Gamma in (0, 1)", **level.to_dict())
        if level.delta > level.gamma:
            raise HypothesisError("Level violates delta <= Gamma", index=index, **level.to_dict())
        exponent = 8.0 * math.sqrt(N) * math.sqrt(-math.log(level.delta)) * math.sqrt(-math.log(level.gamma))
        value = math.sqrt(1.0 - level.r) * math.exp(-exponent)
        if value > best:
            best, best_level = value, index
    return BoundEstimate(value=best, level=best_level, proxy=levels[best_level].proxy)


def estim_inf_schedule(delta: float, gamma: float, K: int) -> Tuple[List[int], int]:
    """``n_k = p k`` for ``k = 1..K`` with ``p = floor(log(1/delta) / log(1/Gamma))``, and ``N = sum n_k``."""
    if not 0.0 < gamma < 1.0 or not 0.0 < delta < 1.0:
        raise DomainError("delta and Gamma must lie in (0, 1)", delta=delta, gamma=gamma)
    if delta > gamma:
        raise HypothesisError("delta must not exceed Gamma", delta=delta, gamma=gamma)
    p = int(math.floor(math.log(1.0 / delta) / math.log(1.0 / gamma)))
    schedule = [p * k for k in range(1, K + 1)]
    return schedule, sum(schedule)


@dataclass(slots=True)
class ChobouBudget:
    m: List[int]
    d: int
    ratio: float

    def to_dict(self) -> dict:
        return {"m": self.m, "d": self.d, "ratio": self.ratio}


def chobou_budget(n: int, theta: float, C: float, delta: float) -> ChobouBudget:
    """Block heights ``m_k = floor(log(b n / k) / (theta^2 log 2)) + 1`` and ``d = sum_k n m_k``.

    ``b = a / delta^2`` with ``a = log(sqrt(16 C^2 + 1) / (4 C))``; heights are
    kept at least 1. ``ratio`` is ``d / n^2``, bounded in ``n``.
    """
    if n < 1:
        raise DomainError("n must be positive", n=n)
    if not 0.0 < theta < 1.0 or not 0.0 < delta < 1.0:
        raise DomainError("theta and delta must lie in (0, 1)", theta=theta, delta=delta)
    b = special_rate(C) / delta**2
    scale = theta * theta * math.log(2.0)
    m = [max(1, int(math.floor(math.log(b * n / k) / scale)) + 1) for k in range(1, n + 1)]
    d = n * sum(m)
    return ChobouBudget(m=m, d=d, ratio=d / n**2)


def _levels(
    symbol: SymbolSpec, sigma: float, eps1: float, count: int, c: float, samples: int
) -> List[Level]:
    out = []
    for circle in blaschke_radii(sigma, eps1, count):
        proxy = capacity_growth_proxy(pseudo_diameter(symbol, circle.radius, samples))
        gamma = math.exp(-1.0 / proxy.value) if proxy.value > 0.0 else 0.0
        out.append(Level(r=circle.radius, delta=c * circle.delta, gamma=gamma, proxy=True))
    logger.debug("Assembled %d lower-bound levels for %s", len(out), symbol.to_dict())
    return out


def lens_lower_levels(
    theta: float, sigma: float, eps1: float, levels: int, c: float = 1.0, samples: int = 512
) -> List[Level]:
    """Levels for ``(lens_theta(z1), c B(z1) z2)``: Blaschke circles, floors ``c delta_l`` and proxy ``Gamma_l``."""
    return _levels(Lens(theta), sigma, eps1, levels, c, samples)


def cusp_lower_levels(
    sigma: float, eps1: float, levels: int, c: float = 1.0, samples: int = 512
) -> List[Level]:
    """Same as :func:`lens_lower_levels` for the cusp map."""
    return _levels(Cusp(), sigma, eps1, levels, c, samples)
