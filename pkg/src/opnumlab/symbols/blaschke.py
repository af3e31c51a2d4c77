"""Interpolating Blaschke products and circles on which they stay large."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..errors import DomainError

logger = logging.getLogger(__name__)

ALPHA = 1.5
FLOAT_FLOOR = 1e-14
_PRODUCT_TERMS = 400


@dataclass(slots=True)
class BlaschkeCircle:
    """Circle ``|z| = radius`` with a certified floor for ``|B|`` on it.

    Attributes
    ----------
    level:
        ``l >= 1``.
    radius:
        ``r_l = 1 - rho_l``.
    rho:
        ``rho_l``.
    delta:
        Lower bound of ``|B(z)|`` for ``|z| = r_l``.
    case:
        Which construction produced ``rho_l`` (1 or 2).
    """

    level: int
    radius: float
    rho: float
    delta: float
    case: int

    def __iter__(self):
        yield self.radius
        yield self.delta


def interpolating_zeros(sigma: float, eps1: float, count: int) -> np.ndarray:
    """Zeros ``1 - eps1 * sigma**(j - 1)``, ``j = 1..count``."""
    if not 0.0 < sigma < 1.0:
        raise DomainError("sigma must lie in (0, 1)", sigma=sigma)
    if not 0.0 < eps1 < 1.0:
        raise DomainError("eps1 must lie in (0, 1)", eps1=eps1)
    return 1.0 - eps1 * sigma ** np.arange(count, dtype=float)


def _ratio_product(x: float, sigma: float, start: int) -> float:
    """Lower bound of ``prod_{k >= start} (1 - x sigma^k) / (1 + x sigma^k)``.

    The product is evaluated for a finite number of factors and the remainder
    is bounded below by ``exp(-2 y / ((1 - sigma)(1 - y)))`` with ``y`` the
    first discarded term.
    """
    log_total = 0.0
    k = start
    y = x * sigma**k
    while k < start + _PRODUCT_TERMS and y > 1e-18:
        log_total += math.log1p(-y) - math.log1p(y)
        k += 1
        y = x * sigma**k
    log_total -= 2.0 * y / ((1.0 - sigma) * (1.0 - y))
    return math.exp(log_total)


def circle_floor(sigma: float, case: int) -> float:
    """``delta`` for the two circle constructions with ``alpha = 1.5`` and ``a = (1 + sigma)/2``."""
    if case == 1:
        return _ratio_product(ALPHA / 2.0, sigma, 0) * _ratio_product(1.0 / ALPHA, sigma, 0)
    a = 0.5 * (1.0 + sigma)
    return _ratio_product(a, sigma, 0) * _ratio_product(1.0 / a, sigma, 1)


def blaschke_radii(
    sigma: float,
    eps1: float,
    levels: int,
    eps: Sequence[float] | None = None,
) -> List[BlaschkeCircle]:
    """Radii ``r_l`` on which the interpolating Blaschke product is bounded below.

    Parameters
    ----------
    sigma, eps1:
        Separation ratio and first gap of the zeros ``1 - eps_j``.
    levels:
        Number of circles, ``l = 1..levels``.
    eps:
        Gaps ``eps_j``; defaults to the model sequence ``eps1 * sigma**(j-1)``.

    Returns
    -------
    One :class:`BlaschkeCircle` per level.
    """
    if not 0.0 < sigma < 1.0:
        raise DomainError("sigma must lie in (0, 1)", sigma=sigma)
    if not 0.0 < eps1 < 1.0:
        raise DomainError("eps1 must lie in (0, 1)", eps1=eps1)
    if eps is None:
        eps = eps1 * sigma ** np.arange(levels, dtype=float)
    gaps = np.asarray(eps, dtype=float)
    if len(gaps) < levels:
        raise DomainError("Not enough gaps for the requested levels", levels=levels, gaps=len(gaps))
    a = 0.5 * (1.0 + sigma)
    circles: List[BlaschkeCircle] = []
    for level in range(1, levels + 1):
        target = sigma ** (level - 1) * eps1
        # p_l: last index j <= l with eps_j >= sigma^(l-1) eps1.
        admissible = np.nonzero(gaps[:level] >= target * (1.0 - 1e-12))[0]
        p = int(admissible[-1]) if len(admissible) else 0
        if gaps[p] >= 2.0 * target:
            rho, case = ALPHA * target, 1
        else:
            rho, case = a * gaps[p], 2
        if rho < FLOAT_FLOOR:
            raise DomainError("Circle too close to the boundary for double precision", level=level, rho=rho)
        circles.append(
            BlaschkeCircle(level=level, radius=1.0 - rho, rho=rho, delta=circle_floor(sigma, case), case=case)
        )
    logger.debug("Built %d Blaschke circles for sigma=%s eps1=%s", levels, sigma, eps1)
    return circles
