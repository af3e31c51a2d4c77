"""Closed-form Green and Monge-Ampere capacities of disks and polydisks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

from ..errors import DomainError


def _check_radius(r: float) -> None:
    if not 0.0 < r < 1.0:
        raise DomainError("Radius must lie in (0, 1)", r=r)


def green_capacity_disk(r: float) -> float:
    """Green capacity ``1 / log(1/r)`` of the closed disk of radius ``r`` centered at 0."""
    _check_radius(r)
    return 1.0 / math.log(1.0 / r)


def gamma_from_tau(tau: float, m: int) -> float:
    """``Gamma_m = exp(-(m! / tau)^(1/m))``."""
    if tau <= 0.0:
        raise DomainError("tau must be positive", tau=tau)
    if m < 1:
        raise DomainError("Dimension must be at least 1", m=m)
    return math.exp(-((math.factorial(m) / tau) ** (1.0 / m)))


@dataclass(frozen=True, slots=True)
class CapacityValue:
    """Normalized Monge-Ampere capacity ``tau_m`` of a set with its ``Gamma_m``."""

    tau: float
    m: int
    gamma: float
    radii: Tuple[float, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"tau": self.tau, "m": self.m, "gamma": self.gamma, "radii": list(self.radii)}


def tau_polydisk(radii: Sequence[float]) -> CapacityValue:
    """``tau_m`` of the closed polydisk with the given radii.

    ``tau_m = prod_k 1 / log(1/r_k)``; for one radius this is the Green
    capacity of the disk and ``Gamma_1 = r``.

    Raises
    ------
    DomainError
        On an empty list or a radius outside ``(0, 1)``.
    """
    if not radii:
        raise DomainError("Polydisk needs at least one radius")
    radii = tuple(float(r) for r in radii)
    tau = 1.0
    for r in radii:
        tau *= green_capacity_disk(r)
    m = len(radii)
    return CapacityValue(tau=tau, m=m, gamma=gamma_from_tau(tau, m), radii=radii)


@dataclass(frozen=True, slots=True)
class ProxyValue:
    """A quantity known only up to an absolute constant."""

    value: float
    proxy: bool = True


def capacity_growth_proxy(diameter: float) -> ProxyValue:
    """``log(1 / (1 - diameter))`` for a pseudo-hyperbolic diameter in ``[0, 1)``.

    Green capacity of a connected compact grows at least like this quantity,
    up to an unknown constant; the result is flagged as a proxy.
    """
    if not 0.0 <= diameter < 1.0:
        raise DomainError("Pseudo-hyperbolic diameter must lie in [0, 1)", diameter=diameter)
    return ProxyValue(-math.log1p(-diameter))


def diagonal_asymptotic(log_weights: Sequence[float], N: int) -> float:
    """Leading-order ``a_N`` of a diagonal symbol, ``exp(-(m! prod(lambda_k) N)^(1/m))``."""
    if not log_weights or any(lam <= 0.0 for lam in log_weights):
        raise DomainError("Log-weights must be positive", log_weights=list(log_weights))
    m = len(log_weights)
    return math.exp(-((math.factorial(m) * math.prod(log_weights) * N) ** (1.0 / m)))
