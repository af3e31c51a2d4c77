"""Green and Monge-Ampere capacity formulas."""

from .green import (
    CapacityValue,
    ProxyValue,
    capacity_growth_proxy,
    diagonal_asymptotic,
    gamma_from_tau,
    green_capacity_disk,
    tau_polydisk,
)

__all__ = [
    "CapacityValue",
    "ProxyValue",
    "capacity_growth_proxy",
    "diagonal_asymptotic",
    "gamma_from_tau",
    "green_capacity_disk",
    "tau_polydisk",
]
