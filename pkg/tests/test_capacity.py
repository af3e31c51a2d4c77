from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from opnumlab.capacity import (
    capacity_growth_proxy,
    diagonal_asymptotic,
    gamma_from_tau,
    green_capacity_disk,
    tau_polydisk,
)
from opnumlab.errors import DomainError
from opnumlab.symbols import Lens, blaschke_radii, pseudo_diameter


def test_green_capacity_of_disks() -> None:
    assert green_capacity_disk(math.exp(-1.0)) == pytest.approx(1.0)
    assert green_capacity_disk(math.exp(-2.0)) == pytest.approx(0.5)
    radii = np.linspace(0.05, 0.95, 10)
    capacities = [green_capacity_disk(r) for r in radii]
    assert all(b > a for a, b in zip(capacities, capacities[1:]))
    with pytest.raises(DomainError):
        green_capacity_disk(1.0)


def test_one_variable_gamma_is_the_radius() -> None:
    for r in (0.1, 0.5, 0.9):
        assert tau_polydisk([r]).gamma == pytest.approx(r)


def test_polydisk_capacity() -> None:
    value = tau_polydisk([math.exp(-1.0), math.exp(-1.0)])
    assert value.tau == pytest.approx(1.0)
    assert value.m == 2
    assert value.gamma == pytest.approx(math.exp(-math.sqrt(2.0)))
    assert value.gamma == pytest.approx(0.24312, abs=1e-5)

    value = tau_polydisk([math.exp(-1.0), math.exp(-4.0)])
    assert value.tau == pytest.approx(0.25)
    assert value.gamma == pytest.approx(0.05910, abs=1e-5)
    assert value.to_dict()["radii"] == [math.exp(-1.0), math.exp(-4.0)]


def test_gamma_closes_over_the_log_weights() -> None:
    rng = np.random.default_rng(3)
    for _ in range(10):
        radii = list(rng.uniform(0.05, 0.95, size=3))
        value = tau_polydisk(radii)
        expected = math.exp(-((math.factorial(3) * math.prod(math.log(1.0 / r) for r in radii)) ** (1.0 / 3.0)))
        assert value.gamma == pytest.approx(expected, abs=1e-14)


def test_gamma_grows_with_each_radius() -> None:
    base = tau_polydisk([0.3, 0.5]).gamma
    assert tau_polydisk([0.4, 0.5]).gamma > base
    assert tau_polydisk([0.3, 0.6]).gamma > base


def test_capacity_rejects_bad_input() -> None:
    with pytest.raises(DomainError):
        tau_polydisk([])
    with pytest.raises(DomainError):
        gamma_from_tau(0.0, 2)
    with pytest.raises(DomainError):
        capacity_growth_proxy(1.0)


def test_growth_proxy() -> None:
    assert capacity_growth_proxy(0.0).value == 0.0
    for level in (1.0, 5.0, 20.0):
        proxy = capacity_growth_proxy(1.0 - math.exp(-level))
        assert proxy.value == pytest.approx(level)
        assert proxy.proxy


def test_growth_proxy_of_lens_images_is_linear_in_the_level() -> None:
    theta = 0.5
    circles = blaschke_radii(0.5, 0.5, 10)
    levels = np.array([circle.level for circle in circles], dtype=float)
    proxies = [capacity_growth_proxy(pseudo_diameter(Lens(theta), circle.radius)).value for circle in circles]
    regression = stats.linregress(levels, proxies)
    assert regression.rvalue**2 >= 0.99
    assert regression.slope == pytest.approx(2.0 * theta * math.log(2.0), rel=0.1)


def test_diagonal_asymptotic() -> None:
    assert diagonal_asymptotic([1.0, 1.0], 8) == pytest.approx(math.exp(-4.0))
    assert diagonal_asymptotic([math.log(2.0)], 3) == pytest.approx(0.125)
    with pytest.raises(DomainError):
        diagonal_asymptotic([], 3)
