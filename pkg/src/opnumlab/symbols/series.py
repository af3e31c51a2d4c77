"""Taylor coefficients of symbols by FFT on an interior circle."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import AliasingError, DomainError
from .evaluate import evaluate
from .spec import Compose, PointwiseProduct, Polynomial, ScalarMultiple, SymbolSpec

logger = logging.getLogger(__name__)

_BOUNDARY_SAMPLES = 4096


@dataclass(slots=True)
class PowerSeries:
    """Truncated Taylor expansion with its sampling provenance.

    Attributes
    ----------
    coefficients:
        ``c_0 .. c_D`` as a complex array.
    degree:
        ``D``.
    radius:
        Sampling radius ``rho_s``.
    samples:
        Number of FFT points used.
    tail_error:
        Bound on ``|f(z) - sum c_n z^n|`` for ``|z| <= radius``.
    aliasing_error:
        Bound on the aliasing error of every coefficient.
    """

    coefficients: np.ndarray
    degree: int
    radius: float
    samples: int
    tail_error: float
    aliasing_error: float

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coefficients)

    def coefficient_errors(self) -> np.ndarray:
        """Per-coefficient error: aliasing plus FFT round-off amplified by ``radius**-n``."""
        n = np.arange(self.degree + 1)
        roundoff = np.finfo(float).eps * math.log2(max(self.samples, 2)) * self.radius ** (-n)
        return self.aliasing_error + roundoff


def default_radius(degree: int) -> float:
    if degree <= 8:
        return 0.5
    return max(0.5, 1.0 - 4.0 / degree)


def sup_bound(spec: SymbolSpec | None) -> float:
    """An upper bound for ``sup |spec|`` over the disk."""
    if spec is None:
        return 1.0
    if isinstance(spec, Polynomial):
        return float(sum(abs(c) for c in spec.coefficients))
    if spec.is_self_map():
        return 1.0
    if isinstance(spec, ScalarMultiple):
        return abs(spec.c) * sup_bound(spec.inner)
    if isinstance(spec, PointwiseProduct):
        return sup_bound(spec.left) * sup_bound(spec.right)
    if isinstance(spec, Compose) and spec.inner.is_self_map():
        return sup_bound(spec.outer)
    # Maximum modulus on a boundary grid, padded for the grid spacing.
    t = 2.0 * math.pi * np.arange(_BOUNDARY_SAMPLES) / _BOUNDARY_SAMPLES
    values = evaluate(spec, np.exp(1j * t))
    return 1.01 * float(np.max(np.abs(values)))


def aliasing_bound(bound: float, radius: float, samples: int) -> float:
    """Cauchy bound ``B rho^M / (1 - rho^M)`` on the alias of each coefficient."""
    power = radius**samples
    return bound * power / (1.0 - power)


def sampling_plan(
    degree: int, radius: float, bound: float = 1.0, config: LabConfig | None = None
) -> Tuple[int, float]:
    """Pick the FFT size for a degree and radius.

    Returns the smallest power of two ``M >= 4 (D + 1)`` whose aliasing bound
    is below ``config.aliasing_tolerance``, together with that bound.

    Raises
    ------
    AliasingError
        When ``M`` would exceed ``config.max_oversampled_points``.
    """
    cfg = config or DEFAULT_CONFIG
    if degree < 0:
        raise DomainError("Series degree must be non-negative", degree=degree)
    if not 0.0 < radius < 1.0:
        raise DomainError("Sampling radius must lie in (0, 1)", radius=radius)
    samples = 1 << max(2, math.ceil(math.log2(4 * (degree + 1))))
    alias = aliasing_bound(bound, radius, samples)
    while alias > cfg.aliasing_tolerance:
        samples *= 2
        if samples > cfg.max_oversampled_points:
            raise AliasingError(
                "Sampling radius too close to 1 for the aliasing tolerance",
                radius=radius,
                degree=degree,
                tolerance=cfg.aliasing_tolerance,
            )
        alias = aliasing_bound(bound, radius, samples)
    return samples, alias


def circle_points(radius: float, samples: int) -> np.ndarray:
    return radius * np.exp(2j * math.pi * np.arange(samples) / samples)


def coefficients_from_samples(values: np.ndarray, radius: float, degree: int) -> np.ndarray:
    """Coefficients ``c_0..c_D`` from samples on ``radius * exp(2 pi i j / M)``.

    ``values`` may be two-dimensional with one column per function.
    """
    samples = values.shape[0]
    spectrum = np.fft.fft(values, axis=0)[: degree + 1] / samples
    scale = radius ** (-np.arange(degree + 1, dtype=float))
    if spectrum.ndim == 2:
        return spectrum * scale[:, None]
    return spectrum * scale


def taylor(
    spec: SymbolSpec,
    degree: int,
    radius: float | None = None,
    config: LabConfig | None = None,
) -> PowerSeries:
    """Taylor coefficients of ``spec`` up to ``degree``.

    Parameters
    ----------
    spec:
        Symbol or bounded weight.
    degree:
        Highest coefficient index ``D``.
    radius:
        Sampling radius, defaults to ``max(0.5, 1 - 4/D)``.
    config:
        Supplies the aliasing tolerance and the FFT size cap.
    """
    rho = default_radius(degree) if radius is None else float(radius)
    bound = sup_bound(spec)
    samples, alias = sampling_plan(degree, rho, bound, config)
    logger.debug("Taylor extraction D=%d rho=%.6f M=%d", degree, rho, samples)
    values = evaluate(spec, circle_points(rho, samples))
    coefficients = coefficients_from_samples(values, rho, degree)
    # Evaluation error on |z| <= rho: discarded terms plus aliased ones.
    alias_rate = aliasing_bound(1.0, rho, samples)
    tail = bound * (rho ** (degree + 1) + alias_rate) / (1.0 - rho)
    return PowerSeries(
        coefficients=coefficients,
        degree=degree,
        radius=rho,
        samples=samples,
        tail_error=tail,
        aliasing_error=alias,
    )
