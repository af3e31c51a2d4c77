"""Boundary integrals on the unit circle graded toward the contact angles 0 and pi.

Each quarter arc ``[0, pi/2]`` measured from a contact point is split into
dyadic panels ``[L 2^-(j+1), L 2^-j]`` plus a last panel ``[0, L 2^-levels]``,
and every panel carries a 16-point Gauss-Legendre rule. Refinement doubles
the number of levels until the integral stops moving.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import DivergenceError
from ..symbols.evaluate import cusp_chain, evaluate, principal_power
from ..symbols.geometry import boundary_defect, lens_boundary_defect, lens_boundary_image
from ..symbols.spec import (
    Compose,
    Cusp,
    HalfShift,
    Lens,
    OuterWeight,
    PointwiseProduct,
    Power,
    ScalarMultiple,
    SymbolSpec,
)

logger = logging.getLogger(__name__)

GAUSS_NODES = 16
ARCS = 4
QUARTER = 0.5 * math.pi
# Smallest panel must stay above the double-precision underflow threshold.
MAX_LEVELS = 996
CONTACT_LEVEL = 1e-9
CONTACT_MARGIN = 1e-2
CLEARANCE = 1e-6
_SCAN_SAMPLES = 4096

BoundaryIntegrand = Callable[["QuadratureNodes"], np.ndarray]


@dataclass(slots=True)
class QuadratureNodes:
    """Nodes of the graded rule.

    ``offset`` is the distance to the contact point the arc is graded toward,
    ``near_pi`` tells whether that point is ``pi`` (or ``-pi``) rather than 0.
    Weights are normalized so that they integrate ``dm = dt / 2 pi``.
    """

    angle: np.ndarray
    offset: np.ndarray
    near_pi: np.ndarray
    weight: np.ndarray

    def __len__(self) -> int:
        return len(self.angle)


@dataclass(slots=True)
class QuadratureResult:
    value: float
    levels: int
    points: int
    relative_change: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "levels": self.levels,
            "points": self.points,
            "relative_change": self.relative_change,
            "converged": self.converged,
        }


def graded_nodes(levels: int, points: int = GAUSS_NODES) -> QuadratureNodes:
    """Graded rule with ``levels`` dyadic panels per quarter arc and ``points`` nodes per panel."""
    x, w = np.polynomial.legendre.leggauss(points)
    edges = QUARTER * 2.0 ** (-np.arange(levels + 1, dtype=float))
    edges = np.append(edges, 0.0)
    lower, upper = edges[1:], edges[:-1]
    half = 0.5 * (upper - lower)
    offset = (lower[:, None] + half[:, None] * (x[None, :] + 1.0)).ravel()
    weight = (half[:, None] * w[None, :]).ravel() / (2.0 * math.pi)
    angles = [offset, -offset, math.pi - offset, -math.pi + offset]
    near_pi = [False, False, True, True]
    return QuadratureNodes(
        angle=np.concatenate(angles),
        offset=np.tile(offset, ARCS),
        near_pi=np.repeat(np.array(near_pi), len(offset)),
        weight=np.tile(weight, ARCS),
    )


def uniform_nodes(samples: int) -> QuadratureNodes:
    """Midpoint rule with ``samples`` equally spaced angles avoiding ``0`` and ``pi``."""
    angle = -math.pi + 2.0 * math.pi * (np.arange(samples) + 0.5) / samples
    wrapped = np.abs(angle)
    near_pi = wrapped > QUARTER
    return QuadratureNodes(
        angle=angle,
        offset=np.where(near_pi, math.pi - wrapped, wrapped),
        near_pi=near_pi,
        weight=np.full(samples, 1.0 / samples),
    )


@dataclass(slots=True)
class BoundaryImage:
    """Boundary values ``w`` of a symbol with ``1 - w`` and ``1 + w`` kept to full relative precision."""

    value: np.ndarray
    to_one: np.ndarray
    to_minus_one: np.ndarray

    def defect(self) -> np.ndarray:
        """``1 - |w|^2``, from ``1 - w`` on the right half and ``1 + w`` on the left."""
        e, f = self.to_one, self.to_minus_one
        right = 2.0 * e.real - np.abs(e) ** 2
        left = 2.0 * f.real - np.abs(f) ** 2
        return np.maximum(np.where(self.value.real >= 0.0, right, left), 0.0)


def boundary_image(symbol: SymbolSpec, nodes: QuadratureNodes) -> BoundaryImage:
    """Boundary values of ``symbol`` at the rule's nodes.

    Lens maps, half-shifted symbols and the cusp map use forms that keep the
    distance to the contact point exact; other symbols are evaluated directly.
    """
    if isinstance(symbol, Lens) and symbol.theta < 1.0:
        value, to_one, to_minus_one = lens_boundary_image(
            symbol.theta, nodes.offset, nodes.angle > 0.0, nodes.near_pi
        )
        return BoundaryImage(value, to_one, to_minus_one)
    if isinstance(symbol, Compose) and isinstance(symbol.outer, HalfShift):
        inner = boundary_image(symbol.inner, nodes)
        return BoundaryImage(
            0.5 * (1.0 + inner.value), 0.5 * inner.to_one, 0.5 * (2.0 + inner.to_minus_one)
        )
    if isinstance(symbol, HalfShift):
        to_one = -0.5 * np.expm1(1j * nodes.angle)
        return BoundaryImage(1.0 - to_one, to_one, 2.0 - to_one)
    if isinstance(symbol, Cusp):
        chain = cusp_chain(np.exp(1j * nodes.angle))
        return BoundaryImage(chain["chi"], chain["chi3"], 2.0 - chain["chi3"])
    value = np.asarray(evaluate(symbol, np.exp(1j * nodes.angle)))
    return BoundaryImage(value, 1.0 - value, 1.0 + value)


def contact_at_real_points(symbol: SymbolSpec) -> bool:
    """True when ``symbol`` reaches the circle at ``1`` or ``-1`` and nowhere else.

    Away from the two points (angular margin ``CONTACT_MARGIN``) the sampled
    ``1 - |phi|^2`` must stay above ``CLEARANCE``.
    """
    ends = np.abs(np.asarray(evaluate(symbol, np.array([1.0, -1.0]))))
    if float(np.max(ends)) < 1.0 - CONTACT_LEVEL:
        return False
    nodes = uniform_nodes(_SCAN_SAMPLES)
    away = nodes.offset > CONTACT_MARGIN
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        defect = boundary_image(symbol, nodes).defect()
    return bool(np.all(np.isfinite(defect[away])) and np.min(defect[away]) > CLEARANCE)


def boundary_modulus(weight: SymbolSpec | None, nodes: QuadratureNodes) -> np.ndarray:
    """``|w|`` at the rule's nodes; an outer weight of a contact symbol vanishes at the contact."""
    if weight is None:
        return np.ones(len(nodes))
    if isinstance(weight, Compose) and isinstance(weight.outer, OuterWeight):
        e = boundary_image(weight.inner, nodes).to_one
        out = np.zeros(len(nodes))
        inside = e != 0
        # (1 + v) / (1 - v) with e = 1 - v
        s = principal_power((2.0 - e[inside]) / e[inside], weight.outer.theta)
        out[inside] = np.exp(-s.real)
        return out
    if isinstance(weight, Compose) and isinstance(weight.outer, Power):
        return boundary_modulus(weight.inner, nodes) ** int(weight.outer.q)
    if isinstance(weight, ScalarMultiple):
        return abs(weight.c) * boundary_modulus(weight.inner, nodes)
    if isinstance(weight, PointwiseProduct):
        return boundary_modulus(weight.left, nodes) * boundary_modulus(weight.right, nodes)
    with np.errstate(invalid="ignore"):
        return np.abs(evaluate(weight, np.exp(1j * nodes.angle)))


def boundary_integral(
    integrand: BoundaryIntegrand, config: LabConfig | None = None
) -> QuadratureResult:
    """Integrate over the circle, doubling the grading until the value settles.

    The result is flagged non-converged when the point budget or the
    underflow floor is reached first, or the value exceeds the divergence cap.
    """
    cfg = config or DEFAULT_CONFIG
    levels = 1
    previous = None
    change = float("inf")
    value = 0.0
    points = 0
    while True:
        nodes = graded_nodes(levels)
        points = len(nodes)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            value = float(np.sum(nodes.weight * integrand(nodes)))
        if not math.isfinite(value) or value > cfg.divergence_cap:
            logger.warning("Boundary integral exceeded the cap at %d levels", levels)
            return QuadratureResult(value, levels, points, change, False)
        if previous is not None:
            change = abs(value - previous) / max(abs(value), np.finfo(float).tiny)
            if change < cfg.quadrature_tolerance:
                logger.debug("Boundary integral converged at %d levels (%d points)", levels, points)
                return QuadratureResult(value, levels, points, change, True)
        next_levels = 2 * levels
        next_points = ARCS * GAUSS_NODES * (next_levels + 1)
        if next_levels > MAX_LEVELS or next_points > cfg.quadrature_max_points:
            logger.warning(
                "Boundary integral did not settle after %d levels (change %.3g)", levels, change
            )
            return QuadratureResult(value, levels, points, change, False)
        previous = value
        levels = next_levels


def hs_integrand(weight: SymbolSpec | None, symbol: SymbolSpec) -> BoundaryIntegrand:
    """``|w|^2 / (1 - |phi|^2)`` on the circle."""

    def integrand(nodes: QuadratureNodes) -> np.ndarray:
        if isinstance(symbol, Lens) and symbol.theta < 1.0:
            defect = lens_boundary_defect(symbol.theta, nodes.offset)
        else:
            defect = boundary_defect(symbol, nodes.angle)
        if weight is None:
            numerator = np.ones(len(nodes))
        else:
            numerator = np.abs(evaluate(weight, np.exp(1j * nodes.angle))) ** 2
        return numerator / defect

    return integrand


def hs_norm_squared(
    weight: SymbolSpec | None, symbol: SymbolSpec, config: LabConfig | None = None
) -> QuadratureResult:
    return boundary_integral(hs_integrand(weight, symbol), config)


def hs_norm(weight: SymbolSpec | None, symbol: SymbolSpec, config: LabConfig | None = None) -> float:
    """Hilbert-Schmidt norm of ``M_w C_phi``, ``sqrt(int |w|^2 / (1 - |phi|^2) dm)``.

    Raises
    ------
    DivergenceError
        When the boundary integral does not converge; the quadrature evidence
        is attached to the error.
    """
    result = hs_norm_squared(weight, symbol, config)
    if not result.converged:
        raise DivergenceError("Hilbert-Schmidt integral does not converge", **result.to_dict())
    return math.sqrt(result.value)
