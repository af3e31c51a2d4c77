"""Hyperbolic geometry and sampled boundary behaviour of symbols."""

from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np

from ..errors import DomainError
from .evaluate import evaluate
from .spec import CUSP_CONSTANT, Affine, BlaschkeFinite, BlaschkeInterp, Compose, HalfShift, Identity, Lens, Power, SymbolSpec

logger = logging.getLogger(__name__)

_PAIR_CHUNK = 256
_WINDOW_CHUNK = 1 << 18


def _check_open_disk(name: str, value: complex) -> None:
    if abs(value) >= 1.0:
        raise DomainError(f"{name} must lie in the open unit disk", **{name: value})


def pseudo_hyperbolic(a: complex, b: complex) -> float:
    """``|a - b| / |1 - conj(a) b|`` for ``a, b`` in the open disk."""
    _check_open_disk("a", a)
    _check_open_disk("b", b)
    a = complex(a)
    b = complex(b)
    return abs(a - b) / abs(1.0 - a.conjugate() * b)


def kappa_bound(L: float) -> float:
    """Upper bound ``L / sqrt(L^2 + 1)`` on ``rho(a, b)`` when ``|a - b| <= L min(1-|a|, 1-|b|)``."""
    if L <= 0:
        raise DomainError("L must be positive", L=L)
    return L / math.sqrt(L * L + 1.0)


def disk_automorphism(c: complex, z):
    """``(z - c) / (1 - conj(c) z)``."""
    _check_open_disk("c", c)
    c = complex(c)
    return (z - c) / (1.0 - c.conjugate() * z)


def pseudo_diameter(spec: SymbolSpec, r: float, samples: int = 512) -> float:
    """Largest pairwise pseudo-hyperbolic distance among images of a sampled circle.

    The sample set is ``samples`` equally spaced points of ``|z| = r`` plus the
    center, so the value is a lower bound for the diameter of ``spec(r D)``.
    """
    if samples < 2:
        raise DomainError("pseudo_diameter needs at least two samples", samples=samples)
    if not 0.0 <= r < 1.0:
        raise DomainError("Radius must lie in [0, 1)", r=r)
    points = np.concatenate(([0.0], r * np.exp(2j * math.pi * np.arange(samples) / samples)))
    images = np.atleast_1d(evaluate(spec, points))
    best = 0.0
    for start in range(0, len(images), _PAIR_CHUNK):
        block = images[start : start + _PAIR_CHUNK, None]
        distance = np.abs(block - images[None, :]) / np.abs(1.0 - np.conj(block) * images[None, :])
        best = max(best, float(np.nanmax(distance)))
    return best


def boundary_points(samples: int, midpoint: bool = False) -> np.ndarray:
    """Angles on ``[-pi, pi)``; with ``midpoint`` the grid avoids ``t = 0``."""
    shift = 0.5 if midpoint else 0.0
    return -math.pi + 2.0 * math.pi * (np.arange(samples) + shift) / samples


def pullback_window_mass(spec: SymbolSpec, h: float, samples: int = 4096) -> float:
    """Fraction of boundary points whose image lies in ``{|z - 1| <= h}``.

    Uniform midpoint grid of ``samples`` angles, processed in chunks.
    """
    if samples < 1000:
        raise DomainError("pullback_window_mass needs at least 1000 samples", samples=samples)
    if not 0.0 < h < 1.0:
        raise DomainError("Window size must lie in (0, 1)", h=h)
    hits = 0
    for start in range(0, samples, _WINDOW_CHUNK):
        stop = min(samples, start + _WINDOW_CHUNK)
        t = -math.pi + 2.0 * math.pi * (np.arange(start, stop) + 0.5) / samples
        images = evaluate(spec, np.exp(1j * t))
        hits += int(np.count_nonzero(np.abs(images - 1.0) <= h))
    return hits / samples


def derivative(spec: SymbolSpec, z: complex, points: int = 16) -> complex:
    """Complex derivative by the Cauchy integral over a small circle around ``z``."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("Derivative needs an interior point", z=z)
    h = min(1e-3, (1.0 - abs(z)) / 2.0)
    angles = 2.0 * math.pi * np.arange(points) / points
    nodes = np.exp(1j * angles)
    values = evaluate(spec, z + h * nodes)
    return complex(np.mean(values / nodes) / h)


def fixed_point(spec: SymbolSpec, iterations: int = 100, tolerance: float = 1e-14) -> complex:
    """Interior fixed point by Newton iteration started at 0."""
    z = 0j
    for _ in range(iterations):
        g = complex(evaluate(spec, z)) - z
        slope = derivative(spec, z) - 1.0
        if slope == 0:
            raise DomainError("Newton iteration met a critical point", z=z)
        step = g / slope
        z = z - step
        if abs(z) >= 1.0:
            raise DomainError("Fixed point iteration left the disk", z=z)
        if abs(step) < tolerance:
            return z
    raise DomainError("No interior fixed point found", last=z)


def boundary_sup(spec: SymbolSpec, samples: int = 4096) -> float:
    """Sampled ``sup |spec|`` on the unit circle, grid including ``t = 0`` and ``t = pi``."""
    t = boundary_points(samples)
    return float(np.max(np.abs(evaluate(spec, np.exp(1j * t)))))


def contact_constant(spec: SymbolSpec, angles: int = 256, depth: int = 30) -> float:
    """Sampled ``sup |1 - phi(z)| / (1 - |phi(z)|)`` over a polar grid refined toward 1.

    Radii are ``1 - 2**-j`` for ``j = 1..depth``; angles combine a uniform grid
    with ``+-2**-i`` for ``i = 1..depth``.
    """
    radii = 1.0 - 2.0 ** (-np.arange(1, depth + 1, dtype=float))
    fine = 2.0 ** (-np.arange(1, depth + 1, dtype=float))
    theta = np.concatenate((boundary_points(angles), fine, -fine))
    grid = (radii[:, None] * np.exp(1j * theta[None, :])).ravel()
    images = evaluate(spec, grid)
    gap = 1.0 - np.abs(images)
    usable = gap > 0
    ratio = np.abs(1.0 - images[usable]) / gap[usable]
    return float(np.max(ratio))


def lens_boundary_defect(theta: float, offset) -> np.ndarray:
    """``1 - |lens(e^{it})|^2`` at distance ``offset`` from the nearest contact point.

    With ``x = tan(offset/2)**theta`` and ``c = cos(theta pi / 2)`` the defect is
    ``4 x c / (1 + 2 x c + x^2)``; the same expression holds near ``0`` and ``pi``.
    """
    x = np.tan(0.5 * np.asarray(offset, dtype=float)) ** theta
    c = math.cos(0.5 * math.pi * theta)
    return 4.0 * x * c / (1.0 + 2.0 * x * c + x * x)


def lens_boundary_image(theta: float, offset, upper, near_pi) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(w, 1 - w, 1 + w)`` for ``w = lens(e^{it})`` from the distance to the nearest contact point.

    ``upper`` marks points with ``sin t > 0`` and ``near_pi`` those graded
    toward ``pi``. Near 0, ``s = x exp(-+ i theta pi / 2)`` with
    ``x = tan(offset/2)**theta`` and ``w = (1 - s) / (1 + s)``; near ``pi`` the
    same holds for ``-w`` with the conjugate phase.
    """
    x = np.tan(0.5 * np.asarray(offset, dtype=float)) ** theta
    sign = np.where(np.asarray(upper, dtype=bool), 1.0, -1.0)
    sign = np.where(np.asarray(near_pi, dtype=bool), sign, -sign)
    s = x * np.exp(0.5j * math.pi * theta * sign)
    ratio = (1.0 - s) / (1.0 + s)
    small = 2.0 * s / (1.0 + s)
    large = 2.0 / (1.0 + s)
    near_pi = np.asarray(near_pi, dtype=bool)
    value = np.where(near_pi, -ratio, ratio)
    to_one = np.where(near_pi, large, small)
    to_minus_one = np.where(near_pi, small, large)
    return value, to_one, to_minus_one


def _contact_offset(t: np.ndarray) -> np.ndarray:
    wrapped = np.abs(np.angle(np.exp(1j * t)))
    return np.minimum(wrapped, math.pi - wrapped)


def boundary_defect(spec: SymbolSpec, t) -> np.ndarray:
    """``1 - |spec(e^{it})|^2``, in closed form where one is known."""
    t = np.asarray(t, dtype=float)
    if isinstance(spec, Lens):
        if spec.theta == 1.0:
            return np.zeros_like(t)
        return lens_boundary_defect(spec.theta, _contact_offset(t))
    if isinstance(spec, (Identity, Power, BlaschkeFinite, BlaschkeInterp)):
        return np.zeros_like(t)
    if isinstance(spec, Affine) and spec.offset == 0:
        return np.full_like(t, 1.0 - abs(spec.scale) ** 2)
    if isinstance(spec, Compose) and isinstance(spec.outer, HalfShift) and isinstance(spec.inner, Lens):
        # |(1 + l)/2|^2 = (1 + 2 Re l + |l|^2) / 4
        lens = np.asarray(evaluate(spec.inner, np.exp(1j * t)))
        inner_defect = boundary_defect(spec.inner, t)
        return (inner_defect + 2.0 * (1.0 - lens.real)) / 4.0
    values = np.asarray(evaluate(spec, np.exp(1j * t)))
    return 1.0 - np.abs(values) ** 2


def cusp_contact_asymptote(r: float) -> float:
    """Leading behaviour of ``1 - cusp(r)`` as ``r -> 1``.

    Along the radius ``chi_0(r) ~ (1 - r) / 4``, so
    ``1 - cusp(r) ~ a / (1 + (2/pi) log(4 / (1 - r)))``: the contact is only
    logarithmic in ``1 - r``.
    """
    if not 0.0 < r < 1.0:
        raise DomainError("Radius must lie in (0, 1)", r=r)
    return CUSP_CONSTANT / (1.0 + (2.0 / math.pi) * math.log(4.0 / (1.0 - r)))
