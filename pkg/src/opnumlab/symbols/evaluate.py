"""Vectorized evaluation of symbol trees on the closed unit disk.

Every fractional power and logarithm uses the principal branch. Boundary
points where a closed form has a removable singularity (the lens map at
``+-1``, the cusp map at ``1`` and ``-i``, the outer weight at ``+-1``)
return the known limits instead of evaluating the formula.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Dict, Type

import numpy as np

from ..errors import BranchCutError, DomainError
from .spec import (
    CUSP_CONSTANT,
    Affine,
    BlaschkeFinite,
    BlaschkeInterp,
    Compose,
    Cusp,
    HalfShift,
    Identity,
    Lens,
    OuterWeight,
    PointwiseProduct,
    Polynomial,
    Power,
    ScalarMultiple,
    SymbolSpec,
)

logger = logging.getLogger(__name__)

DOMAIN_SLACK = 1e-12
_POINT = 1e-14


def principal_power(base: np.ndarray, exponent: float) -> np.ndarray:
    """``base ** exponent`` on the principal branch, ``0 ** exponent = 0``.

    Raises
    ------
    BranchCutError
        When a non-zero base lies on the negative real axis.
    """
    base = np.asarray(base, dtype=complex)
    on_cut = (base.real < 0.0) & (base.imag == 0.0)
    if np.any(on_cut):
        raise BranchCutError(
            "Fractional power evaluated on the branch cut",
            value=complex(base[on_cut].ravel()[0]),
            exponent=exponent,
        )
    out = np.zeros_like(base)
    nonzero = base != 0
    out[nonzero] = np.exp(exponent * np.log(base[nonzero]))
    return out


def principal_log(value: np.ndarray) -> np.ndarray:
    value = np.asarray(value, dtype=complex)
    if np.any((value.real <= 0.0) & (value.imag == 0.0)):
        raise BranchCutError("Logarithm evaluated on the branch cut")
    return np.log(value)


def _lens(spec: Lens, z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    at_one = np.abs(1.0 - z) < _POINT
    at_minus_one = np.abs(1.0 + z) < _POINT
    out[at_one] = 1.0
    out[at_minus_one] = -1.0
    inside = ~(at_one | at_minus_one)
    zi = z[inside]
    # (1 - z) / (1 + z) maps the disk onto the right half-plane.
    w = principal_power((1.0 - zi) / (1.0 + zi), spec.theta)
    out[inside] = (1.0 - w) / (1.0 + w)
    return out


def cusp_chain(z: np.ndarray) -> Dict[str, np.ndarray]:
    """Intermediate maps of the cusp construction, evaluated in order.

    ``u = (z - i) / (iz - 1)`` is computed in the closed form
    ``(-2 Re z + i (1 - |z|^2)) / |z + i|^2`` so that it stays in the closed
    upper half-plane; boundary values approach the cut from above.
    """
    z = np.asarray(z, dtype=complex)
    denominator = np.abs(z + 1j) ** 2
    at_minus_i = denominator < _POINT**2
    at_one = np.abs(1.0 - z) < _POINT
    safe = ~(at_minus_i | at_one)
    zs = z[safe]
    den = denominator[safe]
    im_part = np.maximum((1.0 - np.abs(zs)) * (1.0 + np.abs(zs)), 0.0)
    u = (-2.0 * zs.real + 1j * im_part) / den
    root = np.sqrt(u)
    chi0 = np.empty_like(z)
    chi0[safe] = (root - 1j) / (1.0 - 1j * root)
    chi0[at_minus_i] = 1j
    chi0[at_one] = 0.0
    chi1 = np.empty_like(z)
    chi1[safe] = principal_log(chi0[safe])
    chi1[at_minus_i] = 0.5j * math.pi
    chi1[at_one] = -np.inf
    chi2 = -(2.0 / math.pi) * chi1 + 1.0
    chi3 = np.zeros_like(z)
    finite = ~at_one
    chi3[finite] = CUSP_CONSTANT / chi2[finite]
    chi = 1.0 - chi3
    return {"chi0": chi0, "chi1": chi1, "chi2": chi2, "chi3": chi3, "chi": chi}


def _cusp(spec: Cusp, z: np.ndarray) -> np.ndarray:
    return cusp_chain(z)["chi"]


def _blaschke_factors(zeros, z: np.ndarray) -> np.ndarray:
    out = np.ones_like(z)
    for zero in zeros:
        zero = complex(zero)
        if zero == 0:
            out = out * z
        else:
            out = out * (abs(zero) / zero) * (zero - z) / (1.0 - np.conj(zero) * z)
    return out


def _outer_weight(spec: OuterWeight, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    at_one = np.abs(1.0 - z) < _POINT
    inside = ~at_one
    zi = z[inside]
    s = principal_power((1.0 + zi) / (1.0 - zi), spec.theta)
    out[inside] = np.exp(-s)
    return out


_HANDLERS: Dict[Type[SymbolSpec], Callable[[SymbolSpec, np.ndarray], np.ndarray]] = {
    Identity: lambda spec, z: z.copy(),
    Affine: lambda spec, z: spec.scale * z + spec.offset,
    HalfShift: lambda spec, z: 0.5 * (1.0 + z),
    Power: lambda spec, z: z ** int(spec.q),
    Lens: _lens,
    Cusp: _cusp,
    BlaschkeFinite: lambda spec, z: _blaschke_factors(spec.zeros, z),
    BlaschkeInterp: lambda spec, z: _blaschke_factors(spec.zero_points(), z),
    OuterWeight: _outer_weight,
    Polynomial: lambda spec, z: np.polynomial.polynomial.polyval(z, np.asarray(spec.coefficients)),
}


def _evaluate_array(spec: SymbolSpec, z: np.ndarray) -> np.ndarray:
    if isinstance(spec, Compose):
        return _evaluate_array(spec.outer, _evaluate_array(spec.inner, z))
    if isinstance(spec, PointwiseProduct):
        return _evaluate_array(spec.left, z) * _evaluate_array(spec.right, z)
    if isinstance(spec, ScalarMultiple):
        return spec.c * _evaluate_array(spec.inner, z)
    handler = _HANDLERS.get(type(spec))
    if handler is None:
        raise DomainError(f"No evaluator for symbol kind {spec.kind!r}")
    return np.asarray(handler(spec, z), dtype=complex)


def evaluate(spec: SymbolSpec, z):
    """Evaluate ``spec`` at ``z`` (scalar or array) in the closed disk.

    Parameters
    ----------
    spec:
        Symbol tree.
    z:
        Point or array of points with ``|z| <= 1``.

    Returns
    -------
    Complex scalar for scalar input, otherwise an array of the input shape.
    """
    scalar = np.ndim(z) == 0
    points = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(points) > 1.0 + DOMAIN_SLACK):
        worst = float(np.max(np.abs(points)))
        raise DomainError("Evaluation point outside the closed unit disk", modulus=worst)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = _evaluate_array(spec, points.copy())
    if scalar:
        return complex(values[0])
    return values
