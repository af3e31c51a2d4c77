"""Closed-form bounds for approximation numbers of one-variable operators."""

from __future__ import annotations

import logging
import math
from typing import Sequence, Tuple

import numpy as np

from ..errors import DomainError
from ..symbols.evaluate import evaluate
from ..symbols.geometry import derivative, fixed_point
from ..symbols.spec import SymbolSpec

logger = logging.getLogger(__name__)

# exp(-x) underflows to zero beyond this.
_EXP_LIMIT = 745.0


def operator_norm_bound(phi0: complex) -> float:
    """``sqrt((1 + |phi(0)|) / (1 - |phi(0)|))``, a bound for ``||C_phi||`` on the Hardy space."""
    modulus = abs(phi0)
    if modulus >= 1.0:
        raise DomainError("phi(0) must lie in the open disk", phi0=phi0)
    return math.sqrt((1.0 + modulus) / (1.0 - modulus))


def special_rate(C: float) -> float:
    """``a = log(sqrt(16 C^2 + 1) / (4 C))``."""
    if C < 1.0:
        raise DomainError("Contact constant must be at least 1", C=C)
    return math.log(math.sqrt(16.0 * C * C + 1.0) / (4.0 * C))


def bound_special(n: int, m: int, theta: float, R: float, C: float) -> float:
    """``max(exp(-a n), exp(-R 2^(m theta)))``, the shape of the bound on ``a_{nm+1}``.

    Parameters
    ----------
    n, m:
        Blaschke multiplicity and number of distinct zeros.
    theta, R:
        Weight decay ``|w(z)| <= exp(-R / |1 - z|^theta)``.
    C:
        Non-tangential contact constant of the symbol.
    """
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive", n=n, m=m)
    if not 0.0 < theta <= 1.0 or R <= 0:
        raise DomainError("Need 0 < theta <= 1 and R > 0", theta=theta, R=R)
    blaschke_term = math.exp(-special_rate(C) * n)
    exponent = m * theta * math.log(2.0)
    if math.isinf(R) or exponent + math.log(R) > math.log(_EXP_LIMIT):
        weight_term = 0.0
    else:
        weight_term = math.exp(-R * math.exp(exponent))
    return max(blaschke_term, weight_term)


def widom_lower_form(r: float, delta: float, gamma: float, n: int) -> float:
    """``sqrt(1 - r) * delta * gamma**n``, the lower bound shape up to an absolute constant."""
    if not 0.0 <= r < 1.0:
        raise DomainError("r must lie in [0, 1)", r=r)
    if not 0.0 < delta <= 1.0 or not 0.0 < gamma < 1.0:
        raise DomainError("Need 0 < delta <= 1 and 0 < gamma < 1", delta=delta, gamma=gamma)
    return math.sqrt(1.0 - r) * delta * gamma**n


def special_blaschke_zeros(n: int, m: int) -> Tuple[float, ...]:
    """Zeros ``1 - 2^-l`` for ``0 <= l < m``, each repeated ``n`` times."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive", n=n, m=m)
    return tuple(1.0 - 2.0 ** (-l) for l in range(m) for _ in range(n))


def _blaschke_modulus(zeros: Sequence[complex], z: np.ndarray) -> np.ndarray:
    out = np.ones(z.shape)
    for zero in zeros:
        zero = complex(zero)
        out = out * np.abs(z - zero) / np.abs(1.0 - zero.conjugate() * z)
    return out


def fish_bound(
    weight: SymbolSpec | None,
    symbol: SymbolSpec,
    zeros: Sequence[complex],
    angles: int = 512,
    depth: int = 40,
) -> float:
    """Sampled ``sup |B(u)| |w(u)|`` over images ``u = phi(z)`` with ``|u - 1| <= 1``.

    The sample points ``z`` form a polar grid with radii ``1 - 2^-j`` and
    angles refined toward 1.
    """
    radii = 1.0 - 2.0 ** (-np.arange(1, depth + 1, dtype=float))
    fine = 2.0 ** (-np.arange(1, depth + 1, dtype=float))
    theta = np.concatenate((2.0 * math.pi * np.arange(angles) / angles, fine, -fine))
    grid = (radii[:, None] * np.exp(1j * theta[None, :])).ravel()
    images = np.asarray(evaluate(symbol, grid))
    images = images[np.abs(images - 1.0) <= 1.0]
    if len(images) == 0:
        return 0.0
    values = _blaschke_modulus(zeros, images)
    if weight is not None:
        values = values * np.abs(evaluate(weight, images))
    return float(np.max(values))


def gunatillake_prediction(weight: SymbolSpec | None, symbol: SymbolSpec, count: int) -> np.ndarray:
    """Predicted eigenvalues ``w(a) phi'(a)^j``, ``j = 0..count-1``, at the interior fixed point ``a``."""
    a = fixed_point(symbol)
    slope = derivative(symbol, a)
    scale = 1.0 + 0j if weight is None else complex(evaluate(weight, a))
    logger.debug("Fixed point a=%s, phi'(a)=%s", a, slope)
    return scale * slope ** np.arange(count)
