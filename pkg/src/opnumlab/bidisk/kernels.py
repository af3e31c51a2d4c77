"""Boundedness evidence for glued lens symbols on the bidisk.

The glued operator ``C_Phi`` with ``Phi = (lens_theta(z1), lens_theta(z1))``
is Hilbert-Schmidt for ``theta < 1/2``, bounded but not compact at
``theta = 1/2`` and unbounded beyond. Three independent measurements feed the
verdict: the boundary integral of the Hilbert-Schmidt norm, the growth of the
truncated Bergman-to-Hardy norms, and reproducing-kernel ratios.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np
from scipy import stats

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import DomainError
from ..hardy.matrix import Basis, build_matrix
from ..hardy.quadrature import QuadratureNodes, QuadratureResult, boundary_integral
from ..hardy.spectrum import dense_singular_values
from ..symbols.geometry import lens_boundary_defect
from ..symbols.spec import Lens

logger = logging.getLogger(__name__)

HILBERT_SCHMIDT = "hilbert-schmidt"
BOUNDED_NOT_COMPACT = "bounded-not-compact"
UNBOUNDED = "unbounded"

KERNEL_DEPTHS = tuple(range(2, 9))
KERNEL_SLOPE_THRESHOLD = 0.02


def _check_theta(theta: float) -> None:
    if not 0.0 < theta < 1.0:
        raise DomainError("theta must lie in (0, 1)", theta=theta)


def kernel_norm(a: complex, b: complex) -> float:
    """Norm of the reproducing kernel of ``H^2`` of the bidisk at ``(a, b)``."""
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise DomainError("Kernel points must lie in the open disk", a=str(a), b=str(b))
    return 1.0 / math.sqrt((1.0 - abs(a) ** 2) * (1.0 - abs(b) ** 2))


def kernel_ratio(theta: float, a: float) -> float:
    """``||K_{lens(a), lens(a)}|| / ||K_{a, 0}||`` for real ``a`` in ``[0, 1)``.

    Uses ``1 - lens(a)^2 = 4 u^theta / (1 + u^theta)^2`` with
    ``u = (1 - a)/(1 + a)`` so the ratio stays accurate as ``a -> 1``.
    """
    _check_theta(theta)
    if not 0.0 <= a < 1.0:
        raise DomainError("a must lie in [0, 1)", a=a)
    u = ((1.0 - a) / (1.0 + a)) ** theta
    defect = 4.0 * u / (1.0 + u) ** 2
    return math.sqrt((1.0 - a) * (1.0 + a)) / defect


def kernel_ratio_slope(theta: float, depths: Sequence[int] = KERNEL_DEPTHS) -> float:
    """Slope of ``log kernel_ratio`` against ``log 1/(1 - a)`` on ``a = 1 - 10^-k``.

    Asymptotically ``theta - 1/2``.
    """
    x = np.array([k * math.log(10.0) for k in depths])
    y = np.array([math.log(kernel_ratio(theta, 1.0 - 10.0 ** (-k))) for k in depths])
    return float(stats.linregress(x, y).slope)


def glued_hs_quadrature(theta: float, config: LabConfig | None = None) -> QuadratureResult:
    """Boundary integral of ``1 / (1 - |lens_theta|^2)^2``.

    This equals ``sum_n (n + 1) ||lens_theta^n||^2``, the squared
    Hilbert-Schmidt norm of the glued operator. The result carries the
    convergence verdict instead of raising.
    """
    _check_theta(theta)

    def integrand(nodes: QuadratureNodes) -> np.ndarray:
        return 1.0 / lens_boundary_defect(theta, nodes.offset) ** 2

    result = boundary_integral(integrand, config)
    logger.debug(
        "Glued HS quadrature theta=%.3f value=%.6g levels=%d converged=%s",
        theta, result.value, result.levels, result.converged,
    )
    return result


@dataclass(slots=True)
class NormGrowth:
    sizes: List[int]
    norms: List[float]
    slope: float

    def to_dict(self) -> Dict[str, object]:
        return {"sizes": self.sizes, "norms": self.norms, "slope": self.slope}


def bergman_norm_growth(
    theta: float,
    sizes: Sequence[int] = (64, 128, 256, 512),
    config: LabConfig | None = None,
) -> NormGrowth:
    """Spectral norms of ``C_lens : B^2 -> H^2`` truncated at each size.

    Truncated norms are non-decreasing in the size; a positive log-log slope
    (about ``max(0, 1 - 1/(2 theta))``) signals an unbounded operator.
    """
    _check_theta(theta)
    cfg = config or DEFAULT_CONFIG
    if len(sizes) < 2:
        raise DomainError("Need at least two truncation sizes", sizes=list(sizes))
    norms = []
    for size in sizes:
        matrix = build_matrix(None, Lens(theta), int(size), Basis.BERGMAN, cfg)
        norms.append(float(dense_singular_values(matrix.data)[0]))
    slope = float(stats.linregress(np.log(sizes), np.log(norms)).slope)
    return NormGrowth(sizes=[int(s) for s in sizes], norms=norms, slope=slope)


@dataclass(slots=True)
class TrichotomyEvidence:
    theta: float
    verdict: str
    quadrature: QuadratureResult
    kernel_slope: float
    extras: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "theta": self.theta,
            "verdict": self.verdict,
            "quadrature": self.quadrature.to_dict(),
            "kernel_slope": self.kernel_slope,
            **self.extras,
        }


def bilens_trichotomy(theta: float, config: LabConfig | None = None) -> TrichotomyEvidence:
    """Classify the glued lens operator as Hilbert-Schmidt, bounded or unbounded."""
    quadrature = glued_hs_quadrature(theta, config)
    slope = kernel_ratio_slope(theta)
    if quadrature.converged:
        verdict = HILBERT_SCHMIDT
    elif slope > KERNEL_SLOPE_THRESHOLD:
        verdict = UNBOUNDED
    else:
        verdict = BOUNDED_NOT_COMPACT
    logger.info("Glued lens theta=%.3f: %s", theta, verdict)
    return TrichotomyEvidence(theta, verdict, quadrature, slope)
