"""Direct truncation of two-variable composition operators on monomials."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import BudgetError, DomainError
from ..hardy.spectrum import SingularSpectrum, dense_singular_values, certify
from ..symbols.arith import TruncatedSeries
from ..symbols.series import taylor
from ..symbols.spec import Affine, SymbolSpec
from .symbol2d import Diagonal, Glued, Separated, Symbol2D, Triangular

logger = logging.getLogger(__name__)

Components = Tuple[SymbolSpec, SymbolSpec | None, SymbolSpec | None]


def components(symbol: Symbol2D) -> Components:
    """``(F, g1, g2)`` with ``Phi(z1, z2) = (F(z1), g1(z1) g2(z2))``; ``None`` is the constant 1."""
    if isinstance(symbol, Separated):
        return symbol.phi, None, symbol.psi
    if isinstance(symbol, Glued):
        return symbol.phi, symbol.phi, None
    if isinstance(symbol, Triangular):
        return symbol.phi, symbol.psi, symbol.h
    if isinstance(symbol, Diagonal):
        if len(symbol.radii) != 2:
            raise DomainError("Direct truncation handles two variables", radii=list(symbol.radii))
        r1, r2 = symbol.radii
        return Affine(scale=r1), None, Affine(scale=r2)
    raise DomainError(f"Unsupported symbol {symbol!r}")


def monomials(degree: int) -> List[Tuple[int, int]]:
    """Exponents ``(j, k)`` with ``j + k <= degree``, ordered by total degree."""
    return [(total - k, k) for total in range(degree + 1) for k in range(total + 1)]


def half_side_degree(degree: int) -> int:
    """Largest degree whose monomial count is at most half that of ``degree``."""
    side = len(monomials(degree))
    half = 0
    while (half + 2) * (half + 3) // 2 <= side // 2:
        half += 1
    return half


def _series(spec: SymbolSpec | None, degree: int, config: LabConfig) -> TruncatedSeries:
    if spec is None:
        return TruncatedSeries.constant(1.0, degree)
    return TruncatedSeries(taylor(spec, degree, config=config).coefficients)


def _powers(series: TruncatedSeries, degree: int) -> List[TruncatedSeries]:
    out = [TruncatedSeries.constant(1.0, degree)]
    for _ in range(degree):
        out.append(out[-1] * series)
    return out


def direct2d_matrix(symbol: Symbol2D, degree: int, config: LabConfig | None = None) -> np.ndarray:
    """Matrix of ``C_Phi`` on the monomials of total degree at most ``degree``."""
    cfg = config or DEFAULT_CONFIG
    if degree > cfg.d_max:
        raise BudgetError("Degree exceeds the configured maximum", degree=degree, d_max=cfg.d_max)
    F, g1, g2 = components(symbol)
    F_powers = _powers(_series(F, degree, cfg), degree)
    g1_powers = _powers(_series(g1, degree, cfg), degree)
    g2_powers = _powers(_series(g2, degree, cfg), degree)
    basis = monomials(degree)
    rows = np.array([a for a, _ in basis])
    cols = np.array([b for _, b in basis])
    matrix = np.empty((len(basis), len(basis)), dtype=complex)
    for index, (j, k) in enumerate(basis):
        first = (F_powers[j] * g1_powers[k]).c
        second = g2_powers[k].c
        matrix[:, index] = first[rows] * second[cols]
    logger.debug("Direct two-variable matrix of side %d at degree %d", len(basis), degree)
    return matrix


def direct2d_spectrum(
    symbol: Symbol2D, degree: int, n_keep: int, config: LabConfig | None = None
) -> SingularSpectrum:
    """Singular values of the direct truncation.

    The certificate compares with the leading block of at most half the
    matrix side, which is again a total-degree truncation.
    """
    matrix = direct2d_matrix(symbol, degree, config)
    keep = min(n_keep, matrix.shape[0])
    half = len(monomials(half_side_degree(degree)))
    values = dense_singular_values(matrix)[:keep]
    coarse = dense_singular_values(matrix[:half, :half])[:keep]
    spectrum = certify(values, coarse, 0.0, config)
    spectrum.truncation = matrix.shape[0]
    return spectrum


@dataclass(slots=True)
class CrossCheck:
    """Agreement of a spectrum with the direct truncation on the values it has settled.

    ``compared`` counts the leading values where the direct truncation moved
    by at most a quarter of ``tolerance`` under halving and ``spectrum`` is
    stabilized.
    """

    compared: int
    max_deviation: float
    tolerance: float

    @property
    def agrees(self) -> bool:
        return self.compared > 0 and self.max_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, object]:
        return {
            "compared": self.compared,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "agrees": self.agrees,
        }


def cross_check(
    spectrum: SingularSpectrum,
    direct: SingularSpectrum,
    count: int = 15,
    config: LabConfig | None = None,
) -> CrossCheck:
    """Largest relative deviation between ``spectrum`` and ``direct`` over their shared settled prefix."""
    cfg = config or DEFAULT_CONFIG
    tolerance = cfg.cross_check_tolerance
    limit = min(count, len(spectrum), len(direct))
    settled = (direct.relative_change[:limit] <= 0.25 * tolerance) & spectrum.stabilized[:limit]
    compared = limit if np.all(settled) else int(np.argmin(settled))
    if compared == 0:
        logger.info("Direct truncation has not settled any leading value")
        return CrossCheck(0, float("nan"), tolerance)
    reference = spectrum.values[:compared]
    deviation = float(np.max(np.abs(direct.values[:compared] - reference) / reference))
    logger.debug("Cross-check over %d values: max deviation %.3g", compared, deviation)
    return CrossCheck(compared, deviation, tolerance)
