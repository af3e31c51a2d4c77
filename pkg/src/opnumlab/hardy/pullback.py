"""Spectra of ``M_w C_phi`` from the reproducing kernel pulled back to the circle.

For ``T = M_w C_phi`` into the Hardy space, ``T T*`` acts on ``L^2(dm)`` with
kernel ``w(s) conj(w(t)) / (1 - phi(s) conj(phi(t)))^m``; ``m = 1`` for the
Hardy domain and ``m = 2`` for the Bergman domain. A Nystrom discretization on
the graded boundary rule gives a Hermitian matrix whose eigenvalues are the
``a_n^2``. Unlike a Taylor truncation, whose columns lose mass to rows past
``N`` when ``phi`` touches the circle, the graded rule resolves the contact
points directly.

The path applies when ``phi`` reaches the circle only at ``1`` or ``-1`` and
``T`` is Hilbert-Schmidt, i.e. the trace ``int |w|^2 / (1 - |phi|^2)^m dm``
converges.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy import linalg

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import DecompositionError, DomainError
from ..parallel import parallel_map
from ..symbols.spec import SymbolSpec
from .matrix import Basis
from .quadrature import (
    QUARTER,
    QuadratureNodes,
    QuadratureResult,
    boundary_image,
    boundary_integral,
    boundary_modulus,
    contact_at_real_points,
    graded_nodes,
)
from .spectrum import SingularSpectrum, certify

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class PullbackKernel:
    """Discretized ``T T*``; ``inner`` marks nodes of the panels next to a contact point."""

    matrix: np.ndarray
    inner: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def _exponent(domain: Basis) -> int:
    return 1 if domain is Basis.HARDY else 2


def pullback_trace(
    weight: SymbolSpec | None,
    symbol: SymbolSpec,
    domain: Basis = Basis.HARDY,
    config: LabConfig | None = None,
) -> QuadratureResult:
    """``int |w|^2 / (1 - |phi|^2)^m dm``, the squared Hilbert-Schmidt norm of the kernel operator."""
    power = _exponent(domain)

    def integrand(nodes: QuadratureNodes) -> np.ndarray:
        defect = boundary_image(symbol, nodes).defect()
        return boundary_modulus(weight, nodes) ** 2 / defect**power

    return boundary_integral(integrand, config)


def pullback_applies(
    weight: SymbolSpec | None,
    symbol: SymbolSpec,
    domain: Basis = Basis.HARDY,
    config: LabConfig | None = None,
) -> bool:
    if not contact_at_real_points(symbol):
        return False
    trace = pullback_trace(weight, symbol, domain, config)
    if not trace.converged:
        logger.debug("Pullback trace does not settle (change %.3g)", trace.relative_change)
    return trace.converged


def _kernel(
    weight: SymbolSpec | None, symbol: SymbolSpec, nodes: QuadratureNodes, power: int, edge: float
) -> PullbackKernel:
    image = boundary_image(symbol, nodes)
    keep = (image.to_one != 0) & (image.to_minus_one != 0)
    w, e, f = image.value[keep], image.to_one[keep], image.to_minus_one[keep]
    scale = np.sqrt(nodes.weight[keep]) * boundary_modulus(weight, nodes)[keep]
    # 1 - w_i conj(w_j) expanded around the nearer of 1 and -1
    near = e[:, None] + np.conj(e)[None, :] - e[:, None] * np.conj(e)[None, :]
    far = f[:, None] + np.conj(f)[None, :] - f[:, None] * np.conj(f)[None, :]
    gap = np.where(w.real[:, None] + w.real[None, :] >= 0.0, near, far)
    matrix = scale[:, None] * scale[None, :] / gap**power
    return PullbackKernel(matrix=matrix, inner=nodes.offset[keep] < edge)


def _leading(matrix: np.ndarray, n_keep: int) -> np.ndarray:
    size = matrix.shape[0]
    keep = min(n_keep, size)
    if keep == 0:
        return np.zeros(0)
    try:
        eigs = linalg.eigvalsh(matrix, subset_by_index=[size - keep, size - 1])
    except (linalg.LinAlgError, ValueError) as exc:
        raise DecompositionError("Hermitian eigenvalue decomposition failed", shape=matrix.shape) from exc
    return np.sqrt(np.maximum(eigs[::-1], 0.0))


def _spectrum(fine: PullbackKernel, coarse: PullbackKernel, n_keep: int, config: LabConfig) -> SingularSpectrum:
    values = _leading(fine.matrix, n_keep)
    coarse_values = _leading(coarse.matrix, n_keep)
    # Eigenvalues carry absolute error eps a_1^2, so a_n carries about sqrt(eps) a_1.
    floor = math.sqrt(config.noise_factor * np.finfo(float).eps) * values[0] if len(values) else 0.0
    tail = math.sqrt(float(np.sum(np.diag(fine.matrix).real[fine.inner])))
    spectrum = certify(values, coarse_values, tail, config, floor=floor)
    spectrum.truncation = fine.size
    return spectrum


def _innermost(config: LabConfig) -> float:
    return QUARTER * 2.0 ** (-config.boundary_levels)


def _rules(config: LabConfig) -> Tuple[QuadratureNodes, QuadratureNodes]:
    points = config.boundary_gauss_nodes
    return (
        graded_nodes(config.boundary_levels, points),
        graded_nodes(config.boundary_levels, max(2, points // 2)),
    )


def pullback_spectrum(
    weight: SymbolSpec | None,
    symbol: SymbolSpec,
    n_keep: int,
    domain: Basis = Basis.HARDY,
    config: LabConfig | None = None,
) -> SingularSpectrum:
    """Leading ``n_keep`` approximation numbers of ``M_w C_phi`` from the pulled-back kernel.

    The certificate compares with the rule of half as many Gauss nodes per
    panel; ``tail_budget`` is the kernel trace carried by the panels next to
    the contact points. ``truncation`` reports the number of boundary nodes.

    Raises
    ------
    DomainError
        When ``symbol`` touches the circle elsewhere than at ``1`` and ``-1``.
    """
    cfg = config or DEFAULT_CONFIG
    if not contact_at_real_points(symbol):
        raise DomainError("Pullback spectra need contact at 1 or -1 only", symbol=symbol.to_dict())
    power = _exponent(domain)
    fine_nodes, coarse_nodes = _rules(cfg)
    edge = _innermost(cfg)
    fine = _kernel(weight, symbol, fine_nodes, power, edge)
    coarse = _kernel(weight, symbol, coarse_nodes, power, edge)
    logger.debug("Pullback kernel with %d nodes (domain=%s)", fine.size, domain.value)
    spectrum = _spectrum(fine, coarse, n_keep, cfg)
    logger.debug(
        "Pullback spectrum kept=%d stabilized=%d certificate=%.3g",
        len(spectrum), spectrum.stabilized_count(), spectrum.certificate,
    )
    return spectrum


def pullback_block_spectra(
    phi: SymbolSpec, psi: SymbolSpec, K: int, n_keep: int, config: LabConfig | None = None
) -> List[SingularSpectrum]:
    """Spectra of ``M_{psi^k} C_phi`` for ``k = 0..K`` sharing one kernel.

    Block ``k`` is the kernel of ``C_phi`` scaled by ``|psi(s)|^k |psi(t)|^k``.
    """
    cfg = config or DEFAULT_CONFIG
    if not contact_at_real_points(phi):
        raise DomainError("Pullback spectra need contact at 1 or -1 only", symbol=phi.to_dict())
    fine_nodes, coarse_nodes = _rules(cfg)
    kernels = []
    for nodes in (fine_nodes, coarse_nodes):
        base = _kernel(None, phi, nodes, 1, _innermost(cfg))
        image = boundary_image(phi, nodes)
        keep = (image.to_one != 0) & (image.to_minus_one != 0)
        kernels.append((base, boundary_modulus(psi, nodes)[keep]))

    def _block(k: int) -> SingularSpectrum:
        scaled = []
        for base, modulus in kernels:
            factor = modulus**k
            scaled.append(PullbackKernel(base.matrix * factor[:, None] * factor[None, :], base.inner))
        return _spectrum(scaled[0], scaled[1], n_keep, cfg)

    logger.debug("Pullback blocks k=0..%d on %d nodes", K, kernels[0][0].size)
    return parallel_map(_block, range(K + 1), cfg.threads)
