"""Structural spectrum models: tensor products, glued and triangular symbols."""

from __future__ import annotations

import heapq
import logging
import math
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import BudgetError, DivergenceError, DomainError, HypothesisError
from ..hardy.bounds import operator_norm_bound
from ..hardy.matrix import Basis, build_matrix
from ..hardy.pullback import pullback_applies, pullback_block_spectra, pullback_spectrum
from ..hardy.spectrum import SingularSpectrum, singular_values
from ..parallel import parallel_map
from ..symbols.evaluate import evaluate
from ..symbols.geometry import boundary_sup
from ..symbols.spec import SymbolSpec, power_of

logger = logging.getLogger(__name__)


def _is_complete(spectrum: SingularSpectrum) -> bool:
    return len(spectrum.values) >= spectrum.truncation


def tensor_spectrum(S: SingularSpectrum, T: SingularSpectrum, count: int) -> SingularSpectrum:
    """Leading ``count`` values of the rearrangement of ``{a_m(S) a_n(T)}``.

    A bounded heap walks the product grid from the corner, so only about
    ``count`` products are ever formed.

    Raises
    ------
    BudgetError
        When ``count`` exceeds the number of available products.
    """
    a, b = S.values, T.values
    if count > len(a) * len(b):
        raise BudgetError("Requested more products than available", count=count, available=len(a) * len(b))
    values = np.empty(count)
    stabilized = np.empty(count, dtype=bool)
    if count == 0:
        return SingularSpectrum(values, 0, stabilized, np.zeros(0), 0.0)
    # Products above this level cannot be displaced by values beyond either list.
    if _is_complete(S) and _is_complete(T):
        level = 0.0
    else:
        level = max(a[-1] * b[0], a[0] * b[-1])
    heap = [(-a[0] * b[0], 0, 0)]
    seen = {(0, 0)}
    for position in range(count):
        negative, i, j = heapq.heappop(heap)
        values[position] = -negative
        stabilized[position] = bool(S.stabilized[i] and T.stabilized[j]) and -negative >= level
        for ni, nj in ((i + 1, j), (i, j + 1)):
            if ni < len(a) and nj < len(b) and (ni, nj) not in seen:
                seen.add((ni, nj))
                heapq.heappush(heap, (-a[ni] * b[nj], ni, nj))
    change = np.where(stabilized, 0.0, np.inf)
    return SingularSpectrum(
        values=values,
        truncation=S.truncation * T.truncation,
        stabilized=stabilized,
        relative_change=change,
        certificate=max(S.certificate, T.certificate),
        tail_budget=math.hypot(S.tail_budget * b[0], T.tail_budget * a[0]),
    )


def glued_spectrum(
    phi: SymbolSpec, size: int, n_keep: int, config: LabConfig | None = None
) -> SingularSpectrum:
    """Approximation numbers of ``C_Phi`` for ``Phi = (phi(z1), phi(z1))``.

    They coincide with those of ``C_phi`` from the Bergman space into the
    Hardy space. When ``phi`` touches the circle only at ``1`` or ``-1`` and
    that operator is Hilbert-Schmidt, the pulled-back kernel is used and
    ``size`` is ignored; otherwise the ``size x size`` matrix on the Bergman
    basis is used.

    Raises
    ------
    DivergenceError
        When a Bergman column norm is not finite or exceeds the divergence cap.
    """
    cfg = config or DEFAULT_CONFIG
    if pullback_applies(None, phi, Basis.BERGMAN, cfg):
        return pullback_spectrum(None, phi, n_keep, Basis.BERGMAN, cfg)
    matrix = build_matrix(None, phi, size, Basis.BERGMAN, cfg)
    norms = matrix.column_norms()
    bad = ~np.isfinite(norms) | (norms > cfg.divergence_cap)
    if np.any(bad):
        column = int(np.argmax(bad))
        raise DivergenceError(
            "Bergman column norms diverge: the glued operator is unbounded",
            column=column,
            norm=float(norms[column]),
        )
    return singular_values(matrix, n_keep, cfg)


def block_count(rho: float, floor: float, k_max: int) -> int:
    """``K = ceil(log(floor / 2) / log(rho))``, the last block needed above ``floor``."""
    if rho <= 0.0:
        return 0
    K = max(0, math.ceil(math.log(floor / 2.0) / math.log(rho)))
    if K > k_max:
        raise BudgetError("Spectral floor unreachable within the block budget", K=K, k_max=k_max, rho=rho)
    return K


def block_spectra(
    phi: SymbolSpec,
    psi: SymbolSpec,
    K: int,
    size: int,
    n_keep: int,
    config: LabConfig | None = None,
) -> List[SingularSpectrum]:
    """Spectra of ``T_k = M_{psi^k} C_phi`` for ``k = 0..K``.

    Symbols touching the circle only at ``1`` or ``-1`` use the pulled-back
    kernel, the others the ``size x size`` Taylor matrix.
    """
    cfg = config or DEFAULT_CONFIG
    if pullback_applies(None, phi, Basis.HARDY, cfg):
        return pullback_block_spectra(phi, psi, K, n_keep, cfg)
    keep = min(n_keep, size)

    def _block(k: int) -> SingularSpectrum:
        # Blocks run sequentially inside; the pool parallelizes across blocks.
        inner = cfg.with_overrides({"threads": 1})
        return singular_values(build_matrix(power_of(psi, k), phi, size, Basis.HARDY, inner), keep, inner)

    return parallel_map(_block, range(K + 1), cfg.threads)


def _merge(spectra: Sequence[SingularSpectrum]) -> Iterator[Tuple[float, int, int]]:
    streams = [
        ((-float(value), k, index) for index, value in enumerate(spectrum.values))
        for k, spectrum in enumerate(spectra)
    ]
    for negative, k, index in heapq.merge(*streams):
        yield -negative, k, index


def triangular_ceiling(phi: SymbolSpec, rho: float, K: int) -> float:
    """``max(2, ||C_phi||) rho^(K+1)``, the norm bound of every discarded block."""
    norm = max(2.0, operator_norm_bound(complex(evaluate(phi, 0.0))))
    return norm * rho ** (K + 1)


def merge_blocks(
    spectra: Sequence[SingularSpectrum], ceiling: float, n_keep: int, size: int
) -> SingularSpectrum:
    """Merge block spectra non-increasingly; values at or below ``ceiling`` are not stabilized."""
    values: List[float] = []
    blocks: List[int] = []
    stabilized: List[bool] = []
    change: List[float] = []
    for value, k, index in _merge(spectra):
        if len(values) == n_keep:
            break
        values.append(value)
        blocks.append(k)
        stabilized.append(bool(spectra[k].stabilized[index]) and value > ceiling)
        change.append(float(spectra[k].relative_change[index]))
    finite = [c for c in change if math.isfinite(c)]
    return SingularSpectrum(
        values=np.asarray(values),
        truncation=size,
        stabilized=np.asarray(stabilized, dtype=bool),
        relative_change=np.asarray(change),
        certificate=max(finite) if finite else float("inf"),
        tail_budget=float(math.sqrt(sum(s.tail_budget**2 for s in spectra))),
        blocks=np.asarray(blocks, dtype=int),
    )


def triangular_blocks(
    phi: SymbolSpec,
    psi: SymbolSpec,
    K: int | None,
    size: int,
    n_keep: int,
    config: LabConfig | None = None,
) -> Tuple[List[SingularSpectrum], float, int]:
    """Block spectra of the direct-sum model with ``rho = ||psi||_inf`` and the resolved ``K``.

    Raises
    ------
    HypothesisError
        When ``rho >= 1``.
    BudgetError
        When ``K`` exceeds ``config.k_max``.
    """
    cfg = config or DEFAULT_CONFIG
    rho = boundary_sup(psi)
    if rho >= 1.0:
        raise HypothesisError("The second component needs sup |psi| < 1", rho=rho)
    if K is None:
        K = block_count(rho, cfg.spectral_floor, cfg.k_max)
    elif K > cfg.k_max:
        raise BudgetError("Block count exceeds the configured maximum", K=K, k_max=cfg.k_max)
    return block_spectra(phi, psi, K, size, n_keep, cfg), rho, K


def triangular_spectrum(
    phi: SymbolSpec,
    psi: SymbolSpec,
    K: int | None,
    size: int,
    n_keep: int,
    config: LabConfig | None = None,
) -> SingularSpectrum:
    """Approximation numbers of ``C_Phi`` for ``Phi = (phi(z1), psi(z1) h(z2))``.

    ``C_Phi`` is unitarily equivalent to the direct sum of ``M_{psi^k} C_phi``.
    Blocks beyond ``K`` have norm at most ``max(2, ||C_phi||) rho^k`` with
    ``rho = ||psi||_inf``; that ceiling is attached as ``extras["ceiling"]`` and
    values below it are never flagged stabilized.

    Parameters
    ----------
    phi, psi:
        Components of the symbol.
    K:
        Last block, derived from ``config.spectral_floor`` when ``None``.
    size:
        Truncation of every block.
    n_keep:
        Number of merged values returned.
    """
    spectra, rho, K = triangular_blocks(phi, psi, K, size, n_keep, config)
    ceiling = triangular_ceiling(phi, rho, K)
    logger.debug("Triangular model: rho=%.6f K=%d ceiling=%.3g", rho, K, ceiling)
    spectrum = merge_blocks(spectra, ceiling, n_keep, spectra[0].truncation)
    spectrum.extras.update({"rho": rho, "K": float(K), "ceiling": ceiling})
    return spectrum


def majo_schedule(family: str, K: int) -> Tuple[List[int], int]:
    """Block truncations ``n_0..n_K`` and the index ``N = sum n_k - K`` they control.

    ``family`` is ``"lens"`` (``n_k = K^2``) or ``"cusp"`` (``n_k = K floor(log K)``).
    """
    if K < 1:
        raise DomainError("K must be positive", K=K)
    if family == "lens":
        n = K * K
    elif family == "cusp":
        n = max(1, K * int(math.floor(math.log(K))))
    else:
        raise DomainError(f"Unknown schedule family {family!r}")
    schedule = [n] * (K + 1)
    return schedule, sum(schedule) - K


def lower_block_bound(
    spectra: Sequence[SingularSpectrum], n: Sequence[int], m: Sequence[int]
) -> Tuple[int, float]:
    """``(N, inf_k a_{n_k}(T_{m_k}))`` with ``N = sum n_k``; then ``a_N(T)`` is at least the bound."""
    if len(n) != len(m) or not n:
        raise DomainError("n and m must be non-empty and of equal length")
    if any(b <= a for a, b in zip(m, m[1:])):
        raise DomainError("Block indices m must be strictly increasing", m=list(m))
    bound = min(float(spectra[mk].values[nk - 1]) for nk, mk in zip(n, m))
    return sum(n), bound


def upper_block_bound(
    spectra: Sequence[SingularSpectrum], n: Sequence[int], tail_norm: float
) -> Tuple[int, float]:
    """``(N, max(max_k a_{n_k}(T_k), tail_norm))`` with ``N = sum n_k - K``; ``a_N(T)`` is at most the bound."""
    if len(n) > len(spectra) or not n:
        raise DomainError("Need one truncation per computed block")
    K = len(n) - 1
    bound = max(float(spectra[k].values[nk - 1]) for k, nk in enumerate(n))
    return sum(n) - K, max(bound, tail_norm)


def block_norms(spectra: Sequence[SingularSpectrum]) -> List[float]:
    """Largest computed singular value of every block, ``||T_k||`` up to truncation."""
    return [float(spectrum.values[0]) if len(spectrum) else 0.0 for spectrum in spectra]
