"""Exact oracles for diagonal symbols: rearrangements and lattice counts."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import BudgetError, DomainError

COUNT_LIMIT = 10**8


def _check_weights(log_weights: Sequence[float]) -> Tuple[float, ...]:
    weights = tuple(float(lam) for lam in log_weights)
    if not weights or any(lam <= 0.0 for lam in weights):
        raise DomainError("Log-weights must be positive", log_weights=list(weights))
    return weights


def rearrangement_oracle(log_weights: Sequence[float], count: int) -> np.ndarray:
    """First ``count`` values of ``exp(-sum lambda_k n_k)`` over multi-indices, non-increasing.

    Each multi-index is reached once: children of ``n`` increment a coordinate
    at or after the last non-zero one.
    """
    weights = _check_weights(log_weights)
    m = len(weights)
    out = np.empty(count)
    heap: List[Tuple[float, Tuple[int, ...]]] = [(0.0, (0,) * m)]
    for position in range(count):
        exponent, index = heapq.heappop(heap)
        out[position] = math.exp(-exponent)
        last = max((k for k in range(m) if index[k]), default=0)
        for k in range(last, m):
            child = index[:k] + (index[k] + 1,) + index[k + 1 :]
            heapq.heappush(heap, (exponent + weights[k], child))
    return out


@dataclass(frozen=True, slots=True)
class LatticeCount:
    count: int
    asymptotic: float
    ratio: float

    def to_dict(self) -> dict:
        return {"count": self.count, "asymptotic": self.asymptotic, "ratio": self.ratio}


def count_lattice(log_weights: Sequence[float], A: float, limit: int = COUNT_LIMIT) -> LatticeCount:
    """Count multi-indices with ``sum lambda_k n_k <= A`` and compare with ``A^m / (prod(lambda) m!)``.

    Raises
    ------
    BudgetError
        When the count exceeds ``limit``.
    """
    weights = _check_weights(log_weights)
    if A <= 0.0:
        raise DomainError("A must be positive", A=A)
    slack = 1e-12 * A
    total = 0

    def _count(k: int, budget: float) -> int:
        nonlocal total
        steps = int(math.floor((budget + slack) / weights[k]))
        if k == len(weights) - 1:
            total += steps + 1
            if total > limit:
                raise BudgetError("Lattice count exceeds the limit", limit=limit, A=A)
            return steps + 1
        return sum(_count(k + 1, budget - j * weights[k]) for j in range(steps + 1))

    count = _count(0, A)
    m = len(weights)
    asymptotic = A**m / (math.prod(weights) * math.factorial(m))
    return LatticeCount(count=count, asymptotic=asymptotic, ratio=count / asymptotic)
