"""Exact arithmetic on truncated power series at the origin.

Used as an independent check of the FFT extraction and to form products of
one-variable series for two-variable truncations.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Union

import numpy as np

from ..errors import DomainError

Number = Union[int, float, complex]


class TruncatedSeries:
    """Coefficients ``c_0 .. c_D`` of a series, all operations truncated at ``D``."""

    __slots__ = ("c",)

    def __init__(self, coefficients: Iterable[Number], degree: int | None = None) -> None:
        c = np.asarray(list(coefficients), dtype=complex)
        if degree is not None:
            padded = np.zeros(degree + 1, dtype=complex)
            keep = min(len(c), degree + 1)
            padded[:keep] = c[:keep]
            c = padded
        if len(c) == 0:
            raise DomainError("A truncated series needs at least one coefficient")
        self.c = c

    @classmethod
    def constant(cls, value: Number, degree: int) -> "TruncatedSeries":
        return cls([value], degree)

    @classmethod
    def variable(cls, degree: int) -> "TruncatedSeries":
        """The series of ``z``."""
        return cls([0.0, 1.0], degree)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.degree != self.degree:
                raise DomainError(
                    "Series degrees differ", left=self.degree, right=other.degree
                )
            return other
        return TruncatedSeries.constant(other, self.degree)

    def __add__(self, other) -> "TruncatedSeries":
        return TruncatedSeries(self.c + self._coerce(other).c)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.c)

    def __sub__(self, other) -> "TruncatedSeries":
        return TruncatedSeries(self.c - self._coerce(other).c)

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.c * complex(other))
        other = self._coerce(other)
        return TruncatedSeries(np.convolve(self.c, other.c)[: self.degree + 1])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.c / complex(other))
        b = self._coerce(other).c
        if b[0] == 0:
            raise DomainError("Division by a series vanishing at the origin")
        q = np.zeros_like(self.c)
        for n in range(self.degree + 1):
            q[n] = (self.c[n] - np.dot(b[1 : n + 1], q[n - 1 :: -1][:n])) / b[0]
        return TruncatedSeries(q)

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return self._coerce(other) / self

    def __pow__(self, alpha: Number) -> "TruncatedSeries":
        """Principal power, needs ``c_0 != 0`` unless ``alpha`` is a non-negative integer."""
        if isinstance(alpha, int) and alpha >= 0:
            result = TruncatedSeries.constant(1.0, self.degree)
            base = self
            while alpha:
                if alpha & 1:
                    result = result * base
                base = base * base
                alpha >>= 1
            return result
        f = self.c
        if f[0] == 0:
            raise DomainError("Fractional power of a series vanishing at the origin")
        g = np.zeros_like(f)
        g[0] = cmath.exp(alpha * cmath.log(f[0]))
        for n in range(1, self.degree + 1):
            k = np.arange(1, n + 1)
            g[n] = np.sum(((alpha + 1) * k - n) * f[k] * g[n - k]) / (n * f[0])
        return TruncatedSeries(g)

    def exp(self) -> "TruncatedSeries":
        f = self.c
        g = np.zeros_like(f)
        g[0] = cmath.exp(f[0])
        for n in range(1, self.degree + 1):
            k = np.arange(1, n + 1)
            g[n] = np.sum(k * f[k] * g[n - k]) / n
        return TruncatedSeries(g)

    def log(self) -> "TruncatedSeries":
        f = self.c
        if f[0] == 0:
            raise DomainError("Logarithm of a series vanishing at the origin")
        g = np.zeros_like(f)
        g[0] = cmath.log(f[0])
        for n in range(1, self.degree + 1):
            k = np.arange(1, n)
            g[n] = (f[n] - np.sum(k * g[k] * f[n - k]) / n) / f[0]
        return TruncatedSeries(g)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(z))``; exact only when ``inner(0) = 0``."""
        inner = self._coerce(inner)
        if inner.c[0] != 0:
            raise DomainError("Truncated composition needs an inner series vanishing at 0")
        result = TruncatedSeries.constant(self.c[-1], self.degree)
        for coefficient in self.c[-2::-1]:
            result = result * inner + coefficient
        return result

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.c)

    def __repr__(self) -> str:
        return f"TruncatedSeries(degree={self.degree})"
