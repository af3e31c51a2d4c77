"""Expression trees describing analytic self-maps of the unit disk.

A symbol is an immutable tree of primitive maps (identity, affine, lens, cusp,
Blaschke products, the outer weight, powers, the half shift) combined with
composition, pointwise products and scalar multiples. Trees serialize to a
kind-tagged JSON dictionary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, ClassVar, Dict, Mapping, Tuple

from ..errors import DomainError

_SLACK = 1e-12


def _encode_number(value: complex | float) -> Any:
    value = complex(value)
    if value.imag == 0.0:
        return value.real
    return [value.real, value.imag]


def _decode_number(raw: Any) -> complex:
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise DomainError(f"Complex numbers are encoded as [re, im], got {raw!r}")
        return complex(float(raw[0]), float(raw[1]))
    return complex(float(raw))


class SymbolSpec:
    """Base class of every symbol node."""

    __slots__ = ()
    kind: ClassVar[str] = ""

    def children(self) -> Tuple["SymbolSpec", ...]:
        return ()

    def is_self_map(self) -> bool:
        """Whether the node maps the disk into its closure."""
        return all(child.is_self_map() for child in self.children())

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True, slots=True)
class Identity(SymbolSpec):
    kind: ClassVar[str] = "identity"


@dataclass(frozen=True, slots=True)
class Affine(SymbolSpec):
    """The map ``z -> scale * z + offset`` with ``|scale| + |offset| <= 1``."""

    kind: ClassVar[str] = "affine"
    scale: complex = 1.0
    offset: complex = 0.0

    def __post_init__(self) -> None:
        if abs(self.scale) == 0.0 or abs(self.scale) > 1.0 + _SLACK:
            raise DomainError("Affine scale must satisfy 0 < |r| <= 1", scale=self.scale)
        if abs(self.scale) + abs(self.offset) > 1.0 + _SLACK:
            raise DomainError(
                "Affine map requires |r| + |c| <= 1", scale=self.scale, offset=self.offset
            )

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "r": _encode_number(self.scale), "c": _encode_number(self.offset)}


@dataclass(frozen=True, slots=True)
class Lens(SymbolSpec):
    """Lens map of parameter ``theta``; ``theta = 1`` is the identity."""

    kind: ClassVar[str] = "lens"
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise DomainError("Lens parameter must lie in (0, 1]", theta=self.theta)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "theta": self.theta}


@dataclass(frozen=True, slots=True)
class Cusp(SymbolSpec):
    kind: ClassVar[str] = "cusp"


@dataclass(frozen=True, slots=True)
class BlaschkeFinite(SymbolSpec):
    """Finite Blaschke product with the given zeros (repetitions allowed)."""

    kind: ClassVar[str] = "blaschke"
    zeros: Tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        for zero in self.zeros:
            if abs(zero) >= 1.0:
                raise DomainError("Blaschke zeros must lie in the open disk", zero=zero)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "zeros": [_encode_number(z) for z in self.zeros]}


@dataclass(frozen=True, slots=True)
class BlaschkeInterp(SymbolSpec):
    """Blaschke product on the zeros ``1 - eps1 * sigma**(j - 1)``, ``j = 1..count``."""

    kind: ClassVar[str] = "blaschke_interp"
    sigma: float
    eps1: float
    count: int

    def __post_init__(self) -> None:
        if not 0.0 < self.sigma < 1.0:
            raise DomainError("sigma must lie in (0, 1)", sigma=self.sigma)
        if not 0.0 < self.eps1 < 1.0:
            raise DomainError("eps1 must lie in (0, 1)", eps1=self.eps1)
        if self.count < 1:
            raise DomainError("count must be positive", count=self.count)

    def zero_points(self) -> Tuple[float, ...]:
        return tuple(1.0 - self.eps1 * self.sigma ** (j - 1) for j in range(1, self.count + 1))

    def tail_bound(self) -> float:
        """Bound on ``sum_{j > count} eps_j`` for the discarded zeros."""
        return self.eps1 * self.sigma**self.count / (1.0 - self.sigma)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "sigma": self.sigma, "eps1": self.eps1, "count": self.count}


@dataclass(frozen=True, slots=True)
class OuterWeight(SymbolSpec):
    """``z -> exp(-((1 + z) / (1 - z)) ** theta)``, vanishing at ``z = 1``."""

    kind: ClassVar[str] = "outer_weight"
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise DomainError("Outer weight parameter must lie in (0, 1]", theta=self.theta)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "theta": self.theta}


@dataclass(frozen=True, slots=True)
class Power(SymbolSpec):
    kind: ClassVar[str] = "power"
    q: int

    def __post_init__(self) -> None:
        if int(self.q) != self.q or self.q < 1:
            raise DomainError("Power exponent must be a positive integer", q=self.q)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "q": int(self.q)}


@dataclass(frozen=True, slots=True)
class HalfShift(SymbolSpec):
    """``z -> (1 + z) / 2``."""

    kind: ClassVar[str] = "halfshift"


@dataclass(frozen=True, slots=True)
class Polynomial(SymbolSpec):
    """Bounded analytic weight given by its Taylor coefficients.

    Polynomials are weights, not self-maps: ``z + 0.3`` or a constant.
    """

    kind: ClassVar[str] = "polynomial"
    coefficients: Tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(complex(c) for c in self.coefficients))
        if not self.coefficients:
            raise DomainError("Polynomial needs at least one coefficient")

    def is_self_map(self) -> bool:
        return sum(abs(c) for c in self.coefficients) <= 1.0 + _SLACK

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "coefficients": [_encode_number(c) for c in self.coefficients]}


@dataclass(frozen=True, slots=True)
class Compose(SymbolSpec):
    """``z -> outer(inner(z))``."""

    kind: ClassVar[str] = "compose"
    inner: SymbolSpec
    outer: SymbolSpec

    def children(self) -> Tuple[SymbolSpec, ...]:
        return (self.inner, self.outer)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "outer": self.outer.to_dict(), "inner": self.inner.to_dict()}


@dataclass(frozen=True, slots=True)
class PointwiseProduct(SymbolSpec):
    kind: ClassVar[str] = "product"
    left: SymbolSpec
    right: SymbolSpec

    def children(self) -> Tuple[SymbolSpec, ...]:
        return (self.left, self.right)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "left": self.left.to_dict(), "right": self.right.to_dict()}


@dataclass(frozen=True, slots=True)
class ScalarMultiple(SymbolSpec):
    kind: ClassVar[str] = "scalar"
    c: complex
    inner: SymbolSpec

    def __post_init__(self) -> None:
        if abs(self.c) > 1.0 + _SLACK:
            raise DomainError("Scalar multiple requires |c| <= 1", c=self.c)

    def children(self) -> Tuple[SymbolSpec, ...]:
        return (self.inner,)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "c": _encode_number(self.c), "inner": self.inner.to_dict()}


def halfshift_lens(theta: float) -> SymbolSpec:
    """``(1 + lens_theta) / 2``, touching the circle only at 1."""
    return Compose(inner=Lens(theta), outer=HalfShift())


def power_of(spec: SymbolSpec, k: int) -> SymbolSpec | None:
    """``spec ** k`` as a tree; ``None`` stands for the unit constant."""
    if k == 0:
        return None
    if k == 1:
        return spec
    return Compose(inner=spec, outer=Power(k))


def from_dict(data: Mapping[str, Any]) -> SymbolSpec:
    """Rebuild a symbol from its JSON dictionary."""
    try:
        kind = data["kind"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"Symbol dictionary needs a 'kind': {data!r}") from exc
    if kind == "identity":
        return Identity()
    if kind == "affine":
        return Affine(scale=_decode_number(data.get("r", 1.0)), offset=_decode_number(data.get("c", 0.0)))
    if kind == "lens":
        return Lens(float(data["theta"]))
    if kind == "cusp":
        return Cusp()
    if kind == "blaschke":
        return BlaschkeFinite(tuple(_decode_number(z) for z in data["zeros"]))
    if kind == "blaschke_interp":
        return BlaschkeInterp(float(data["sigma"]), float(data["eps1"]), int(data["count"]))
    if kind == "outer_weight":
        return OuterWeight(float(data["theta"]))
    if kind == "power":
        return Power(int(data["q"]))
    if kind == "halfshift":
        return HalfShift()
    if kind == "polynomial":
        return Polynomial(tuple(_decode_number(c) for c in data["coefficients"]))
    if kind == "compose":
        return Compose(inner=from_dict(data["inner"]), outer=from_dict(data["outer"]))
    if kind == "product":
        return PointwiseProduct(left=from_dict(data["left"]), right=from_dict(data["right"]))
    if kind == "scalar":
        return ScalarMultiple(c=_decode_number(data["c"]), inner=from_dict(data["inner"]))
    raise DomainError(f"Unknown symbol kind {kind!r}")


CUSP_CONSTANT = 1.0 - (2.0 / math.pi) * math.log(math.sqrt(2.0) - 1.0)
"""``a`` chosen so that the cusp map fixes the origin (about 1.5611)."""
