"""Symbols of composition operators on the bidisk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, ClassVar, Dict, Mapping, Tuple

from ..errors import DomainError, HypothesisError
from ..symbols.spec import (
    BlaschkeFinite,
    BlaschkeInterp,
    Compose,
    Cusp,
    Lens,
    OuterWeight,
    Power,
    ScalarMultiple,
    SymbolSpec,
    from_dict as symbol_from_dict,
    halfshift_lens,
)


class Symbol2D:
    """Base class of the two-variable symbol variants."""

    __slots__ = ()
    variant: ClassVar[str] = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant}


def _require_self_map(name: str, spec: SymbolSpec) -> None:
    if not spec.is_self_map():
        raise DomainError(f"{name} must map the disk into itself", **{name: spec.to_dict()})


@dataclass(frozen=True, slots=True)
class Separated(Symbol2D):
    """``(phi(z1), psi(z2))``; the operator is the tensor product ``C_phi (x) C_psi``."""

    variant: ClassVar[str] = "separated"
    phi: SymbolSpec
    psi: SymbolSpec

    def __post_init__(self) -> None:
        _require_self_map("phi", self.phi)
        _require_self_map("psi", self.psi)

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "phi": self.phi.to_dict(), "psi": self.psi.to_dict()}


@dataclass(frozen=True, slots=True)
class Glued(Symbol2D):
    """``(phi(z1), phi(z1))``."""

    variant: ClassVar[str] = "glued"
    phi: SymbolSpec

    def __post_init__(self) -> None:
        _require_self_map("phi", self.phi)

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "phi": self.phi.to_dict()}


def is_rudin_instance(h: SymbolSpec) -> bool:
    """Inner functions vanishing at 0 with exactly computable powers."""
    if isinstance(h, Power):
        return True
    if isinstance(h, BlaschkeFinite):
        return any(zero == 0 for zero in h.zeros)
    return False


@dataclass(frozen=True, slots=True)
class Triangular(Symbol2D):
    """``(phi(z1), psi(z1) h(z2))`` with ``h`` inner and ``h(0) = 0``."""

    variant: ClassVar[str] = "triangular"
    phi: SymbolSpec
    psi: SymbolSpec
    h: SymbolSpec = Power(1)

    def __post_init__(self) -> None:
        _require_self_map("phi", self.phi)
        _require_self_map("psi", self.psi)
        if not is_rudin_instance(self.h):
            raise HypothesisError(
                "h must be a power of z or a finite Blaschke product vanishing at 0",
                h=self.h.to_dict(),
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "phi": self.phi.to_dict(),
            "psi": self.psi.to_dict(),
            "h": self.h.to_dict(),
        }


@dataclass(frozen=True, slots=True)
class Diagonal(Symbol2D):
    """``(r_1 z_1, ..., r_m z_m)``."""

    variant: ClassVar[str] = "diagonal"
    radii: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if not self.radii:
            raise DomainError("Diagonal symbol needs at least one radius")
        for r in self.radii:
            if not 0.0 < r < 1.0:
                raise DomainError("Diagonal radii must lie in (0, 1)", r=r)

    @property
    def log_weights(self) -> Tuple[float, ...]:
        return tuple(math.log(1.0 / r) for r in self.radii)

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "radii": list(self.radii)}


def from_dict(data: Mapping[str, Any]) -> Symbol2D:
    variant = data.get("variant")
    if variant == "separated":
        return Separated(symbol_from_dict(data["phi"]), symbol_from_dict(data["psi"]))
    if variant == "glued":
        return Glued(symbol_from_dict(data["phi"]))
    if variant == "triangular":
        h = symbol_from_dict(data["h"]) if "h" in data else Power(1)
        return Triangular(symbol_from_dict(data["phi"]), symbol_from_dict(data["psi"]), h)
    if variant == "diagonal":
        return Diagonal(tuple(data["radii"]))
    raise DomainError(f"Unknown two-variable symbol variant {variant!r}")


def chobou_symbol(theta: float) -> Triangular:
    """``phi = (1 + lens_theta)/2``, ``psi = w o phi`` with the outer weight ``w``, ``h(z) = z``."""
    if not 0.0 < theta < 1.0:
        raise DomainError("theta must lie in (0, 1)", theta=theta)
    phi = halfshift_lens(theta)
    return Triangular(phi=phi, psi=Compose(inner=phi, outer=OuterWeight(theta)), h=Power(1))


def lens_blaschke_symbol(theta: float, c: float, sigma: float, eps1: float, count: int) -> Triangular:
    """``(lens_theta(z1), c B(z1) z2)`` with an interpolating Blaschke product ``B``."""
    if not 0.0 < c < 1.0:
        raise DomainError("c must lie in (0, 1)", c=c)
    return Triangular(
        phi=Lens(theta),
        psi=ScalarMultiple(c, BlaschkeInterp(sigma, eps1, count)),
        h=Power(1),
    )


def cusp_blaschke_symbol(c: float, sigma: float, eps1: float, count: int) -> Triangular:
    """``(cusp(z1), c B(z1) z2)``."""
    if not 0.0 < c < 1.0:
        raise DomainError("c must lie in (0, 1)", c=c)
    return Triangular(
        phi=Cusp(),
        psi=ScalarMultiple(c, BlaschkeInterp(sigma, eps1, count)),
        h=Power(1),
    )
