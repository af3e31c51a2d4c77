"""Exception family raised by opnumlab.

Every error carries a stable ``code`` and converts to a JSON-friendly report
through :meth:`LabError.to_dict`; the experiment runner writes that report to
``error.json`` when a run aborts.
"""

from __future__ import annotations

from typing import Any, Dict


def _jsonable(value: Any) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class LabError(Exception):
    """Base class for every failure reported by the laboratory."""

    code = "lab-error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation."""
        return {
            "code": self.code,
            "type": type(self).__name__,
            "message": self.message,
            "details": _jsonable(self.details),
        }


class ConfigError(LabError, ValueError):
    """Invalid configuration or experiment parameters."""

    code = "config"


class DomainError(LabError, ValueError):
    """An argument lies outside the domain of the operation."""

    code = "domain"


class BranchCutError(LabError, ArithmeticError):
    """A principal-branch power or logarithm was asked for a value on its cut."""

    code = "branch-cut"


class AliasingError(LabError, ValueError):
    """The sampling radius is too close to 1 for the aliasing tolerance."""

    code = "aliasing"


class DivergenceError(LabError, RuntimeError):
    """A quadrature or a norm did not converge; the evidence is attached."""

    code = "divergence"


class BudgetError(LabError, RuntimeError):
    """A truncation, memory or enumeration cap was exceeded."""

    code = "budget"


class DecompositionError(LabError, RuntimeError):
    """A dense singular value or eigenvalue solver failed."""

    code = "decomposition"


class HypothesisError(LabError, ValueError):
    """A hypothesis required by a bound is violated by the inputs."""

    code = "hypothesis"


class FitError(LabError, ValueError):
    """Not enough usable data for a rate fit or a classification."""

    code = "fit"


__all__ = [
    "LabError",
    "ConfigError",
    "DomainError",
    "BranchCutError",
    "AliasingError",
    "DivergenceError",
    "BudgetError",
    "DecompositionError",
    "HypothesisError",
    "FitError",
]
