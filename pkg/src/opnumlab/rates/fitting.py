"""Least-squares fits of singular value decay laws.

Every family is ``a_n ~ A exp(-beta x(n))`` for an index transform ``x``; the
fit is the ordinary regression of ``log a_n`` on ``x(n)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Mapping, Tuple, Union

import numpy as np
from scipy import stats

from ..config import DEFAULT_CONFIG, LabConfig
from ..errors import DomainError, FitError
from ..hardy.spectrum import SingularSpectrum

logger = logging.getLogger(__name__)

IndexTransform = Callable[[np.ndarray], np.ndarray]

FAMILIES: Dict[str, IndexTransform] = {
    "exp": lambda n: n,
    "sqrt": np.sqrt,
    "cbrt": np.cbrt,
    "sqrt_log": lambda n: np.sqrt(n / np.log(n)),
    "n_log": lambda n: n / np.log(n),
}

FAMILY_LABELS = {
    "exp": "exp(-beta n)",
    "sqrt": "exp(-beta sqrt(n))",
    "cbrt": "exp(-beta n^(1/3))",
    "sqrt_log": "exp(-beta sqrt(n / log n))",
    "n_log": "exp(-beta n / log n)",
}


@dataclass(slots=True)
class DecayFit:
    """Fitted decay law.

    Attributes
    ----------
    family:
        Key of :data:`FAMILIES`.
    beta:
        Fitted exponent, positive for decaying data.
    amplitude:
        Fitted prefactor ``A``.
    r2:
        Coefficient of determination of the log-linear regression.
    n_range:
        First and last index used.
    """

    family: str
    beta: float
    amplitude: float
    r2: float
    n_range: Tuple[int, int]

    def to_dict(self) -> Dict[str, object]:
        return {
            "family": self.family,
            "beta": self.beta,
            "amplitude": self.amplitude,
            "r2": self.r2,
            "n_range": list(self.n_range),
        }


def _transform(family: str) -> IndexTransform:
    try:
        return FAMILIES[family]
    except KeyError:
        raise DomainError(f"Unknown decay family {family!r}", known=sorted(FAMILIES)) from None


def fit_values(
    indices: Iterable[float],
    values: Iterable[float],
    family: str,
    config: LabConfig | None = None,
) -> DecayFit:
    """Fit ``values ~ A exp(-beta x(indices))`` for the given family.

    Raises
    ------
    FitError
        With fewer than ``config.min_fit_points`` points, non-positive values
        or a non-decaying fit.
    """
    cfg = config or DEFAULT_CONFIG
    transform = _transform(family)
    n = np.asarray(list(indices), dtype=float)
    a = np.asarray(list(values), dtype=float)
    if len(n) != len(a):
        raise DomainError("indices and values differ in length", indices=len(n), values=len(a))
    if len(a) < cfg.min_fit_points:
        raise FitError("Too few points for a decay fit", points=len(a), required=cfg.min_fit_points)
    if np.any(a <= 0.0) or not np.all(np.isfinite(a)):
        raise FitError("Decay fits need positive finite values")
    if family in ("sqrt_log", "n_log") and np.any(n < 2):
        raise FitError("Logarithmic families need indices of at least 2", family=family)
    x = transform(n)
    regression = stats.linregress(x, np.log(a))
    beta = -float(regression.slope)
    if not beta > 0.0:
        raise FitError("Data do not decay under this family", family=family, beta=beta)
    fit = DecayFit(
        family=family,
        beta=beta,
        amplitude=float(np.exp(regression.intercept)),
        r2=float(regression.rvalue**2),
        n_range=(int(n[0]), int(n[-1])),
    )
    logger.debug("Fit %s: beta=%.6g r2=%.6f on n=%s", family, fit.beta, fit.r2, fit.n_range)
    return fit


def fit_window(spectrum: SingularSpectrum, config: LabConfig | None = None) -> Tuple[np.ndarray, np.ndarray]:
    """Indices and values used for fits: stabilized prefix, first ``fit_skip`` dropped."""
    cfg = config or DEFAULT_CONFIG
    prefix = spectrum.stabilized_prefix()
    n = np.arange(1, len(prefix) + 1)
    keep = n > cfg.fit_skip
    return n[keep], prefix[keep]


def fit_decay(spectrum: SingularSpectrum, family: str, config: LabConfig | None = None) -> DecayFit:
    """Fit one family to the stabilized values of ``spectrum``."""
    n, a = fit_window(spectrum, config)
    return fit_values(n, a, family, config)


@dataclass(slots=True)
class FitFailure:
    """A family that could not be fitted, with the reason reported by :func:`fit_values`."""

    family: str
    message: str
    details: Dict[str, object]

    def to_dict(self) -> Dict[str, object]:
        return {"family": self.family, "code": FitError.code, "message": self.message, "details": self.details}


def compare_families(
    spectrum: SingularSpectrum,
    families: Iterable[str] = tuple(FAMILIES),
    config: LabConfig | None = None,
) -> Dict[str, Union[DecayFit, FitFailure]]:
    """Fit several families on the same window, keyed by family.

    A family whose fit fails is reported as a :class:`FitFailure` instead of
    aborting the comparison.
    """
    out: Dict[str, Union[DecayFit, FitFailure]] = {}
    for family in families:
        try:
            out[family] = fit_decay(spectrum, family, config)
        except FitError as exc:
            logger.warning("No %s fit: %s", family, exc.message)
            out[family] = FitFailure(family, exc.message, dict(exc.details))
    return out


def best_fit(fits: Mapping[str, Union[DecayFit, FitFailure]]) -> str | None:
    """Family with the largest ``r2`` among the successful fits."""
    fitted = {name: fit for name, fit in fits.items() if isinstance(fit, DecayFit)}
    if not fitted:
        return None
    return max(fitted, key=lambda name: fitted[name].r2)
