"""Configuration utilities for running opnumlab experiments on a laptop."""

from __future__ import annotations

import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping

try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False

from .errors import ConfigError

THREADS_ENV = "OPNUM_THREADS"
HOME_ENV = "OPNUM_HOME"

logger = logging.getLogger(__name__)


def _threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
        return 1
    return max(1, threads)


def _base_dir_from_env() -> Path:
    raw = os.environ.get(HOME_ENV)
    return Path(raw) if raw else Path.home() / ".opnumlab"


@dataclass(slots=True)
class LabConfig:
    """Runtime configuration shared by every library module.

    Attributes
    ----------
    base_dir:
        Root directory for run artefacts. Defaults to ``~/.opnumlab`` or the
        ``OPNUM_HOME`` environment variable.
    output_dir:
        Directory receiving experiment runs. Derived from ``base_dir`` when
        not provided explicitly.
    n_max:
        Largest accepted one-variable truncation (matrix side).
    d_max:
        Largest accepted total degree for two-variable truncations.
    k_max:
        Largest number of direct-sum blocks for triangular symbols.
    threads:
        Worker threads for column and block parallelism, read from
        ``OPNUM_THREADS``.
    aliasing_tolerance:
        Largest accepted per-coefficient aliasing bound of the FFT Taylor
        extraction.
    stabilization_tolerance:
        Relative change under truncation doubling below which a singular
        value counts as stabilized.
    quadrature_tolerance:
        Relative change between refinements at which boundary quadrature
        is declared converged.
    boundary_levels, boundary_gauss_nodes:
        Dyadic levels per quarter arc and Gauss nodes per panel of the
        boundary rule behind pullback spectra of symbols touching the circle.
    cross_check_tolerance:
        Largest relative deviation accepted between a spectrum and the direct
        two-variable truncation on the values that truncation has settled.
    bounded_max, bounded_spread, approach_final, approach_exponent:
        Classification thresholds used by ``beta_estimate``.
    approach_stretch_clause:
        Also classify as approaching 1 when the stretch exponent reaches
        ``approach_exponent`` while the final ``b_n`` stays below
        ``approach_final``.
    noise_factor:
        Multiple of machine epsilon times ``a_1`` below which singular
        values are treated as round-off.
    """

    base_dir: Path = field(default_factory=_base_dir_from_env)
    output_dir: Path | None = None
    n_max: int = 4096
    d_max: int = 40
    k_max: int = 64
    threads: int = field(default_factory=_threads_from_env)
    aliasing_tolerance: float = 1e-10
    max_oversampled_points: int = 2**22
    stabilization_tolerance: float = 1e-4
    quadrature_tolerance: float = 1e-8
    quadrature_max_points: int = 2**20
    divergence_cap: float = 1e12
    boundary_levels: int = 40
    boundary_gauss_nodes: int = 16
    cross_check_tolerance: float = 0.05
    spectral_floor: float = 1e-12
    fit_skip: int = 5
    min_fit_points: int = 8
    bounded_max: float = 0.98
    bounded_spread: float = 0.02
    approach_final: float = 0.9
    approach_exponent: float = 0.2
    approach_stretch_clause: bool = False
    noise_factor: float = 1e3

    @classmethod
    def from_env(cls) -> "LabConfig":
        """Build a configuration from ``OPNUM_THREADS`` and ``OPNUM_HOME``."""
        return cls(base_dir=_base_dir_from_env(), threads=_threads_from_env())

    def resolved_output_dir(self) -> Path:
        """Return an absolute path to the run directory root.

        The directory is created when it does not yet exist so that the rest of
        the application can assume the path is ready for use.
        """

        target = self.output_dir or self.base_dir / "runs"
        target.mkdir(parents=True, exist_ok=True)
        return target.resolve()

    def with_overrides(self, overrides: Mapping[str, Any]) -> "LabConfig":
        """Return a copy with ``overrides`` applied.

        Parameters
        ----------
        overrides:
            Mapping of field name to new value. Unknown keys are rejected.
        """
        known = {item.name: item for item in fields(self)}
        unknown = sorted(set(overrides) - set(known))
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
        coerced: Dict[str, Any] = {}
        for key, value in overrides.items():
            current = getattr(self, key)
            if key in ("base_dir", "output_dir"):
                coerced[key] = None if value is None else Path(value)
            elif isinstance(current, bool):
                coerced[key] = bool(value)
            elif isinstance(current, int):
                coerced[key] = int(value)
            elif isinstance(current, float):
                coerced[key] = float(value)
            else:
                coerced[key] = value
        return replace(self, **coerced)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-friendly dictionary."""
        data = asdict(self)
        data["base_dir"] = str(self.base_dir)
        data["output_dir"] = None if self.output_dir is None else str(self.output_dir)
        return data


def load_yaml(path: Path, base: LabConfig | None = None) -> LabConfig:
    """Load configuration overrides from a YAML mapping.

    Parameters
    ----------
    path:
        YAML file whose top-level keys are ``LabConfig`` field names.
    base:
        Configuration the overrides apply to (defaults to ``LabConfig()``).
    """
    if not YAML_AVAILABLE:
        raise ConfigError("pyyaml is required to read configuration files")
    with open(path, "r", encoding="utf-8") as handle:
        content = yaml.safe_load(handle)
    if content is None:
        content = {}
    if not isinstance(content, dict):
        raise ConfigError(f"{path} must contain a mapping at the top level")
    return (base or LabConfig()).with_overrides(content)


DEFAULT_CONFIG = LabConfig()
