"""Decay-rate fits, beta estimates and combinatorial oracles."""

from .beta import APPROACHING_ONE, BOUNDED, INCONCLUSIVE, BetaEstimate, beta_estimate, stretch_exponent
from .fitting import (
    FAMILIES,
    FAMILY_LABELS,
    DecayFit,
    FitFailure,
    best_fit,
    compare_families,
    fit_decay,
    fit_values,
    fit_window,
)
from .lattice import LatticeCount, count_lattice, rearrangement_oracle
from .schedules import (
    BoundEstimate,
    ChobouBudget,
    Level,
    chobou_budget,
    cusp_lower_levels,
    estim_inf_bound,
    estim_inf_schedule,
    lens_lower_levels,
)

__all__ = [
    "APPROACHING_ONE",
    "BOUNDED",
    "BetaEstimate",
    "BoundEstimate",
    "ChobouBudget",
    "DecayFit",
    "FAMILIES",
    "FAMILY_LABELS",
    "FitFailure",
    "INCONCLUSIVE",
    "LatticeCount",
    "Level",
    "best_fit",
    "beta_estimate",
    "chobou_budget",
    "compare_families",
    "count_lattice",
    "cusp_lower_levels",
    "estim_inf_bound",
    "estim_inf_schedule",
    "fit_decay",
    "fit_values",
    "fit_window",
    "lens_lower_levels",
    "rearrangement_oracle",
    "stretch_exponent",
]
