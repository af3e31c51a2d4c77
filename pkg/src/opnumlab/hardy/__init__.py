"""Weighted composition operators on the Hardy space of the disk."""

from .bounds import (
    bound_special,
    fish_bound,
    gunatillake_prediction,
    operator_norm_bound,
    special_blaschke_zeros,
    special_rate,
    widom_lower_form,
)
from .matrix import Basis, OperatorMatrix, build_matrix, dump_matrix
from .pullback import (
    pullback_applies,
    pullback_block_spectra,
    pullback_spectrum,
    pullback_trace,
)
from .quadrature import (
    BoundaryImage,
    QuadratureNodes,
    QuadratureResult,
    boundary_image,
    boundary_integral,
    boundary_modulus,
    contact_at_real_points,
    graded_nodes,
    hs_norm,
    hs_norm_squared,
    uniform_nodes,
)
from .spectrum import SingularSpectrum, certify, dense_singular_values, eigenvalues, singular_values, weyl_check

__all__ = [
    "Basis",
    "BoundaryImage",
    "OperatorMatrix",
    "QuadratureNodes",
    "QuadratureResult",
    "SingularSpectrum",
    "bound_special",
    "boundary_image",
    "boundary_integral",
    "boundary_modulus",
    "build_matrix",
    "certify",
    "contact_at_real_points",
    "dump_matrix",
    "dense_singular_values",
    "eigenvalues",
    "fish_bound",
    "graded_nodes",
    "gunatillake_prediction",
    "hs_norm",
    "hs_norm_squared",
    "operator_norm_bound",
    "pullback_applies",
    "pullback_block_spectra",
    "pullback_spectrum",
    "pullback_trace",
    "singular_values",
    "special_blaschke_zeros",
    "special_rate",
    "uniform_nodes",
    "weyl_check",
    "widom_lower_form",
]
