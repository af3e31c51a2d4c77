"""Analytic self-maps of the disk, their evaluation and Taylor coefficients."""

from .arith import TruncatedSeries
from .blaschke import BlaschkeCircle, blaschke_radii, circle_floor, interpolating_zeros
from .evaluate import cusp_chain, evaluate
from .geometry import (
    boundary_defect,
    boundary_sup,
    contact_constant,
    cusp_contact_asymptote,
    derivative,
    disk_automorphism,
    fixed_point,
    kappa_bound,
    lens_boundary_defect,
    lens_boundary_image,
    pseudo_diameter,
    pseudo_hyperbolic,
    pullback_window_mass,
)
from .series import PowerSeries, sup_bound, taylor
from .spec import (
    CUSP_CONSTANT,
    Affine,
    BlaschkeFinite,
    BlaschkeInterp,
    Compose,
    Cusp,
    HalfShift,
    Identity,
    Lens,
    OuterWeight,
    PointwiseProduct,
    Polynomial,
    Power,
    ScalarMultiple,
    SymbolSpec,
    from_dict,
    halfshift_lens,
    power_of,
)

__all__ = [
    "CUSP_CONSTANT",
    "Affine",
    "BlaschkeCircle",
    "BlaschkeFinite",
    "BlaschkeInterp",
    "Compose",
    "Cusp",
    "HalfShift",
    "Identity",
    "Lens",
    "OuterWeight",
    "PointwiseProduct",
    "Polynomial",
    "Power",
    "PowerSeries",
    "ScalarMultiple",
    "SymbolSpec",
    "TruncatedSeries",
    "blaschke_radii",
    "boundary_defect",
    "boundary_sup",
    "circle_floor",
    "contact_constant",
    "cusp_chain",
    "cusp_contact_asymptote",
    "derivative",
    "disk_automorphism",
    "evaluate",
    "fixed_point",
    "from_dict",
    "halfshift_lens",
    "interpolating_zeros",
    "kappa_bound",
    "lens_boundary_defect",
    "lens_boundary_image",
    "power_of",
    "pseudo_diameter",
    "pseudo_hyperbolic",
    "pullback_window_mass",
    "sup_bound",
    "taylor",
]
