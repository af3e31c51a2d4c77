"""Composition operators on the Hardy space of the bidisk."""

from .direct import (
    CrossCheck,
    components,
    cross_check,
    direct2d_matrix,
    direct2d_spectrum,
    half_side_degree,
    monomials,
)
from .kernels import (
    BOUNDED_NOT_COMPACT,
    HILBERT_SCHMIDT,
    UNBOUNDED,
    NormGrowth,
    TrichotomyEvidence,
    bergman_norm_growth,
    bilens_trichotomy,
    glued_hs_quadrature,
    kernel_norm,
    kernel_ratio,
    kernel_ratio_slope,
)
from .models import (
    block_count,
    block_norms,
    block_spectra,
    glued_spectrum,
    lower_block_bound,
    majo_schedule,
    merge_blocks,
    tensor_spectrum,
    triangular_blocks,
    triangular_ceiling,
    triangular_spectrum,
    upper_block_bound,
)
from .symbol2d import (
    Diagonal,
    Glued,
    Separated,
    Symbol2D,
    Triangular,
    chobou_symbol,
    cusp_blaschke_symbol,
    from_dict,
    is_rudin_instance,
    lens_blaschke_symbol,
)

__all__ = [
    "BOUNDED_NOT_COMPACT",
    "CrossCheck",
    "Diagonal",
    "Glued",
    "HILBERT_SCHMIDT",
    "NormGrowth",
    "Separated",
    "Symbol2D",
    "Triangular",
    "TrichotomyEvidence",
    "UNBOUNDED",
    "bergman_norm_growth",
    "bilens_trichotomy",
    "block_count",
    "block_norms",
    "block_spectra",
    "chobou_symbol",
    "components",
    "cross_check",
    "cusp_blaschke_symbol",
    "direct2d_matrix",
    "direct2d_spectrum",
    "from_dict",
    "glued_hs_quadrature",
    "glued_spectrum",
    "half_side_degree",
    "is_rudin_instance",
    "kernel_norm",
    "kernel_ratio",
    "kernel_ratio_slope",
    "lens_blaschke_symbol",
    "lower_block_bound",
    "majo_schedule",
    "merge_blocks",
    "monomials",
    "tensor_spectrum",
    "triangular_blocks",
    "triangular_ceiling",
    "triangular_spectrum",
    "upper_block_bound",
]
