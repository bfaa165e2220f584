"""Complementary code matrices: exact algebra, symmetry group, search, census."""

from .algebra import (
    CorrelationProfile,
    CycSum,
    PhaseCode,
    PhaseMatrix,
    TernaryMatrix,
    autocorrelation,
    composite_autocorrelation,
    cyc_is_zero,
    cyclotomic_polynomial,
    is_ccm,
    is_diagonally_regular,
    row_correlation,
    row_gramian,
    taxicab_norm,
    ternary_is_ccm,
)
from .symmetry import (
    Orbit,
    SymmetryElement,
    apply,
    canonical_form,
    compose,
    inverse,
    normalize,
    orbit,
    orbit_size,
)

__all__ = [
    "CorrelationProfile",
    "CycSum",
    "Orbit",
    "PhaseCode",
    "PhaseMatrix",
    "SymmetryElement",
    "TernaryMatrix",
    "apply",
    "autocorrelation",
    "canonical_form",
    "compose",
    "composite_autocorrelation",
    "cyc_is_zero",
    "cyclotomic_polynomial",
    "inverse",
    "is_ccm",
    "is_diagonally_regular",
    "normalize",
    "orbit",
    "orbit_size",
    "row_correlation",
    "row_gramian",
    "taxicab_norm",
    "ternary_is_ccm",
]
