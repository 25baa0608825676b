"""Signed-volume identity for n+2 points in R^n, with exact and float kernels."""

from .applications import (
    AllDegenerate,
    BarycentricCoords,
    DegenerateSimplex,
    DependenceCertificate,
    barycentric,
    dependence_certificate,
    is_degenerate_simplex,
)
from .identity import (
    CoefficientVector,
    Configuration,
    DimensionMismatch,
    Residual,
    build_m_matrix,
    coefficients,
    delta,
    delta_expanded,
    residual,
    signed_volume,
)
from .scalar_linalg import SquareMatrix, det, det_bareiss, det_cofactor, det_float

__version__ = "0.1.0"
