"""Number fields Q(θ) with an integral basis, element arithmetic and embeddings."""

from .elements import (
    FieldElement,
    element,
    embed,
    from_power_coordinates,
    invert,
    is_integral,
    minimal_polynomial,
    multiplication_matrix,
    multiplication_matrix_rational,
    multiply,
    norm,
    norm_trace,
    one,
    rational,
    theta,
)
from .field import EMBEDDING_PRECISION, basis_discriminant, create_field, default_integral_basis
from .models import BasisSource, EmbeddingHandle, FieldSpec

__all__ = [
    "EMBEDDING_PRECISION",
    "BasisSource",
    "EmbeddingHandle",
    "FieldElement",
    "FieldSpec",
    "basis_discriminant",
    "create_field",
    "default_integral_basis",
    "element",
    "embed",
    "from_power_coordinates",
    "invert",
    "is_integral",
    "minimal_polynomial",
    "multiplication_matrix",
    "multiplication_matrix_rational",
    "multiply",
    "norm",
    "norm_trace",
    "one",
    "rational",
    "theta",
]
