"""Pydantic models describing a number field and its archimedean embeddings."""

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from toral_kms.exact_core import CertifiedInterval, RationalPolynomial

BasisSource = Literal["user", "power", "quadratic_standard"]


class EmbeddingHandle(BaseModel):
    """One archimedean embedding, given by an isolating box of the image of θ.

    Real embeddings carry indices ``1..r``; complex pairs ``r+1..r+s`` are represented by the
    root in the upper half plane.
    """

    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=1, description="1-based embedding index, real embeddings first")
    kind: Literal["real", "complex"]
    root: CertifiedInterval = Field(description="Certified box around the image of θ")

    @property
    def is_real(self) -> bool:
        return self.kind == "real"


class FieldSpec(BaseModel):
    """A number field Q(θ) = Q[x]/(f) with a verified integral basis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(description="Label used in reports")
    polynomial: RationalPolynomial = Field(description="Monic irreducible defining polynomial f")
    integral_basis: tuple[tuple[Fraction, ...], ...] = Field(
        description="Basis elements b_1..b_d, each given by its coordinates in 1, θ, ..., θ^(d-1)"
    )
    basis_inverse: tuple[tuple[Fraction, ...], ...] = Field(
        description="Matrix taking power-basis coordinates to integral-basis coordinates"
    )
    basis_source: BasisSource
    structure_constants: tuple[tuple[tuple[int, ...], ...], ...] = Field(
        description="Entry [i][j] holds the integral-basis coordinates of b_i·b_j"
    )
    one_coordinates: tuple[int, ...] = Field(description="Coordinates of 1 in the integral basis")
    signature: tuple[int, int] = Field(description="(r, s): real embeddings and complex pairs")
    embeddings: tuple[EmbeddingHandle, ...]

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def real_places(self) -> int:
        return self.signature[0]

    @property
    def complex_places(self) -> int:
        return self.signature[1]

    def embedding(self, index: int) -> EmbeddingHandle:
        """Embedding handle by its 1-based index."""
        if not 1 <= index <= len(self.embeddings):
            raise IndexError(f"embedding index {index} outside 1..{len(self.embeddings)}")
        return self.embeddings[index - 1]
