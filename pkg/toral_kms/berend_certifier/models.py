"""Certificates and verdicts produced by the Berend certifier."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from toral_kms.exact_core import RationalPolynomial, RealInterval
from toral_kms.number_field import FieldElement
from toral_kms.unit_group import UnitWord

Verdict = Literal["ID", "not_ID", "undetermined"]
CMKind = Literal["CM", "not_CM", "undetermined"]

ZW_CONDITION_NOTE = (
    "maximality of rank among abelian supergroups holds for the full verified unit group "
    "action; it is not searched"
)


class TotalIrreducibilityCertificate(BaseModel):
    """deg minpoly(u^m) = d for every m in the power test set."""

    model_config = ConfigDict(frozen=True)

    word: UnitWord
    exponent_set: tuple[int, ...] = Field(description="All m ≥ 1 with φ(m) ≤ d²")
    degrees: tuple[int, ...] = Field(description="Minimal polynomial degree of u^m, per m")


class CMCertificate(BaseModel):
    """Exact and certified evidence that θ ↦ g(θ) is complex conjugation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    conjugation_image: FieldElement = Field(description="g(θ)")
    fixed_field_generator: FieldElement = Field(description="Primitive element of the fixed field")
    fixed_field_polynomial: RationalPolynomial = Field(
        description="Minimal polynomial of the fixed field generator; degree d/2, all roots real"
    )
    matched_embeddings: tuple[int, ...] = Field(
        description="Embedding indices where σ(g(θ)) was certified to equal conj(σ(θ))"
    )


class CMStatus(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: CMKind
    reason: str
    cm_certificate: CMCertificate | None = None
    irreducibility: TotalIrreducibilityCertificate | None = None


class ExpandingCertificate(BaseModel):
    """A unit word with |σ(u)| certified above 1 at one embedding."""

    model_config = ConfigDict(frozen=True)

    embedding_index: int
    word: UnitWord
    abs_squared: RealInterval = Field(description="Enclosure of |σ(u)|², strictly above 1")


class BerendConditions(BaseModel):
    """Outcome of the three matrix-level conditions on one ideal dual."""

    model_config = ConfigDict(frozen=True)

    ideal_label: str
    rank: int
    totally_irreducible: TotalIrreducibilityCertificate | None = Field(
        description="Condition 1; None means not found within budget, not disproved"
    )
    expanding: tuple[ExpandingCertificate | None, ...] = Field(
        description="Condition 2, one entry per embedding"
    )
    not_virtually_cyclic: bool = Field(description="Condition 3: rank ≥ 2")

    @property
    def all_expanding(self) -> bool:
        return all(certificate is not None for certificate in self.expanding)

    @property
    def satisfied(self) -> bool:
        return (
            self.totally_irreducible is not None
            and self.all_expanding
            and self.not_virtually_cyclic
        )

    @property
    def outcome(self) -> Verdict:
        """ID when all conditions hold, not_ID when the rank condition fails."""
        if self.satisfied:
            return "ID"
        if not self.not_virtually_cyclic:
            return "not_ID"
        return "undetermined"


class IDVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    rank: int
    cm_status: CMStatus
    field_route: Verdict = Field(description="not CM and rank ≥ 2")
    matrix_route: Verdict = Field(description="Berend conditions on every ideal dual")
    conditions: tuple[BerendConditions, ...]
    agreement: bool = Field(description="Both routes decided and agree")
    zw_condition: str = ZW_CONDITION_NOTE
