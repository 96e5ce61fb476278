"""Field specification document: the pipeline's input."""

import re
from enum import StrEnum
from fractions import Fraction
from typing import Annotated, Any

from ai_pipeline_core.documents import FlowDocument
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, StrictInt, model_validator

RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class FieldSpecInputFiles(StrEnum):
    FIELD_SPEC = "field_spec.json"


def parse_rational(value: Any) -> Fraction:
    """An integer or a "p/q" string as an exact Fraction."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"malformed rational {value!r}: write integers or \"p/q\" strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = RATIONAL_PATTERN.match(value)
        if match and match.group(2) != "0":
            numerator, denominator = match.group(1), match.group(2) or "1"
            return Fraction(int(numerator), int(denominator))
    raise ValueError(f"malformed rational {value!r}")


def rational_text(value: Fraction | int) -> str:
    """Canonical "p/q" text of a rational; integers print without a denominator."""
    return str(Fraction(value))


RationalText = Annotated[str, BeforeValidator(lambda value: rational_text(parse_rational(value)))]


class IdealSpecData(BaseModel):
    """One ideal class representative, given by a Z-basis or by generators."""

    model_config = ConfigDict(extra="forbid")

    basis: list[list[StrictInt]] | None = Field(
        default=None, description="Z-basis vectors in integral-basis coordinates"
    )
    generators: list[list[RationalText]] | None = Field(
        default=None, description="Ideal generators as integral-basis coordinate vectors"
    )

    @model_validator(mode="after")
    def _one_description(self) -> "IdealSpecData":
        if (self.basis is None) == (self.generators is None):
            raise ValueError("give exactly one of basis or generators")
        return self


class FieldSpecData(BaseModel):
    """Contents of a field specification file, with rationals in canonical text form."""

    model_config = ConfigDict(extra="forbid")

    name: str | None = None
    poly: list[RationalText] = Field(
        description="Coefficients c_0, ..., c_d of the monic defining polynomial"
    )
    integral_basis: list[list[RationalText]] | None = Field(
        default=None, description="Basis elements as power-basis coordinate vectors"
    )
    units: list[list[RationalText]] | None = Field(
        default=None, description="Free unit generators as integral-basis coordinate vectors"
    )
    ideals: dict[str, IdealSpecData] | None = Field(
        default=None,
        description="Ideal class representatives by label; the unit ideal when absent",
    )
    source: str | None = Field(default=None, description="File the specification came from")


class FieldSpecInputDocument(FlowDocument):
    """Document holding the field specification the pipeline runs on."""

    FILES = FieldSpecInputFiles
