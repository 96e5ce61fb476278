"""Loading field specification files and building the field, unit group and ideals from them."""

import json
import tomllib
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from ai_pipeline_core import get_pipeline_logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from toral_kms.documents.flow.field_spec_input import (
    FieldSpecData,
    IdealSpecData,
    parse_rational,
)
from toral_kms.documents.manifest import ParameterValue, RunManifest, build_manifest
from toral_kms.exact_core import RationalPolynomial
from toral_kms.exceptions import ValidationFailure
from toral_kms.ideal_lattice import (
    IntegralIdeal,
    ideal_from_basis,
    ideal_from_generators,
    unit_ideal,
)
from toral_kms.number_field import FieldSpec, create_field, element
from toral_kms.toral_action import ToralRep, build_toral_rep
from toral_kms.unit_group import UnitGroupData, standard_unit_group

logger = get_pipeline_logger(__name__)

SUPPORTED_SUFFIXES = (".toml", ".json")


def key_path(location: Sequence[int | str]) -> str:
    """Render a pydantic error location as ``units[0][1]``."""
    text = ""
    for part in location:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else part
    return text


def parse_field_spec(raw: object, source: str) -> FieldSpecData:
    """Validate already parsed file contents.

    Raises:
        ValidationFailure: at the first malformed entry, located by file and key path
    """
    try:
        spec = FieldSpecData.model_validate(raw)
    except ValidationError as error:
        first = error.errors()[0]
        message = first["msg"].removeprefix("Value error, ")
        raise ValidationFailure(message, f"{source}:{key_path(first['loc'])}") from error
    return spec.model_copy(update={"source": source})


def load_field_spec(path: Path) -> FieldSpecData:
    """Read a TOML or JSON field specification.

    Raises:
        ValidationFailure: for an unknown suffix, a syntax error or malformed contents
        OSError: if the file cannot be read
    """
    if path.suffix not in SUPPORTED_SUFFIXES:
        raise ValidationFailure(f"unsupported field spec format {path.suffix!r}", str(path))
    text = path.read_text(encoding="utf-8")
    try:
        raw = tomllib.loads(text) if path.suffix == ".toml" else json.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as error:
        raise ValidationFailure(f"cannot parse file: {error}", str(path)) from error
    spec = parse_field_spec(raw, str(path))
    logger.debug(f"Loaded field spec {path}")
    return spec


def _fractions(values: Sequence[str]) -> list[Fraction]:
    return [parse_rational(value) for value in values]


class FieldContext(BaseModel):
    """A verified field with its unit group and labelled ideal class representatives."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: FieldSpecData
    field: FieldSpec = Field(repr=False)
    units: UnitGroupData = Field(repr=False)
    ideals: tuple[IntegralIdeal, ...]

    @property
    def name(self) -> str:
        return self.field.name

    def ideal(self, label: str | None = None) -> IntegralIdeal:
        """The ideal with this label, or the first one."""
        if label is None:
            return self.ideals[0]
        for ideal in self.ideals:
            if ideal.label == label:
                return ideal
        labels = [ideal.label for ideal in self.ideals]
        raise ValidationFailure(f"no ideal labelled {label!r}; known labels {labels}")

    def rep(self, label: str | None = None) -> ToralRep:
        return build_toral_rep(self.units, self.ideal(label))

    def manifest(self, subcommand: str, parameters: dict[str, ParameterValue]) -> RunManifest:
        return build_manifest(
            subcommand,
            parameters,
            field_spec=self.spec.source,
            unit_provenance=self.units.provenance,
            finite_index_caveat=self.units.finite_index_caveat,
        )


def _ideal(field: FieldSpec, label: str, entry: IdealSpecData) -> IntegralIdeal:
    if entry.basis is not None:
        return ideal_from_basis(field, entry.basis, label)
    return ideal_from_generators(field, [_fractions(g) for g in entry.generators or []], label)


def build_field_context(
    spec: FieldSpecData, precision_bits: int = 64, max_precision_bits: int = 1024
) -> FieldContext:
    """Create the field, resolve its unit group and verify every listed ideal.

    User-supplied units are verified; otherwise units are computed for rank 0 and real
    quadratic fields, and any other field needs generators in the spec.

    Raises:
        ValidationFailure: for a bad polynomial, basis, unit or ideal
        DependentUnitsError: if the supplied units are multiplicatively dependent
        UndeterminedError: if independence cannot be certified at max precision
    """
    polynomial = RationalPolynomial(coefficients=tuple(_fractions(spec.poly)))
    basis = [_fractions(vector) for vector in spec.integral_basis or []] or None
    field = create_field(polynomial, basis, spec.name)
    candidates = [element(field, _fractions(vector)) for vector in spec.units or []]
    units = standard_unit_group(field, candidates or None, precision_bits, max_precision_bits)
    if units.finite_index_caveat:
        logger.warning(f"{field.name}: unit generators span a subgroup of unknown finite index")

    ideals = tuple(
        _ideal(field, label, entry) for label, entry in (spec.ideals or {}).items()
    ) or (unit_ideal(field),)
    labels = [ideal.label for ideal in ideals]
    logger.info(
        f"Field {field.name}: degree {field.degree}, signature {field.signature}, unit rank "
        f"{units.rank}, ideals {labels}"
    )
    return FieldContext(spec=spec, field=field, units=units, ideals=ideals)


def load_field_context(
    path: Path, precision_bits: int = 64, max_precision_bits: int = 1024
) -> FieldContext:
    return build_field_context(load_field_spec(path), precision_bits, max_precision_bits)
