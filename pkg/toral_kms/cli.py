"""Subcommand command line front end.

Every subcommand writes one canonical JSON report (stdout or ``--output``). Exit status is 0 on
success, 2 for invalid input or a failed verification and 3 when a verdict stays undetermined.
"""

import json
import sys
from collections.abc import Sequence
from pathlib import Path

from ai_pipeline_core import get_pipeline_logger
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import (
    BaseSettings,
    CliApp,
    CliPositionalArg,
    CliSubCommand,
    SettingsConfigDict,
    SettingsError,
)

from toral_kms.berend_certifier import (
    IDVerdict,
    id_verdict,
    is_cm,
    real_subfield_lattice,
    real_unit_subgroup,
)
from toral_kms.documents import (
    EquidistReportData,
    ReportKind,
    UnitsReportData,
    canonical_json,
    report_schema,
)
from toral_kms.documents.flow.field_spec_input import parse_rational
from toral_kms.dynamics_sim import (
    DEFAULT_START_DENOMINATOR,
    SimConfig,
    SimScheme,
    equidistribution,
    invariant_subtorus_start,
    random_start,
)
from toral_kms.exceptions import UndeterminedError, ValidationFailure
from toral_kms.field_spec import FieldContext, build_field_context, load_field_spec
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.kms_catalog.catalog import MIN_BETA
from toral_kms.tasks.assemble_kms_report import build_kms_report, build_prim_report
from toral_kms.tasks.certify_berend import build_berend_certificate
from toral_kms.tasks.describe_field import build_field_report, unit_group_report
from toral_kms.tasks.enumerate_orbits import (
    build_isotropy_report,
    build_orbit_catalog,
    parse_point,
)
from toral_kms.tasks.enumerate_orbits.enumerate_orbits import point_text
from toral_kms.toral_action import RationalTorusPoint, ToralRep, build_toral_rep

logger = get_pipeline_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNDETERMINED = 3


def write_text(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {output}")


def emit(report: BaseModel, output: Path | None) -> None:
    """Write the canonical JSON of a report after checking it re-validates."""
    text = canonical_json(report)
    type(report).model_validate_json(text)
    write_text(text, output)


def parse_start(text: str) -> RationalTorusPoint | tuple[float, ...]:
    """Exact point when every coordinate is rational, otherwise a float vector."""
    parts = text.split(",")
    try:
        return RationalTorusPoint.from_fractions([parse_rational(part) for part in parts])
    except ValueError:
        pass
    try:
        return tuple(float(part) for part in parts)
    except ValueError as error:
        raise ValidationFailure(f"malformed start {text!r}", "--start") from error


def parse_frequencies(text: str) -> tuple[tuple[int, ...], ...]:
    """Vectors separated by ``;`` with comma separated entries, e.g. ``1,0;1,1``."""
    try:
        return tuple(tuple(int(x) for x in vector.split(",")) for vector in text.split(";"))
    except ValueError as error:
        raise ValidationFailure(f"malformed frequencies {text!r}", "--frequencies") from error


class FieldCommand(BaseModel):
    """Options shared by every subcommand that reads a field specification."""

    field_spec: CliPositionalArg[Path] = Field(description="TOML or JSON field specification")
    output: Path | None = Field(default=None, description="Report file; stdout when omitted")
    threads: int = Field(default=1, ge=1, description="Worker threads across ideals")
    budget: int = Field(default=6, ge=1, description="Word-length budget of certificate searches")
    precision_bits: int = Field(default=64, ge=16, description="Starting working precision")
    max_precision_bits: int = Field(
        default=1024, ge=16, description="Precision at which certification gives up"
    )

    def flow_options(self, **values: object) -> ToralFlowOptions:
        return ToralFlowOptions.model_validate(
            {
                "field_spec": self.field_spec,
                "threads": self.threads,
                "budget": self.budget,
                "precision_bits": self.precision_bits,
                "max_precision_bits": self.max_precision_bits,
                **values,
            }
        )

    def context(self, drop_units: bool = False) -> FieldContext:
        spec = load_field_spec(self.field_spec)
        if drop_units:
            spec = spec.model_copy(update={"units": None})
        return build_field_context(spec, self.precision_bits, self.max_precision_bits)

    def verdict(self, context: FieldContext) -> IDVerdict:
        return id_verdict(context.units, self.budget, context.ideals)


class FieldInfo(FieldCommand):
    """Field invariants, integral basis, unit group and ideals."""

    def cli_cmd(self) -> None:
        context = self.context()
        emit(build_field_report(context, self.flow_options()), self.output)


class UnitsVerify(FieldCommand):
    """Verify the unit generators listed in the field specification."""

    def cli_cmd(self) -> None:
        context = self.context()
        if context.units.rank and not context.spec.units:
            raise ValidationFailure("no unit generators to verify", context.spec.source)
        parameters = self.flow_options().report_parameters("precision_bits", "max_precision_bits")
        report = UnitsReportData(
            manifest=context.manifest("units verify", parameters),
            field_name=context.name,
            units=unit_group_report(context.units),
        )
        emit(report, self.output)


class UnitsQuadratic(FieldCommand):
    """Compute the fundamental unit of a real quadratic field, ignoring listed units."""

    def cli_cmd(self) -> None:
        context = self.context(drop_units=True)
        if context.field.signature != (2, 0):
            raise ValidationFailure(f"{context.name} is not real quadratic", context.spec.source)
        report = UnitsReportData(
            manifest=context.manifest("units quadratic", {}),
            field_name=context.name,
            units=unit_group_report(context.units),
        )
        emit(report, self.output)


class BerendCheck(FieldCommand):
    """Decide ID through the field criterion and Berend's matrix conditions."""

    require_id: bool = Field(default=False, description="Exit 2 unless the verdict is ID")

    def cli_cmd(self) -> None:
        context = self.context()
        verdict, report = build_berend_certificate(context, self.flow_options())
        emit(report, self.output)
        if verdict.verdict == "undetermined":
            raise UndeterminedError(f"ID verdict of {context.name} is undetermined")
        if self.require_id and verdict.verdict != "ID":
            raise ValidationFailure(f"{context.name}: verdict is {verdict.verdict}, not ID")


class OrbitsEnumerate(FieldCommand):
    """Finite orbits and isotropy groups of every point with denominator ≤ qmax."""

    qmax: int = Field(default=3, ge=1, description="Largest orbit denominator")
    ideal: str | None = Field(default=None, description="Only this ideal label")

    def cli_cmd(self) -> None:
        context = self.context()
        if self.ideal is not None:
            context = context.model_copy(update={"ideals": (context.ideal(self.ideal),)})
        emit(build_orbit_catalog(context, self.flow_options(qmax=self.qmax)), self.output)


class Isotropy(FieldCommand):
    """Orbit size and isotropy group of one rational point."""

    point: str = Field(description="Comma separated rational coordinates, e.g. 1/5,0")
    ideal: str | None = Field(default=None, description="Ideal label; the first one by default")

    def cli_cmd(self) -> None:
        context = self.context()
        emit(build_isotropy_report(context, parse_point(self.point), self.ideal), self.output)


class KmsReport(FieldCommand):
    """Extremal KMS_β parameters with finite orbits up to qmax."""

    beta: float = Field(default=3.0, gt=MIN_BETA, description="Inverse temperature, β > 2")
    qmax: int = Field(default=3, ge=1, description="Largest orbit denominator")
    grid: int | None = Field(default=None, gt=0, description="Character sample grid size")
    traces: bool = Field(default=False, description="Add trace values at sample points")

    def cli_cmd(self) -> None:
        context = self.context()
        verdict = self.verdict(context)
        options = self.flow_options(beta=self.beta, qmax=self.qmax, character_grid=self.grid)
        emit(build_kms_report(context, verdict, options, self.traces), self.output)
        if verdict.verdict == "undetermined":
            raise UndeterminedError(f"classification status of {context.name} is undetermined")


class Prim(FieldCommand):
    """Strata of the primitive ideal space; needs an ID action."""

    qmax: int = Field(default=3, ge=1, description="Largest quasi-orbit denominator")

    def cli_cmd(self) -> None:
        context = self.context()
        verdict = self.verdict(context)
        if verdict.verdict == "undetermined":
            raise UndeterminedError(f"ID verdict of {context.name} is undetermined")
        emit(build_prim_report(context, verdict, self.flow_options(qmax=self.qmax)), self.output)


class SimulateEquidist(FieldCommand):
    """Sample an orbit on the dual torus and report Weyl sums."""

    ideal: str | None = Field(default=None, description="Ideal label; the first one by default")
    scheme: SimScheme = Field(default="random_walk", description="random_walk or ball_enumeration")
    start: str | None = Field(default=None, description="Comma separated start coordinates")
    steps: int = Field(default=10_000, gt=0, description="Random walk length")
    seed: int = Field(default=0, description="Random walk and start seed")
    radius: int | None = Field(default=None, gt=0, description="Ball radius in word length")
    frequencies: str | None = Field(default=None, description="Test frequencies, e.g. 1,0;0,1")
    csv: Path | None = Field(default=None, description="Samples CSV file")
    subtorus: bool = Field(
        default=False, description="Start on the invariant subtorus of the real subfield"
    )

    def _subtorus(
        self, context: FieldContext
    ) -> tuple[ToralRep, RationalTorusPoint, tuple[tuple[int, ...], ...]]:
        ideal = context.ideal(self.ideal)
        if not ideal.is_unit_ideal:
            raise ValidationFailure("--subtorus works on the unit ideal only")
        status = is_cm(context.field, context.units, self.budget)
        certificate = status.cm_certificate
        if status.kind != "CM" or certificate is None:
            raise ValidationFailure(f"--subtorus needs a CM field; {context.name}: {status.reason}")
        lattice = real_subfield_lattice(context.field, certificate)
        start = invariant_subtorus_start(lattice, DEFAULT_START_DENOMINATOR, self.seed)
        rep = build_toral_rep(real_unit_subgroup(context.units, certificate), ideal)
        return rep, start, tuple(tuple(v) for v in lattice)

    def cli_cmd(self) -> None:
        context = self.context()
        frequencies = parse_frequencies(self.frequencies) if self.frequencies else ()
        start: RationalTorusPoint | tuple[float, ...]
        if self.subtorus:
            rep, start, lattice = self._subtorus(context)
            frequencies = frequencies or lattice
        else:
            rep = context.rep(self.ideal)
            start = parse_start(self.start) if self.start else random_start(
                rep.dimension, self.seed
            )
        exact = isinstance(start, RationalTorusPoint)
        config = SimConfig(
            scheme=self.scheme,
            steps=self.steps,
            radius=self.radius,
            seed=self.seed,
            start=None if isinstance(start, RationalTorusPoint) else start,
            start_point=start if exact else None,
            frequencies=frequencies,
            output=self.csv,
        )
        _, result = equidistribution(rep, config)
        parameters = self.flow_options(seed=self.seed, steps=self.steps).report_parameters(
            "seed", "steps"
        )
        parameters.update(
            {"scheme": self.scheme, "radius": self.radius, "subtorus": self.subtorus}
        )
        report = EquidistReportData(
            manifest=context.manifest("simulate equidist", parameters),
            field_name=context.name,
            ideal_label=rep.ideal.label,
            start=point_text(start) if exact else ["%.12g" % x for x in start],
            csv=str(self.csv) if self.csv else None,
            report=result,
        )
        emit(report, self.output)


class Schemas(BaseModel):
    """JSON schema of one report kind."""

    kind: CliPositionalArg[ReportKind] = Field(description="Report kind")
    output: Path | None = Field(default=None, description="Schema file; stdout when omitted")

    def cli_cmd(self) -> None:
        text = json.dumps(report_schema(self.kind), sort_keys=True, indent=2, ensure_ascii=False)
        write_text(text + "\n", self.output)


class FieldGroup(BaseModel):
    """Field invariants."""

    info: CliSubCommand[FieldInfo]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


class UnitsGroup(BaseModel):
    """Unit group verification and computation."""

    verify: CliSubCommand[UnitsVerify]
    quadratic: CliSubCommand[UnitsQuadratic]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


class BerendGroup(BaseModel):
    """ID certification."""

    check: CliSubCommand[BerendCheck]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


class OrbitsGroup(BaseModel):
    """Finite orbit enumeration."""

    enumerate: CliSubCommand[OrbitsEnumerate]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


class KmsGroup(BaseModel):
    """KMS state catalog."""

    report: CliSubCommand[KmsReport]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


class SimulateGroup(BaseModel):
    """Orbit simulation."""

    equidist: CliSubCommand[SimulateEquidist]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


class ToralKmsCli(BaseSettings):
    """KMS states of unit groups acting on number field tori."""

    model_config = SettingsConfigDict(
        cli_prog_name="toral-kms",
        cli_kebab_case=True,
        cli_implicit_flags=True,
        env_prefix="TORAL_KMS_",
    )

    field: CliSubCommand[FieldGroup]
    units: CliSubCommand[UnitsGroup]
    berend: CliSubCommand[BerendGroup]
    orbits: CliSubCommand[OrbitsGroup]
    isotropy: CliSubCommand[Isotropy]
    kms: CliSubCommand[KmsGroup]
    prim: CliSubCommand[Prim]
    simulate: CliSubCommand[SimulateGroup]
    schemas: CliSubCommand[Schemas]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the selected subcommand and return its exit status."""
    try:
        CliApp.run(ToralKmsCli, cli_args=list(argv) if argv is not None else None)
    except UndeterminedError as error:
        logger.error(f"Undetermined: {error}")
        return EXIT_UNDETERMINED
    except (ValidationFailure, ValidationError, SettingsError, OSError) as error:
        logger.error(f"Invalid input: {error}")
        return EXIT_INVALID
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Console script entry point."""
    return run(argv if argv is not None else sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
