"""Task describing the field, its verified unit group and its ideals."""

from ai_pipeline_core import get_pipeline_logger, pipeline_task

from toral_kms.documents.flow.field_report import (
    FieldReportData,
    FieldReportDocument,
    FieldReportFiles,
    IdealReport,
    UnitGroupReport,
)
from toral_kms.documents.flow.field_spec_input import FieldSpecData, rational_text
from toral_kms.field_spec import FieldContext, build_field_context
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.ideal_lattice import ideal_norm
from toral_kms.number_field import FieldElement, basis_discriminant
from toral_kms.unit_group import UnitGroupData, unit_rank

logger = get_pipeline_logger(__name__)


def coordinates_text(value: FieldElement) -> list[str]:
    return [rational_text(c) for c in value.coords]


def unit_group_report(group: UnitGroupData) -> UnitGroupReport:
    return UnitGroupReport(
        rank=group.rank,
        torsion_order=group.torsion_order,
        torsion_generator=coordinates_text(group.torsion_generator),
        free_generators=[coordinates_text(u) for u in group.free_generators],
        regulator=[rational_text(group.regulator.lower), rational_text(group.regulator.upper)],
        regulator_approx=float(group.regulator.center),
        provenance=group.provenance,
        finite_index_caveat=group.finite_index_caveat,
    )


def build_field_report(
    context: FieldContext, options: ToralFlowOptions, subcommand: str = "field info"
) -> FieldReportData:
    field = context.field
    parameters = options.report_parameters("precision_bits", "max_precision_bits")
    return FieldReportData(
        manifest=context.manifest(subcommand, parameters),
        name=field.name,
        polynomial=[rational_text(c) for c in field.polynomial.coefficients],
        degree=field.degree,
        signature=field.signature,
        discriminant=rational_text(basis_discriminant(field)),
        basis_source=field.basis_source,
        integral_basis=[[rational_text(c) for c in b] for b in field.integral_basis],
        unit_rank=unit_rank(field),
        units=unit_group_report(context.units),
        ideals=[
            IdealReport(
                label=ideal.label,
                norm=ideal_norm(ideal),
                basis=[list(v) for v in ideal.basis_vectors],
            )
            for ideal in context.ideals
        ],
    )


@pipeline_task
async def describe_field_task(
    spec: FieldSpecData, flow_options: ToralFlowOptions
) -> FieldReportDocument:
    """Verify the field specification and describe the result.

    Args:
        spec: Loaded field specification
        flow_options: Flow configuration options

    Returns:
        FieldReportDocument with the field invariants and unit group
    """
    context = build_field_context(
        spec, flow_options.precision_bits, flow_options.max_precision_bits
    )
    report = build_field_report(context, flow_options, "describe_field")
    logger.info(f"Described {report.name}: unit rank {report.unit_rank}")
    return FieldReportDocument.create_as_json(
        name=FieldReportFiles.FIELD_REPORT.value,
        description=f"Field invariants and unit group of {report.name}",
        data=report,
    )
