"""Task deciding ID through the field criterion and Berend's matrix conditions."""

from ai_pipeline_core import get_pipeline_logger, pipeline_task

from toral_kms.berend_certifier import BerendConditions, IDVerdict, id_verdict
from toral_kms.documents.flow.berend_certificate import (
    BerendCertificateData,
    BerendCertificateDocument,
    BerendCertificateFiles,
    ConditionReport,
    ExpandingEntry,
)
from toral_kms.documents.flow.field_spec_input import FieldSpecData
from toral_kms.field_spec import FieldContext, build_field_context
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.kms_catalog import classification_status
from toral_kms.tasks.describe_field.describe_field import coordinates_text

logger = get_pipeline_logger(__name__)


def condition_report(conditions: BerendConditions) -> ConditionReport:
    irreducible = conditions.totally_irreducible
    return ConditionReport(
        ideal_label=conditions.ideal_label,
        totally_irreducible_word=list(irreducible.word.as_vector()) if irreducible else None,
        power_test_exponents=list(irreducible.exponent_set) if irreducible else [],
        expanding=[
            ExpandingEntry(
                embedding_index=index + 1,
                word=list(certificate.word.as_vector()) if certificate else None,
            )
            for index, certificate in enumerate(conditions.expanding)
        ],
        not_virtually_cyclic=conditions.not_virtually_cyclic,
        outcome=conditions.outcome,
    )


def build_berend_certificate(
    context: FieldContext, options: ToralFlowOptions, subcommand: str = "berend check"
) -> tuple[IDVerdict, BerendCertificateData]:
    """The ID verdict over every labelled ideal and its report."""
    verdict = id_verdict(context.units, options.budget, context.ideals)
    status = classification_status(context.field, verdict)
    certificate = verdict.cm_status.cm_certificate
    report = BerendCertificateData(
        manifest=context.manifest(subcommand, options.report_parameters("budget")),
        field_name=context.name,
        verdict=verdict.verdict,
        rank=verdict.rank,
        cm_status=verdict.cm_status.kind,
        cm_reason=verdict.cm_status.reason,
        conjugation_image=coordinates_text(certificate.conjugation_image) if certificate else None,
        field_route=verdict.field_route,
        matrix_route=verdict.matrix_route,
        agreement=verdict.agreement,
        conditions=[condition_report(c) for c in verdict.conditions],
        classification=status.kind,
        classification_notes=status.notes,
        zw_condition=verdict.zw_condition,
    )
    return verdict, report


@pipeline_task
async def certify_berend_task(
    spec: FieldSpecData, flow_options: ToralFlowOptions
) -> BerendCertificateDocument:
    """Certify or refute ID for the field of the specification.

    Args:
        spec: Loaded field specification
        flow_options: Flow configuration options

    Returns:
        BerendCertificateDocument with the verdict and both decision routes
    """
    context = build_field_context(
        spec, flow_options.precision_bits, flow_options.max_precision_bits
    )
    _, report = build_berend_certificate(context, flow_options, "certify_berend")
    logger.info(f"{report.field_name}: verdict {report.verdict}, CM status {report.cm_status}")
    return BerendCertificateDocument.create_as_json(
        name=BerendCertificateFiles.BEREND_CERTIFICATE.value,
        description=f"ID verdict for {report.field_name}",
        data=report,
    )
