"""Task assembling the extremal KMS_β catalog, its trace samples and the Prim strata."""

from ai_pipeline_core import get_pipeline_logger, pipeline_task

from toral_kms.berend_certifier import IDVerdict, id_verdict
from toral_kms.documents.flow.berend_certificate import BerendCertificateData
from toral_kms.documents.flow.field_spec_input import FieldSpecData, rational_text
from toral_kms.documents.flow.kms_report import (
    CharacterReport,
    KmsReportData,
    KmsReportDocument,
    KmsReportFiles,
    KmsStratumReport,
    OrbitParameterReport,
    PrimIdealReport,
    PrimStratumReport,
    TraceSample,
)
from toral_kms.documents.flow.orbit_catalog import OrbitCatalogData
from toral_kms.documents.reports import PrimReportData
from toral_kms.exceptions import InternalConsistencyError
from toral_kms.field_spec import FieldContext, build_field_context
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.kms_catalog import (
    ExtremalTraceParam,
    KmsCatalog,
    OrbitParameters,
    classification_status,
    enumerate_extremal_params,
    evaluate_trace,
)
from toral_kms.orbit_isotropy import (
    CharacterValue,
    PrimStratum,
    prim_strata,
    quasi_orbit_space,
)
from toral_kms.tasks.enumerate_orbits.enumerate_orbits import point_text
from toral_kms.unit_group import UnitWord

logger = get_pipeline_logger(__name__)


def character_report(character: CharacterValue) -> CharacterReport:
    return CharacterReport(
        torsion_index=character.torsion_index,
        angles=[rational_text(angle) for angle in character.angles],
    )


def trace_samples(ideal_label: str, entry: OrbitParameters) -> list[TraceSample]:
    """τ at j = 0 and the basis vectors for the identity, and at j = 0 for a generator of V."""
    record = entry.record
    dimension = record.orbit.base.dimension
    identity = UnitWord.identity(record.isotropy.free_rank)
    points: list[tuple[tuple[int, ...], UnitWord]] = [((0,) * dimension, identity)]
    points += [
        (tuple(int(i == k) for i in range(dimension)), identity) for k in range(dimension)
    ]
    if record.isotropy.torsion_order > 1:
        generator = UnitWord.from_vector(record.isotropy.torsion_generator)
        points.append(((0,) * dimension, generator))

    samples = []
    for character in entry.torsion_characters:
        param = ExtremalTraceParam(
            ideal_label=ideal_label, measure="orbit", record=record, character=character
        )
        for j, word in points:
            value = evaluate_trace(param, j, word)
            samples.append(
                TraceSample(
                    torsion_index=character.torsion_index,
                    j=list(j),
                    word=list(word.as_vector()),
                    value=(value.real, value.imag),
                )
            )
    return samples


def orbit_parameter_report(
    ideal_label: str, entry: OrbitParameters, traces: bool
) -> OrbitParameterReport:
    orbit = entry.record.orbit
    return OrbitParameterReport(
        q=orbit.q,
        base=point_text(orbit.base),
        size=orbit.size,
        characters=str(entry.descriptor),
        torsion_characters=[character_report(c) for c in entry.torsion_characters],
        sample_characters=[character_report(c) for c in entry.sample_characters],
        traces=trace_samples(ideal_label, entry) if traces else [],
    )


def prim_stratum_report(stratum: PrimStratum) -> PrimStratumReport:
    return PrimStratumReport(
        q=stratum.q,
        base=point_text(stratum.base) if stratum.base is not None else None,
        size=stratum.size,
        characters=str(stratum.characters),
    )


def prim_reports(context: FieldContext, verdict: IDVerdict, qmax: int) -> list[PrimIdealReport]:
    """Prim strata of every ideal.

    Raises:
        ValidationFailure: unless the verdict is ID
    """
    reports = []
    for ideal in context.ideals:
        rep = context.rep(ideal.label)
        strata = prim_strata(quasi_orbit_space(rep, qmax, verdict), rep)
        reports.append(
            PrimIdealReport(
                ideal_label=ideal.label, strata=[prim_stratum_report(s) for s in strata]
            )
        )
    return reports


def kms_catalog(context: FieldContext, verdict: IDVerdict, options: ToralFlowOptions) -> KmsCatalog:
    status = classification_status(context.field, verdict)
    return enumerate_extremal_params(
        context.units,
        context.ideals,
        options.qmax,
        status,
        beta=options.beta,
        grid=options.character_grid,
        threads=options.threads,
    )


def build_kms_report(
    context: FieldContext,
    verdict: IDVerdict,
    options: ToralFlowOptions,
    traces: bool = False,
    subcommand: str = "kms report",
) -> KmsReportData:
    """Extremal trace parameters for every ideal, with Prim strata when the action is ID.

    Args:
        context: Field, unit group and ideals
        verdict: ID verdict of the same unit group
        options: qmax, β, character grid and thread count
        traces: Also record trace values at a few sample points
        subcommand: Name recorded in the manifest
    """
    catalog = kms_catalog(context, verdict, options)
    parameters = options.report_parameters("beta", "qmax", "character_grid", "threads")
    parameters["traces"] = traces
    return KmsReportData(
        manifest=context.manifest(subcommand, parameters),
        field_name=catalog.field_name,
        beta=catalog.beta,
        qmax=catalog.qmax,
        unit_rank=catalog.unit_rank,
        classification=catalog.status.kind,
        classification_notes=catalog.status.notes,
        discrete_parameter_count=catalog.discrete_parameter_count,
        strata=[
            KmsStratumReport(
                ideal_label=stratum.ideal_label,
                haar=stratum.haar,
                orbits=[
                    orbit_parameter_report(stratum.ideal_label, entry, traces)
                    for entry in stratum.orbits
                ],
            )
            for stratum in catalog.strata
        ],
        prim=prim_reports(context, verdict, options.qmax) if verdict.verdict == "ID" else None,
    )


def build_prim_report(
    context: FieldContext, verdict: IDVerdict, options: ToralFlowOptions
) -> PrimReportData:
    """Prim strata of every ideal; requires an ID verdict."""
    return PrimReportData(
        manifest=context.manifest("prim", options.report_parameters("qmax", "budget")),
        field_name=context.name,
        qmax=options.qmax,
        verdict=verdict.verdict,
        ideals=prim_reports(context, verdict, options.qmax),
    )


def check_orbit_counts(report: KmsReportData, catalog: OrbitCatalogData) -> None:
    """The KMS strata must list exactly the orbits of the orbit catalog.

    Raises:
        InternalConsistencyError: if an ideal has a different number of orbits
    """
    expected = catalog.orbit_counts()
    for stratum in report.strata:
        if expected.get(stratum.ideal_label) != len(stratum.orbits):
            raise InternalConsistencyError(
                f"{stratum.ideal_label}: KMS catalog lists {len(stratum.orbits)} orbits, "
                f"orbit catalog lists {expected.get(stratum.ideal_label)}"
            )


@pipeline_task
async def assemble_kms_report_task(
    spec: FieldSpecData,
    certificate: BerendCertificateData,
    orbit_catalog: OrbitCatalogData,
    flow_options: ToralFlowOptions,
) -> KmsReportDocument:
    """Assemble the extremal KMS_β catalog from the verdict and the orbit catalog.

    Args:
        spec: Loaded field specification
        certificate: ID verdict produced by the certification step
        orbit_catalog: Finite orbits produced by the enumeration step
        flow_options: Flow configuration options

    Returns:
        KmsReportDocument with the parameters, trace samples and Prim strata

    Raises:
        InternalConsistencyError: if the recomputed verdict or orbit counts disagree with the
            documents of the earlier steps
    """
    context = build_field_context(
        spec, flow_options.precision_bits, flow_options.max_precision_bits
    )
    verdict = id_verdict(context.units, flow_options.budget, context.ideals)
    if verdict.verdict != certificate.verdict:
        raise InternalConsistencyError(
            f"recomputed verdict {verdict.verdict} differs from certificate {certificate.verdict}"
        )
    report = build_kms_report(context, verdict, flow_options, True, "assemble_kms_report")
    if orbit_catalog.qmax == flow_options.qmax:
        check_orbit_counts(report, orbit_catalog)
    logger.info(
        f"{report.field_name}: {report.discrete_parameter_count} discrete parameters, "
        f"classification {report.classification}"
    )
    return KmsReportDocument.create_as_json(
        name=KmsReportFiles.KMS_REPORT.value,
        description=f"Extremal KMS states of {report.field_name} at β = {report.beta}",
        data=report,
    )
