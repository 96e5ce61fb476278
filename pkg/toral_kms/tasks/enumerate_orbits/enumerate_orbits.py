"""Task enumerating finite orbits with their isotropy groups."""

from concurrent.futures import ThreadPoolExecutor

from ai_pipeline_core import get_pipeline_logger, pipeline_task

from toral_kms.documents.flow.field_spec_input import FieldSpecData, parse_rational, rational_text
from toral_kms.documents.flow.orbit_catalog import (
    DenominatorReport,
    IdealOrbitsReport,
    IsotropyReport,
    OrbitCatalogData,
    OrbitCatalogDocument,
    OrbitCatalogFiles,
    OrbitReport,
)
from toral_kms.documents.reports import IsotropyPointReport
from toral_kms.exceptions import ValidationFailure
from toral_kms.field_spec import FieldContext, build_field_context
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.ideal_lattice import IntegralIdeal
from toral_kms.orbit_isotropy import (
    CharacterGroupDescriptor,
    IsotropySubgroup,
    OrbitRecord,
    character_group,
    denominator_statistics,
    isotropy,
    orbit_of,
    orbit_records,
    reduce_group_mod_q,
)
from toral_kms.toral_action import RationalTorusPoint

logger = get_pipeline_logger(__name__)


def point_text(point: RationalTorusPoint) -> list[str]:
    return [rational_text(x) for x in point.coordinates()]


def isotropy_report(
    subgroup: IsotropySubgroup, characters: CharacterGroupDescriptor
) -> IsotropyReport:
    return IsotropyReport(
        lattice=[list(row) for row in subgroup.lattice],
        index=subgroup.index,
        quotient_invariants=list(subgroup.quotient_invariants),
        torsion_order=subgroup.torsion_order,
        free_rank=subgroup.free_rank,
        characters=str(characters),
    )


def orbit_report(record: OrbitRecord) -> OrbitReport:
    orbit = record.orbit
    return OrbitReport(
        q=orbit.q,
        base=point_text(orbit.base),
        size=orbit.size,
        points=[point_text(p) for p in orbit.points],
        isotropy=isotropy_report(record.isotropy, record.characters),
    )


def ideal_orbits(context: FieldContext, ideal: IntegralIdeal, qmax: int) -> IdealOrbitsReport:
    records = orbit_records(context.rep(ideal.label), qmax)
    statistics = [denominator_statistics(q, ideal.degree, records) for q in range(1, qmax + 1)]
    logger.info(f"{ideal.label}: {len(records)} orbits up to q = {qmax}")
    return IdealOrbitsReport(
        ideal_label=ideal.label,
        statistics=[DenominatorReport.model_validate(s.model_dump()) for s in statistics],
        orbits=[orbit_report(record) for record in records],
    )


def build_orbit_catalog(
    context: FieldContext, options: ToralFlowOptions, subcommand: str = "orbits enumerate"
) -> OrbitCatalogData:
    with ThreadPoolExecutor(max_workers=options.threads) as pool:
        entries = list(pool.map(lambda i: ideal_orbits(context, i, options.qmax), context.ideals))
    return OrbitCatalogData(
        manifest=context.manifest(subcommand, options.report_parameters("qmax", "threads")),
        field_name=context.name,
        qmax=options.qmax,
        ideals=entries,
    )


def parse_point(text: str) -> RationalTorusPoint:
    """Read a torus point written as comma separated rationals, e.g. ``1/2,1/3``."""
    try:
        coordinates = [parse_rational(part) for part in text.split(",")]
    except ValueError as error:
        raise ValidationFailure(str(error), "--point") from error
    return RationalTorusPoint.from_fractions(coordinates)


def build_isotropy_report(
    context: FieldContext, point: RationalTorusPoint, ideal_label: str | None = None
) -> IsotropyPointReport:
    """Orbit size and isotropy data of a single rational point."""
    rep = context.rep(ideal_label)
    orbit = orbit_of(point, rep)
    subgroup = isotropy(orbit, reduce_group_mod_q(rep, orbit.q))
    logger.info(f"{point}: orbit of {orbit.size} points, [G : H] = {subgroup.index}")
    return IsotropyPointReport(
        manifest=context.manifest(
            "isotropy", {"point": str(point), "ideal": rep.ideal.label}
        ),
        field_name=context.name,
        ideal_label=rep.ideal.label,
        point=point_text(point),
        orbit_size=orbit.size,
        isotropy=isotropy_report(subgroup, character_group(subgroup)),
    )


@pipeline_task
async def enumerate_orbits_task(
    spec: FieldSpecData, flow_options: ToralFlowOptions
) -> OrbitCatalogDocument:
    """Partition rational points of denominator ≤ qmax into orbits for every ideal.

    Args:
        spec: Loaded field specification
        flow_options: Flow configuration options

    Returns:
        OrbitCatalogDocument with orbits, isotropy data and per-denominator statistics
    """
    context = build_field_context(
        spec, flow_options.precision_bits, flow_options.max_precision_bits
    )
    report = build_orbit_catalog(context, flow_options, "enumerate_orbits")
    return OrbitCatalogDocument.create_as_json(
        name=OrbitCatalogFiles.ORBIT_CATALOG.value,
        description=f"Finite orbits of {report.field_name} up to q = {report.qmax}",
        data=report,
    )
