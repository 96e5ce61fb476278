"""Assembly of the extremal trace catalog and the classification status of a field."""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

from ai_pipeline_core import get_pipeline_logger

from toral_kms.berend_certifier import IDVerdict
from toral_kms.exceptions import ValidationFailure
from toral_kms.ideal_lattice import IntegralIdeal
from toral_kms.number_field import FieldSpec
from toral_kms.orbit_isotropy import character_grid, orbit_records, torsion_characters
from toral_kms.toral_action import build_toral_rep
from toral_kms.unit_group import UnitGroupData, unit_rank

from .models import ClassificationStatus, IdealStratum, KmsCatalog, OrbitParameters

logger = get_pipeline_logger(__name__)

MIN_BETA = 2.0


def classification_status(field: FieldSpec, verdict: IDVerdict) -> ClassificationStatus:
    """Which part of the extremal KMS_β states the finite-orbit and Haar parameters describe."""
    if verdict.rank != unit_rank(field):
        raise ValidationFailure(
            f"verdict has unit rank {verdict.rank} but {field.name} has rank {unit_rank(field)}"
        )
    rank = verdict.rank
    cm = verdict.cm_status.kind
    if rank == 0:
        return ClassificationStatus(
            kind="imaginary_quadratic_complete",
            notes=(
                "unit group is finite; extremal states are the finite-orbit parameters together "
                "with the orbits of irrational points, which are not enumerated"
            ),
        )
    if rank == 1:
        return ClassificationStatus(
            kind="rank_one_poulsen",
            notes="unit rank 1: the extremal states are dense in a Poulsen simplex",
        )
    if cm == "CM":
        return ClassificationStatus(
            kind="cm_incomplete",
            notes=(
                "CM field: invariant subtori carry further ergodic measures, so the "
                "finite-orbit and Haar parameters are a proper subset of the extremal states"
            ),
        )
    if cm == "not_CM":
        return ClassificationStatus(
            kind="non_cm_conjectural",
            notes=(
                "not CM with unit rank ≥ 2: the catalog is complete unless an extremal state "
                "comes from a zero-entropy measure of infinite support"
            ),
        )
    return ClassificationStatus(kind="undetermined", notes=verdict.cm_status.reason)


def _stratum(
    group: UnitGroupData, ideal: IntegralIdeal, qmax: int, grid: int | None
) -> IdealStratum:
    rep = build_toral_rep(group, ideal)
    entries = []
    for record in orbit_records(rep, qmax):
        samples = character_grid(record.isotropy, grid) if grid else []
        entries.append(
            OrbitParameters(
                record=record,
                torsion_characters=tuple(torsion_characters(record.isotropy)),
                sample_characters=tuple(samples),
            )
        )
    logger.info(f"{ideal.label}: {len(entries)} finite orbits up to q = {qmax}")
    return IdealStratum(ideal_label=ideal.label, orbits=tuple(entries), haar=group.rank >= 1)


def enumerate_extremal_params(
    group: UnitGroupData,
    ideals: Sequence[IntegralIdeal],
    qmax: int,
    status: ClassificationStatus,
    beta: float = 3.0,
    grid: int | None = None,
    threads: int = 1,
) -> KmsCatalog:
    """Finite-orbit parameters with denominator ≤ qmax for every ideal, plus Haar for rank ≥ 1.

    Args:
        group: Verified unit group
        ideals: Labelled ideal class representatives
        qmax: Largest orbit denominator
        status: Classification banner for the field
        beta: Inverse temperature, recorded as metadata; must exceed 2
        grid: Optional number of rational angles per free coordinate to sample characters at
        threads: Worker threads used across ideals

    Raises:
        ValidationFailure: for β ≤ 2, qmax < 1 or an empty ideal list
    """
    if beta <= MIN_BETA:
        raise ValidationFailure(f"β = {beta} is outside the range β > 2")
    if qmax < 1:
        raise ValidationFailure(f"qmax must be at least 1, got {qmax}")
    if not ideals:
        raise ValidationFailure("at least one ideal class representative is required")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        strata = list(pool.map(lambda ideal: _stratum(group, ideal, qmax, grid), ideals))
    catalog = KmsCatalog(
        field_name=group.field.name,
        beta=beta,
        qmax=qmax,
        unit_rank=group.rank,
        unit_torsion_order=group.torsion_order,
        status=status,
        strata=tuple(strata),
    )
    logger.info(
        f"KMS catalog of {group.field.name}: {catalog.discrete_parameter_count} discrete "
        f"parameters, status {status.kind}"
    )
    return catalog
