"""ID verdict: the field criterion cross-checked against Berend's conditions."""

from collections.abc import Sequence

from ai_pipeline_core import get_pipeline_logger

from toral_kms.exceptions import InternalConsistencyError
from toral_kms.ideal_lattice import IntegralIdeal, unit_ideal
from toral_kms.toral_action import build_toral_rep
from toral_kms.unit_group import UnitGroupData

from .certifier import berend_conditions, check_solidarity
from .cm import is_cm
from .models import CMStatus, IDVerdict, Verdict

logger = get_pipeline_logger(__name__)


def field_level_verdict(cm_status: CMStatus, rank: int) -> Verdict:
    """ID iff not CM and rank ≥ 2."""
    if rank < 2 or cm_status.kind == "CM":
        return "not_ID"
    if cm_status.kind == "not_CM":
        return "ID"
    return "undetermined"


def id_verdict(
    group: UnitGroupData,
    budget: int,
    ideals: Sequence[IntegralIdeal] | None = None,
    cm_status: CMStatus | None = None,
) -> IDVerdict:
    """Decide ID through the field criterion and cross-check with the matrix conditions.

    Args:
        group: Verified unit group
        budget: Maximal word length for every certificate search
        ideals: Ideal duals to check, defaults to O_K alone
        cm_status: Precomputed CM status

    Returns:
        The verdict with both routes and every per-ideal condition record

    Raises:
        InternalConsistencyError: when the two routes decide differently
    """
    field = group.field
    reps = [build_toral_rep(group, ideal) for ideal in ideals or [unit_ideal(field)]]
    status = cm_status or is_cm(field, group, budget, reps[0])
    conditions = [berend_conditions(rep, budget) for rep in reps]
    check_solidarity(conditions)

    field_route = field_level_verdict(status, group.rank)
    matrix_route = conditions[0].outcome
    decided = field_route != "undetermined" and matrix_route != "undetermined"
    if decided and field_route != matrix_route:
        raise InternalConsistencyError(
            f"field criterion says {field_route} but Berend conditions say {matrix_route} "
            f"for {field.name}"
        )
    verdict = field_route if field_route != "undetermined" else matrix_route
    logger.info(
        f"ID verdict for {field.name}: {verdict} (field route {field_route}, "
        f"matrix route {matrix_route}, CM status {status.kind})"
    )
    return IDVerdict(
        verdict=verdict,
        rank=group.rank,
        cm_status=status,
        field_route=field_route,
        matrix_route=matrix_route,
        conditions=tuple(conditions),
        agreement=decided,
    )
