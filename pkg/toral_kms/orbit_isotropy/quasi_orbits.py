"""Quasi-orbit space of an ID action and the induced description of Prim."""

from collections.abc import Sequence

from ai_pipeline_core import get_pipeline_logger

from toral_kms.berend_certifier import IDVerdict
from toral_kms.exceptions import ValidationFailure
from toral_kms.toral_action import ToralRep

from .groups import reduce_group_mod_q
from .isotropy import character_group, isotropy
from .models import CharacterGroupDescriptor, PrimPoint, PrimStratum, QuasiOrbitSpace
from .orbits import partition_denominator

logger = get_pipeline_logger(__name__)


def quasi_orbit_space(rep: ToralRep, qmax: int, verdict: IDVerdict) -> QuasiOrbitSpace:
    """Finite quasi-orbits with denominator ≤ qmax, together with the infinite quasi-orbit.

    Under ID every infinite orbit is dense, so all irrational points collapse to one quasi-orbit
    ω∞ while finite orbits are their own quasi-orbits.

    Raises:
        ValidationFailure: if the action is not certified ID or qmax < 1
    """
    if verdict.verdict != "ID":
        raise ValidationFailure(
            f"quasi-orbit space description valid only under ID; verdict is {verdict.verdict}"
        )
    if qmax < 1:
        raise ValidationFailure(f"qmax must be at least 1, got {qmax}")
    orbits = [orbit for q in range(1, qmax + 1) for orbit in partition_denominator(rep, q)]
    logger.info(f"{len(orbits)} finite quasi-orbits up to q = {qmax} plus ω∞")
    return QuasiOrbitSpace(
        ideal_label=rep.ideal.label,
        qmax=qmax,
        finite_quasi_orbits=tuple(orbits),
        omega_infinity=True,
    )


def _check_same_ideal(points: Sequence[PrimPoint]) -> None:
    labels = {point.quasi_orbit.ideal_label for point in points if point.quasi_orbit is not None}
    if len(labels) > 1:
        raise ValidationFailure(f"Prim points come from different ideals: {sorted(labels)}")


def prim_closure_contains(
    target: PrimPoint, sample: Sequence[PrimPoint], declared_infinite: bool = False
) -> bool:
    """Decide whether ``target`` lies in the closure of ``sample`` in Prim.

    ``declared_infinite`` marks the sample as standing for infinitely many distinct quasi-orbits.
    Such a sample, and any sample containing ω∞, is dense. Otherwise the sample is a finite set of
    points over finite quasi-orbits, which is closed: only its own members are in its closure.

    Raises:
        ValidationFailure: if the points come from different ideals
    """
    _check_same_ideal([target, *sample])
    if not sample:
        return False
    if declared_infinite or any(point.is_omega for point in sample):
        return True
    target_orbit = target.quasi_orbit
    if target_orbit is None:
        return False
    return any(
        point.quasi_orbit is not None
        and point.quasi_orbit.same_points(target_orbit)
        and point.character == target.character
        for point in sample
    )


def prim_strata(space: QuasiOrbitSpace, rep: ToralRep) -> list[PrimStratum]:
    """One stratum {[x]} × Ĝ_x per finite quasi-orbit, then ω∞ with trivial isotropy."""
    if rep.ideal.label != space.ideal_label:
        raise ValidationFailure(
            f"quasi-orbit space of {space.ideal_label} cannot use the action on {rep.ideal.label}"
        )
    groups = {q: reduce_group_mod_q(rep, q) for q in range(1, space.qmax + 1)}
    strata = [
        PrimStratum(
            q=orbit.q,
            base=orbit.base,
            size=orbit.size,
            characters=character_group(isotropy(orbit, groups[orbit.q])),
        )
        for orbit in space.finite_quasi_orbits
    ]
    if space.omega_infinity:
        strata.append(
            PrimStratum(
                q=None,
                base=None,
                size=None,
                characters=CharacterGroupDescriptor(torsion_invariants=(), torus_rank=0),
            )
        )
    return strata
