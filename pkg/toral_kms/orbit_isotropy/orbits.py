"""Finite orbits of rational torus points and their pushforward along ideal inclusions."""

from collections import Counter, deque
from collections.abc import Iterator
from itertools import product
from math import gcd

from ai_pipeline_core import get_pipeline_logger
from sympy import primefactors

from toral_kms.exceptions import InternalConsistencyError, ValidationFailure
from toral_kms.ideal_lattice import IdealInclusion, restriction_map
from toral_kms.toral_action import RationalTorusPoint, ToralRep

from .groups import apply_mod, generator_matrices_mod
from .models import FiniteOrbit

logger = get_pipeline_logger(__name__)


def count_exact_denominator_points(dimension: int, q: int) -> int:
    """Jordan's totient J_d(q): points of (Q/Z)^d whose exact denominator is q."""
    count = q**dimension
    for prime in primefactors(q):
        power = int(prime) ** dimension
        count = count // power * (power - 1)
    return count


def exact_denominator_points(dimension: int, q: int) -> Iterator[tuple[int, ...]]:
    """Numerator vectors in [0, q)^d with gcd(q, n_1, ..., n_d) = 1, in lexicographic order."""
    for numerators in product(range(q), repeat=dimension):
        if gcd(q, *numerators) == 1:
            yield numerators


def _closure(start: tuple[int, ...], rep: ToralRep, q: int) -> set[tuple[int, ...]]:
    generators = generator_matrices_mod(rep, q)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for matrix in generators:
            image = apply_mod(matrix, current, q)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def orbit_of(point: RationalTorusPoint, rep: ToralRep) -> FiniteOrbit:
    """Closure of {x} under the unit group, computed modulo the exact denominator of x.

    Forward generator steps suffice: every generator has finite order mod q.
    """
    if point.dimension != rep.dimension:
        raise ValidationFailure(
            f"point of dimension {point.dimension} does not lie on the {rep.dimension}-torus"
        )
    q = point.denominator
    numerators = _closure(point.numerators, rep, q)
    return FiniteOrbit(
        q=q,
        ideal_label=rep.ideal.label,
        base=point,
        points=tuple(
            RationalTorusPoint(numerators=n, denominator=q) for n in sorted(numerators)
        ),
    )


def partition_denominator(rep: ToralRep, q: int) -> list[FiniteOrbit]:
    """All orbits of points with exact denominator q, each based at its least point.

    Raises:
        ValidationFailure: if q < 1
        InternalConsistencyError: if the orbit sizes do not add up to J_d(q)
    """
    if q < 1:
        raise ValidationFailure(f"denominator must be at least 1, got {q}")
    seen: set[tuple[int, ...]] = set()
    orbits: list[FiniteOrbit] = []
    for numerators in exact_denominator_points(rep.dimension, q):
        if numerators in seen:
            continue
        orbit = orbit_of(RationalTorusPoint(numerators=numerators, denominator=q), rep)
        seen.update(point.numerators for point in orbit.points)
        orbits.append(orbit)
    expected = count_exact_denominator_points(rep.dimension, q)
    if len(seen) != expected:
        raise InternalConsistencyError(
            f"orbits of denominator {q} cover {len(seen)} points, expected {expected}"
        )
    logger.info(f"Denominator {q} on {rep.ideal.label}: {len(orbits)} orbits, {expected} points")
    return orbits


def pushforward_orbit(
    orbit: FiniteOrbit, inclusion: IdealInclusion, target_rep: ToralRep
) -> FiniteOrbit:
    """Image of an orbit on Î under the dual restriction r(t) = Cᵀ·t mod 1.

    The image must be one orbit on Ĵ and every image point must have the same number of preimages
    in the source orbit, so the uniform measure pushes forward to the uniform measure.

    Raises:
        ValidationFailure: if the orbit or the target representation belong to other ideals
        InternalConsistencyError: if the image is not a single orbit or the fibers are unequal
    """
    if orbit.ideal_label != inclusion.outer.label:
        raise ValidationFailure(
            f"orbit lives on the dual of {orbit.ideal_label}, not of {inclusion.outer.label}"
        )
    if target_rep.ideal.basis != inclusion.inner.basis:
        raise ValidationFailure(f"target representation is not built on {inclusion.inner.label}")
    matrix, _ = restriction_map(inclusion)
    images = [
        RationalTorusPoint.reduced(matrix.apply(point.numerators), orbit.q)
        for point in orbit.points
    ]
    fibers = Counter(images)
    image_orbit = orbit_of(min(fibers, key=lambda p: (p.denominator, p.numerators)), target_rep)
    if set(image_orbit.points) != set(fibers):
        raise InternalConsistencyError(
            f"image of the {orbit} under {inclusion.inner.label} ⊆ {inclusion.outer.label} "
            "is not a single orbit"
        )
    if len(set(fibers.values())) != 1:
        raise InternalConsistencyError(
            f"unequal fibers {sorted(fibers.values())} when pushing forward the {orbit}"
        )
    return image_orbit
