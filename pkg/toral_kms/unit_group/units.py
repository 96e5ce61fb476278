"""Dirichlet unit group: torsion, certified independence and quadratic fundamental units."""

from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import permutations, product
from math import floor, gcd, isqrt

import numpy as np
from ai_pipeline_core import get_pipeline_logger
from sympy import igcdex, totient

from toral_kms.exact_core import CertifiedInterval, RealInterval
from toral_kms.exceptions import (
    DependentUnitsError,
    InternalConsistencyError,
    UndeterminedError,
    ValidationFailure,
)
from toral_kms.number_field import (
    FieldElement,
    FieldSpec,
    element,
    embed,
    is_integral,
    norm,
    one,
    rational,
)

from .models import UnitGroupData, UnitProvenance, UnitWord

logger = get_pipeline_logger(__name__)

# Radius of the certified embeddings behind the torsion search.
TORSION_PRECISION = Fraction(1, 2**40)
# Covers float rounding of the centers and of the dot products in the torsion filter.
FLOAT_ROUNDING = 2.0**-40
# Exponent bound for the relation search run when the regulator straddles zero.
RELATION_SEARCH_BOUND = 4
# Continued fraction steps before the quadratic unit search gives up.
MAX_CONTINUED_FRACTION_STEPS = 100_000


def unit_rank(field: FieldSpec) -> int:
    """Dirichlet rank r + s - 1."""
    return field.real_places + field.complex_places - 1


def possible_root_of_unity_orders(degree: int) -> list[int]:
    """All m with φ(m) ≤ degree; φ(m) ≥ sqrt(m/2) bounds the search by 2·degree²."""
    return [m for m in range(1, 2 * degree * degree + 3) if int(totient(m)) <= degree]


def multiplicative_order(x: FieldElement, candidates: Sequence[int]) -> int | None:
    """Least m among ``candidates`` with x^m = 1, or None if x is not such a root of unity."""
    target = one(x.field)
    limit = max(candidates)
    allowed = set(candidates)
    power = x
    for exponent in range(1, limit + 1):
        if power == target:
            return exponent if exponent in allowed else None
        power = power * x
    return None


def _imaginary_part(value: CertifiedInterval) -> RealInterval:
    return value.imag if value.imag is not None else RealInterval.point(0)


def _complex_embeddings(field: FieldSpec) -> list[list[CertifiedInterval]]:
    """Certified σ_k(b_j), one row per complex place."""
    basis = [
        element(field, [int(i == j) for i in range(field.degree)]) for j in range(field.degree)
    ]
    return [
        [embed(b, handle, TORSION_PRECISION) for b in basis]
        for handle in field.embeddings
        if not handle.is_real
    ]


def _torsion_box(realified: Sequence[Sequence[RealInterval]]) -> list[int]:
    """Bounds on |c_j| for integral points with every |σ_k(x)| ≤ 1, by Cramer's rule.

    The rows of ``realified`` hold Re σ_k(b_j) and Im σ_k(b_j). Re σ_k(x) and Im σ_k(x) lie in
    [-1, 1], so |c_j| ≤ Σ_i |C_ij| / |det| over the cofactors C_ij.
    """
    size = len(realified)
    determinant = _interval_determinant(realified)
    if determinant.contains_zero():
        raise UndeterminedError("embedding determinant not separated from 0; raise the precision")
    smallest = min(abs(determinant.lower), abs(determinant.upper))
    bounds = []
    for column in range(size):
        total = Fraction(0)
        for row in range(size):
            minor = [
                [value for j, value in enumerate(entries) if j != column]
                for i, entries in enumerate(realified)
                if i != row
            ]
            cofactor = _interval_determinant(minor)
            total += max(abs(cofactor.lower), abs(cofactor.upper))
        bounds.append(floor(total / smallest))
    return bounds


def _torsion_candidates(field: FieldSpec) -> list[tuple[int, ...]]:
    """Nonzero integral coordinate vectors that may satisfy |σ_k(x)| ≤ 1 at every complex place.

    The float filter widens the unit disc by the enclosure radii and a rounding allowance over
    the whole box, so it never drops a root of unity.
    """
    embeddings = _complex_embeddings(field)
    realified = [[value.real.round_outward(64) for value in row] for row in embeddings]
    realified += [[_imaginary_part(value).round_outward(64) for value in row] for row in embeddings]
    bounds = _torsion_box(realified)
    logger.debug(f"Torsion enumeration box for {field.name}: {bounds}")
    sigma = np.array(
        [[complex(*(float(c) for c in value.center)) for value in row] for row in embeddings],
        dtype=np.complex128,
    )
    radii = np.array([[float(value.radius) for value in row] for row in embeddings])
    box = np.array(bounds, dtype=np.float64)
    margin = float(((2 * radii + FLOAT_ROUNDING * (1 + np.abs(sigma))) @ box).max())
    grid = np.array(list(product(*(range(-b, b + 1) for b in bounds))), dtype=np.float64)
    inside = np.all(np.abs(grid @ sigma.T) <= 1 + margin, axis=1)
    return [tuple(int(c) for c in row) for row in grid[inside] if np.any(row)]


def _generator_key(x: FieldElement) -> tuple[Fraction, int, tuple[Fraction, ...]]:
    highest = max((index for index, c in enumerate(x.coords) if c), default=0)
    return sum((abs(c) for c in x.coords), Fraction(0)), highest, tuple(-c for c in x.coords)


def torsion_units(field: FieldSpec) -> tuple[FieldElement, int]:
    """Generator and order of the roots of unity in the field.

    Fields with a real place only contain ±1. Totally imaginary fields are searched by
    enumerating integral points in a box around the unit polydisc of the Minkowski embedding;
    every candidate is confirmed by an exact finite-order test.

    Returns:
        (generator, order) of the cyclic torsion group
    """
    if field.real_places >= 1:
        return rational(field, -1), 2
    orders = possible_root_of_unity_orders(field.degree)
    roots: list[tuple[FieldElement, int]] = []
    for coords in _torsion_candidates(field):
        candidate = element(field, coords)
        order = multiplicative_order(candidate, orders)
        if order is not None:
            roots.append((candidate, order))
    group_order = len(roots)
    maximal = [x for x, order in roots if order == group_order]
    if not maximal:
        raise InternalConsistencyError(
            f"found {group_order} roots of unity in {field.name} but no element of that order"
        )
    generator = min(maximal, key=_generator_key)
    logger.info(f"Torsion of {field.name}: order {group_order}, generator {generator}")
    return generator, group_order


def evaluate_word(group: UnitGroupData, word: UnitWord) -> FieldElement:
    """Exact unit torsion_gen^t · ∏ free_gen_i^e_i."""
    if len(word.exponents) != group.rank:
        raise ValidationFailure(
            f"word has {len(word.exponents)} exponents, unit rank is {group.rank}"
        )
    result = group.torsion_generator ** (word.torsion_exp % group.torsion_order)
    for generator, exponent in zip(group.free_generators, word.exponents):
        if exponent:
            result = result * generator**exponent
    return result


def _interval_determinant(matrix: Sequence[Sequence[RealInterval]]) -> RealInterval:
    size = len(matrix)
    if size == 0:
        return RealInterval.point(1)
    total = RealInterval.point(0)
    for permutation in permutations(range(size)):
        inversions = sum(
            1 for i in range(size) for j in range(i + 1, size) if permutation[i] > permutation[j]
        )
        term = RealInterval.point(-1 if inversions % 2 else 1)
        for row, column in enumerate(permutation):
            term = term * matrix[row][column]
        total = total + term
    return total


def log_embedding_matrix(
    field: FieldSpec, units: Sequence[FieldElement], bits: int
) -> list[list[RealInterval]]:
    """Rows log|σ_k(u)| over the first n embeddings, complex places weighted by 2."""
    precision = Fraction(1, 2**bits)
    columns = field.embeddings[: len(units)]
    matrix: list[list[RealInterval]] = []
    for unit in units:
        row: list[RealInterval] = []
        for handle in columns:
            value = embed(unit, handle, precision).log_abs(bits)
            row.append(value if handle.is_real else value.scale(2))
        matrix.append(row)
    return matrix


def _exponent_vectors(rank: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Nonzero primitive vectors ordered by max norm, then lexicographically."""
    for size in range(1, bound + 1):
        for vector in product(range(-size, size + 1), repeat=rank):
            if max(abs(e) for e in vector) != size or gcd(*vector) != 1:
                continue
            first = next(e for e in vector if e)
            if first > 0:
                yield vector


def find_unit_relation(
    units: Sequence[FieldElement], torsion_order: int, bound: int = RELATION_SEARCH_BOUND
) -> tuple[int, ...] | None:
    """Exponent vector e with ∏ u_i^e_i a root of unity, if one exists with |e_i| ≤ bound."""
    if not units:
        return None
    field = units[0].field
    target = one(field)
    for vector in _exponent_vectors(len(units), bound):
        value = target
        for unit, exponent in zip(units, vector):
            if exponent:
                value = value * unit**exponent
        if value**torsion_order == target:
            return vector
    return None


def verify_units(
    field: FieldSpec,
    candidates: Sequence[FieldElement],
    precision_bits: int = 64,
    max_precision_bits: int = 1024,
    provenance: UnitProvenance = "user-supplied",
    torsion: tuple[FieldElement, int] | None = None,
) -> UnitGroupData:
    """Verify candidate free generators and certify their independence.

    Args:
        field: The number field
        candidates: Exactly unit_rank(field) integral elements of norm ±1
        precision_bits: Starting precision of the regulator computation
        max_precision_bits: Precision at which the certification gives up
        provenance: Recorded origin of the generators
        torsion: Precomputed torsion generator and order

    Returns:
        Verified unit group data with a certified regulator interval

    Raises:
        ValidationFailure: wrong count, non-integral candidate or norm not ±1
        DependentUnitsError: an exact multiplicative relation was found
        UndeterminedError: independence could not be certified at max precision
    """
    rank = unit_rank(field)
    if len(candidates) != rank:
        raise ValidationFailure(
            f"expected {rank} unit generators for {field.name} (unit rank {rank}), "
            f"got {len(candidates)}"
        )
    for index, unit in enumerate(candidates):
        if not is_integral(unit):
            raise ValidationFailure(f"unit candidate {index} = {unit} is not integral")
        unit_norm = norm(unit)
        if unit_norm not in (1, -1):
            raise ValidationFailure(
                f"unit candidate {index} = {unit} has norm {unit_norm}, not ±1"
            )

    torsion_generator, torsion_order = torsion if torsion is not None else torsion_units(field)
    bits = precision_bits
    while True:
        determinant = _interval_determinant(log_embedding_matrix(field, candidates, bits))
        if not determinant.contains_zero():
            regulator = determinant if determinant.lower > 0 else -determinant
            break
        relation = find_unit_relation(candidates, torsion_order)
        if relation is not None:
            raise DependentUnitsError(f"unit candidates of {field.name} are dependent", relation)
        if bits >= max_precision_bits:
            raise UndeterminedError(
                f"could not certify independence of the units of {field.name} at {bits} bits; "
                "raise precision"
            )
        bits *= 2
        logger.debug(f"Regulator straddles zero, retrying at {bits} bits")

    caveat = rank > 0 and provenance != "computed"
    if caveat:
        logger.warning(
            f"Units of {field.name} are {provenance}; "
            "they generate a subgroup of unknown finite index"
        )
    logger.info(f"Verified {rank} units of {field.name}, regulator {regulator}")
    return UnitGroupData(
        field=field,
        torsion_generator=torsion_generator,
        torsion_order=torsion_order,
        free_generators=tuple(candidates),
        regulator=regulator,
        provenance=provenance,
        finite_index_caveat=caveat,
    )


def _quadratic_generator(field: FieldSpec) -> FieldElement:
    """An element ω with {1, ω} a Z-basis of the order."""
    first, second = field.one_coordinates
    x, y, _ = (int(v) for v in igcdex(first, second))
    return element(field, [-y, x])


def _floor_quadratic(a: int, b: int, c: int, discriminant: int) -> int:
    """floor((a + b·√Δ)/c) for c > 0 and non-square Δ."""
    root = isqrt(b * b * discriminant)
    if b >= 0:
        return (a + root) // c
    return (a - root - 1) // c


def fundamental_unit_real_quadratic(field: FieldSpec) -> FieldElement:
    """Fundamental unit of a real quadratic order from the continued fraction of -σ₂(ω).

    Every unit x + yω with y > 0 and a small conjugate is a convergent of -σ₂(ω), so the first
    convergent of norm ±1 is the fundamental unit. The result is normalized so that σ₁(u) > 1.

    Raises:
        ValidationFailure: if the field is not real quadratic
    """
    if field.degree != 2 or field.signature != (2, 0):
        raise ValidationFailure(f"field {field.name} is not real quadratic")
    omega = _quadratic_generator(field)
    c0, c1, _ = field.polynomial.coefficients
    a0, a1 = omega.power_coordinates()
    # -σ₂(ω) = -a0 - a1·θ₂ with θ₂ = (-c1 - √disc)/2, written as (A + B√Δ)/C.
    discriminant = int(c1 * c1 - 4 * c0)
    numerator_rational = -2 * a0 + a1 * c1
    numerator_root = a1
    scale = numerator_rational.denominator * numerator_root.denominator
    a = int(numerator_rational * scale)
    b = int(numerator_root * scale)
    c = 2 * scale

    previous_p, p = 1, _floor_quadratic(a, b, c, discriminant)
    previous_q, q = 0, 1
    for _ in range(MAX_CONTINUED_FRACTION_STEPS):
        candidate = rational(field, p) + omega * rational(field, q)
        if norm(candidate) in (1, -1):
            unit = _normalize_expanding(candidate)
            logger.info(f"Fundamental unit of {field.name}: {unit}")
            return unit
        partial = _floor_quadratic(a, b, c, discriminant)
        shifted = a - partial * c
        a, b, c = c * shifted, -c * b, shifted * shifted - b * b * discriminant
        if c < 0:
            a, b, c = -a, -b, -c
        common = gcd(a, b, c)
        a, b, c = a // common, b // common, c // common
        partial = _floor_quadratic(a, b, c, discriminant)
        previous_p, p = p, partial * p + previous_p
        previous_q, q = q, partial * q + previous_q
    raise UndeterminedError(f"no unit found for {field.name} within the continued fraction budget")


def _normalize_expanding(unit: FieldElement) -> FieldElement:
    """Replace u by ±u^±1 so that σ₁(u) > 1."""
    handle = unit.field.embedding(1)
    value = embed(unit, handle, Fraction(1, 2**32)).real
    if value.upper < 0:
        unit, value = -unit, -value
    if value.upper < 1:
        unit = unit**-1
    return unit


def standard_unit_group(
    field: FieldSpec,
    units: Sequence[FieldElement] | None,
    precision_bits: int = 64,
    max_precision_bits: int = 1024,
) -> UnitGroupData:
    """Unit group from user generators, or computed where the toolkit can compute it.

    Raises:
        ValidationFailure: when generators are needed but not supplied
    """
    rank = unit_rank(field)
    torsion = torsion_units(field)
    if units:
        return verify_units(
            field, units, precision_bits, max_precision_bits, "user-supplied", torsion
        )
    if rank == 0:
        return verify_units(field, [], precision_bits, max_precision_bits, "computed", torsion)
    if field.degree == 2:
        unit = fundamental_unit_real_quadratic(field)
        return verify_units(field, [unit], precision_bits, max_precision_bits, "computed", torsion)
    raise ValidationFailure(
        f"unit generators required for {field.name}: rank {rank} units are only computed for "
        "real quadratic fields"
    )
