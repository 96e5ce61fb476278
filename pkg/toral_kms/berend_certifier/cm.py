"""CM detection: a certified conjugation automorphism or a totally irreducible unit."""

from fractions import Fraction
from itertools import product

from ai_pipeline_core import get_pipeline_logger
from mpmath import mp

from toral_kms.exact_core import (
    CertifiedInterval,
    IntegerMatrix,
    RationalPolynomial,
    integer_kernel,
    isolate_roots,
    mpf_to_fraction,
    rational_nullspace,
    refine_root,
)
from toral_kms.exceptions import InternalConsistencyError, ValidationFailure
from toral_kms.ideal_lattice import unit_ideal
from toral_kms.number_field import (
    FieldElement,
    FieldSpec,
    element,
    embed,
    from_power_coordinates,
    minimal_polynomial,
    rational,
    theta,
)
from toral_kms.toral_action import ToralRep, build_toral_rep
from toral_kms.unit_group import UnitGroupData, verify_units

from .certifier import totally_irreducible_unit_search
from .models import CMCertificate, CMStatus

logger = get_pipeline_logger(__name__)

RECONSTRUCTION_DIGITS = 60
MAX_RECONSTRUCTED_DENOMINATOR = 10**12
BOX_PRECISION = Fraction(1, 2**48)


def apply_automorphism(value: FieldElement, image: FieldElement) -> FieldElement:
    """g(value) for the automorphism with g(θ) = image, by Horner in the power basis."""
    field = value.field
    result = rational(field, 0)
    for coefficient in reversed(value.power_coordinates()):
        result = result * image + rational(field, coefficient)
    return result


def _reconstruct_conjugation(field: FieldSpec) -> FieldElement | None:
    """Rational g(θ) with σ(g(θ)) = conj(σ(θ)) at every root, from high-precision roots."""
    degree = field.degree
    coefficients = [int(c) for c in reversed(field.polynomial.coefficients)]
    with mp.workdps(RECONSTRUCTION_DIGITS):
        roots = mp.polyroots(coefficients, maxsteps=500, extraprec=4 * RECONSTRUCTION_DIGITS)
        tolerance = mp.mpf(10) ** (-RECONSTRUCTION_DIGITS // 2)
        targets = []
        for root in roots:
            distances = [abs(mp.conj(root) - other) for other in roots]
            if min(distances) > tolerance:
                return None
            targets.append(mp.conj(root))
        vandermonde = mp.matrix([[root**k for k in range(degree)] for root in roots])
        solution = mp.lu_solve(vandermonde, mp.matrix(targets))
        coords: list[Fraction] = []
        for k in range(degree):
            if abs(mp.im(solution[k])) > tolerance:
                return None
            approximate = mpf_to_fraction(mp.mpf(mp.re(solution[k])))
            coords.append(approximate.limit_denominator(MAX_RECONSTRUCTED_DENOMINATOR))
    return from_power_coordinates(field, coords)


def _all_root_boxes(field: FieldSpec) -> list[CertifiedInterval]:
    boxes: list[CertifiedInterval] = []
    for handle in field.embeddings:
        box = refine_root(field.polynomial, handle.root, BOX_PRECISION)
        boxes.append(box)
        if box.is_complex:
            boxes.append(box.conjugate())
    return boxes


def _verify_conjugation(field: FieldSpec, image: FieldElement) -> tuple[int, ...] | None:
    """Exact automorphism checks, then the certified match with complex conjugation."""
    generator = theta(field)
    if image == generator:
        return None
    value = rational(field, 0)
    for coefficient in reversed(field.polynomial.coefficients):
        value = value * image + rational(field, coefficient)
    if not value.is_zero:
        return None
    if apply_automorphism(image, image) != generator:
        return None
    boxes = _all_root_boxes(field)
    matched: list[int] = []
    for handle in field.embeddings:
        target = refine_root(field.polynomial, handle.root, BOX_PRECISION).conjugate()
        enclosure = embed(image, handle, BOX_PRECISION)
        hits = [box for box in boxes if box.overlaps(enclosure)]
        if len(hits) != 1 or not hits[0].overlaps(target):
            return None
        matched.append(handle.index)
    return tuple(matched)


def automorphism_matrix_rational(field: FieldSpec, image: FieldElement) -> list[list[Fraction]]:
    """Matrix of g in the integral basis; column j holds the coordinates of g(b_j)."""
    columns = [
        apply_automorphism(element(field, [int(i == j) for i in range(field.degree)]), image).coords
        for j in range(field.degree)
    ]
    return [list(row) for row in zip(*columns)]


def _fixed_field(
    field: FieldSpec, image: FieldElement
) -> tuple[FieldElement, RationalPolynomial] | None:
    """Primitive element of the fixed field of g, with degree d/2 and only real conjugates."""
    half = field.degree // 2
    matrix = automorphism_matrix_rational(field, image)
    shifted = [
        [entry - int(i == j) for j, entry in enumerate(row)] for i, row in enumerate(matrix)
    ]
    fixed = rational_nullspace(shifted)
    if len(fixed) != half:
        return None
    basis = [element(field, vector) for vector in fixed]
    for weights in product(range(4), repeat=len(basis)):
        if not any(weights):
            continue
        candidate = rational(field, 0)
        for weight, vector in zip(weights, basis):
            candidate = candidate + rational(field, weight) * vector
        polynomial = minimal_polynomial(candidate)
        if polynomial.degree != half:
            continue
        if any(box.is_complex for box in isolate_roots(polynomial, BOX_PRECISION)):
            return None
        return candidate, polynomial
    return None


def find_cm_certificate(field: FieldSpec) -> CMCertificate | None:
    """Reconstruct complex conjugation as a field automorphism and verify it."""
    if field.real_places > 0 or field.degree % 2:
        return None
    image = _reconstruct_conjugation(field)
    if image is None:
        return None
    matched = _verify_conjugation(field, image)
    if matched is None:
        return None
    fixed = _fixed_field(field, image)
    if fixed is None:
        return None
    generator, polynomial = fixed
    return CMCertificate(
        conjugation_image=image,
        fixed_field_generator=generator,
        fixed_field_polynomial=polynomial,
        matched_embeddings=matched,
    )


def is_cm(
    field: FieldSpec, group: UnitGroupData, budget: int, rep: ToralRep | None = None
) -> CMStatus:
    """CM status with a certificate either way, or undetermined.

    A real place rules CM out at once. Otherwise a totally irreducible unit proves the field is
    not CM, and a verified conjugation automorphism with a totally real fixed field of half
    degree proves it is.
    """
    if field.real_places > 0:
        return CMStatus(kind="not_CM", reason="field has a real embedding")
    if group.rank >= 1:
        certificate = totally_irreducible_unit_search(
            rep or build_toral_rep(group, unit_ideal(field)), budget
        )
        if certificate is not None:
            return CMStatus(
                kind="not_CM",
                reason=f"unit {certificate.word} is totally irreducible",
                irreducibility=certificate,
            )
    conjugation = find_cm_certificate(field)
    if conjugation is not None:
        logger.info(f"{field.name} is CM: conjugation θ ↦ {conjugation.conjugation_image}")
        return CMStatus(
            kind="CM",
            reason=(
                "complex conjugation is the automorphism θ ↦ "
                f"{conjugation.conjugation_image.as_polynomial()}"
            ),
            cm_certificate=conjugation,
        )
    logger.warning(f"CM status of {field.name} undetermined within budget {budget}")
    return CMStatus(kind="undetermined", reason=f"no certificate within budget {budget}")


def conjugation_matrix(field: FieldSpec, certificate: CMCertificate) -> IntegerMatrix:
    """Integer matrix of the CM involution in the integral basis.

    Raises:
        ValidationFailure: if the involution does not preserve the order
    """
    matrix = automorphism_matrix_rational(field, certificate.conjugation_image)
    if any(entry.denominator != 1 for row in matrix for entry in row):
        raise ValidationFailure(f"complex conjugation does not preserve the order of {field.name}")
    return IntegerMatrix.from_rows([[int(entry) for entry in row] for row in matrix])


def real_subfield_lattice(
    field: FieldSpec, certificate: CMCertificate
) -> tuple[tuple[int, ...], ...]:
    """Coordinate vectors spanning the fixed lattice of the involution (the real suborder)."""
    matrix = conjugation_matrix(field, certificate)
    shifted = IntegerMatrix.from_rows(
        [[entry - int(i == j) for j, entry in enumerate(row)] for i, row in enumerate(matrix.rows)]
    )
    return integer_kernel(shifted)


def real_unit_subgroup(group: UnitGroupData, certificate: CMCertificate) -> UnitGroupData:
    """Finite-index subgroup ±1 × ⟨u_i^k_i⟩ with each u_i^k_i fixed by the involution."""
    field = group.field
    image = certificate.conjugation_image
    powers: list[FieldElement] = []
    for index, unit in enumerate(group.free_generators):
        power = unit
        for exponent in range(1, 2 * group.torsion_order + 1):
            if apply_automorphism(power, image) == power:
                logger.debug(f"Free generator {index} is real after raising to {exponent}")
                powers.append(power)
                break
            power = power * unit
        else:
            raise InternalConsistencyError(
                f"no power of unit {index} up to {2 * group.torsion_order} is real"
            )
    return verify_units(
        field,
        powers,
        provenance="derived-subgroup",
        torsion=(rational(field, -1), 2),
    )
