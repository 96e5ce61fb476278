"""Creation and verification of number fields with an integral basis."""

from collections.abc import Sequence
from fractions import Fraction

from ai_pipeline_core import get_pipeline_logger
from sympy import factorint

from toral_kms.exact_core import (
    RationalPolynomial,
    is_irreducible_q,
    isolate_roots,
    mat_vec,
    rational_determinant,
    rational_inverse,
)
from toral_kms.exceptions import ValidationFailure

from .elements import power_basis_product
from .models import BasisSource, EmbeddingHandle, FieldSpec

logger = get_pipeline_logger(__name__)

# Radius of the stored root boxes; embeddings refine further on demand.
EMBEDDING_PRECISION = Fraction(1, 2**64)


def _squarefree_quadratic_constant(polynomial: RationalPolynomial) -> int | None:
    """D when the polynomial is x² - D with D squarefree, else None."""
    if polynomial.degree != 2 or polynomial.coefficients[1] != 0:
        return None
    constant = -polynomial.coefficients[0]
    if constant.denominator != 1:
        return None
    value = int(constant)
    if value in (0, 1) or any(exponent > 1 for exponent in factorint(abs(value)).values()):
        return None
    return value


def default_integral_basis(
    polynomial: RationalPolynomial,
) -> tuple[tuple[tuple[Fraction, ...], ...], BasisSource]:
    """Built-in basis: the quadratic ring of integers when known, else the power basis."""
    degree = polynomial.degree
    quadratic = _squarefree_quadratic_constant(polynomial)
    if quadratic is not None:
        if quadratic % 4 == 1:
            half = Fraction(1, 2)
            return ((Fraction(1), Fraction(0)), (half, half)), "quadratic_standard"
        return ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))), "quadratic_standard"
    power = tuple(
        tuple(Fraction(int(i == j)) for j in range(degree)) for i in range(degree)
    )
    return power, "power"


def _basis_columns(basis: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Matrix whose column j is basis element j in power coordinates."""
    return [list(row) for row in zip(*basis)]


def _structure_constants(
    polynomial: RationalPolynomial,
    basis: Sequence[Sequence[Fraction]],
    inverse: Sequence[Sequence[Fraction]],
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    degree = polynomial.degree
    table: list[list[tuple[int, ...]]] = [[() for _ in range(degree)] for _ in range(degree)]
    for i in range(degree):
        for j in range(i, degree):
            product = power_basis_product(basis[i], basis[j], polynomial)
            coords = mat_vec(inverse, product)
            if any(c.denominator != 1 for c in coords):
                raise ValidationFailure(
                    f"basis is not closed under multiplication: b{i + 1}·b{j + 1} has "
                    f"coordinates {[str(c) for c in coords]}"
                )
            table[i][j] = table[j][i] = tuple(int(c) for c in coords)
    return tuple(tuple(row) for row in table)


def create_field(
    polynomial: RationalPolynomial,
    integral_basis: Sequence[Sequence[Fraction | int]] | None = None,
    name: str | None = None,
) -> FieldSpec:
    """Create a number field and verify its integral basis.

    Args:
        polynomial: Monic defining polynomial with integer coefficients
        integral_basis: Basis elements as power-basis coordinate vectors; defaults to the
            built-in quadratic basis or the power basis
        name: Report label, defaults to the polynomial

    Returns:
        Verified FieldSpec with root boxes for every embedding

    Raises:
        ValidationFailure: if the polynomial is not monic integral irreducible or the basis is
            singular, misses 1 or is not a ring
    """
    if polynomial.degree < 1:
        raise ValidationFailure("defining polynomial must have positive degree")
    if not polynomial.is_monic or not polynomial.has_integer_coefficients:
        raise ValidationFailure(
            f"defining polynomial {polynomial} must be monic with integer coefficients"
        )
    if not is_irreducible_q(polynomial):
        raise ValidationFailure(f"defining polynomial {polynomial} is reducible")
    degree = polynomial.degree
    label = name or str(polynomial)

    source: BasisSource
    if integral_basis is None:
        basis, source = default_integral_basis(polynomial)
    else:
        if len(integral_basis) != degree or any(len(b) != degree for b in integral_basis):
            raise ValidationFailure(
                f"integral basis must consist of {degree} vectors of length {degree}"
            )
        basis = tuple(tuple(Fraction(c) for c in b) for b in integral_basis)
        source = "user"
    if source == "power" and degree > 1:
        logger.warning(
            f"Field {label}: using the power basis Z[θ], "
            "which may be a finite-index suborder of O_K"
        )

    columns = _basis_columns(basis)
    if rational_determinant(columns) == 0:
        raise ValidationFailure(
            "integral basis is singular: determinant of basis-change matrix is 0"
        )
    inverse = rational_inverse(columns)
    unit = [Fraction(int(i == 0)) for i in range(degree)]
    one_coordinates = mat_vec(inverse, unit)
    if any(c.denominator != 1 for c in one_coordinates):
        raise ValidationFailure("integral basis does not contain 1 in its Z-span")
    table = _structure_constants(polynomial, basis, inverse)

    roots = isolate_roots(polynomial, EMBEDDING_PRECISION)
    embeddings = tuple(
        EmbeddingHandle(index=index, kind="complex" if box.is_complex else "real", root=box)
        for index, box in enumerate(roots, start=1)
    )
    real_places = sum(1 for handle in embeddings if handle.is_real)
    complex_places = len(embeddings) - real_places

    field = FieldSpec(
        name=label,
        polynomial=polynomial,
        integral_basis=basis,
        basis_inverse=tuple(tuple(row) for row in inverse),
        basis_source=source,
        structure_constants=table,
        one_coordinates=tuple(int(c) for c in one_coordinates),
        signature=(real_places, complex_places),
        embeddings=embeddings,
    )
    logger.info(
        f"Created field {label}: degree {degree}, signature ({real_places}, {complex_places}), "
        f"basis {source}"
    )
    return field


def basis_discriminant(field: FieldSpec) -> Fraction:
    """Discriminant of the integral basis: disc(f) times the squared basis determinant."""
    determinant = rational_determinant(_basis_columns(field.integral_basis))
    return field.polynomial.discriminant() * determinant**2

