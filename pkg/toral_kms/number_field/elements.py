"""Field elements in integral-basis coordinates and their exact invariants."""

from collections.abc import Iterable, Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from toral_kms.exact_core import (
    CertifiedInterval,
    IntegerMatrix,
    RationalPolynomial,
    mat_vec,
    rational_determinant,
    rational_inverse,
    rational_nullspace,
    refine_root,
)
from toral_kms.exceptions import ValidationFailure

from .models import EmbeddingHandle, FieldSpec


class FieldElement(BaseModel):
    """Element of K written in the integral basis of its field."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    field: FieldSpec = Field(repr=False)
    coords: tuple[Fraction, ...]

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return multiply(self, other)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        _check_same_field(self, other)
        return self.with_coords(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __neg__(self) -> "FieldElement":
        return self.with_coords(-c for c in self.coords)

    def __pow__(self, exponent: int) -> "FieldElement":
        base = self if exponent >= 0 else invert(self)
        remaining = abs(exponent)
        result = one(self.field)
        while remaining:
            if remaining & 1:
                result = result * base
            base = base * base
            remaining >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coords == other.coords and self.field.polynomial == other.field.polynomial

    def __hash__(self) -> int:
        return hash(self.coords)

    def with_coords(self, coords: Iterable[Fraction | int]) -> "FieldElement":
        return FieldElement(field=self.field, coords=tuple(Fraction(c) for c in coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def power_coordinates(self) -> tuple[Fraction, ...]:
        """Coordinates in the power basis 1, θ, ..., θ^(d-1)."""
        basis = self.field.integral_basis
        degree = self.field.degree
        return tuple(
            sum((self.coords[j] * basis[j][k] for j in range(degree)), Fraction(0))
            for k in range(degree)
        )

    def as_polynomial(self) -> RationalPolynomial:
        """The element as a polynomial expression in θ."""
        return RationalPolynomial(coefficients=self.power_coordinates())

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _check_same_field(a: FieldElement, b: FieldElement) -> None:
    if a.field is b.field:
        return
    if a.field.polynomial != b.field.polynomial or a.field.integral_basis != b.field.integral_basis:
        raise ValidationFailure("elements belong to different fields")


def element(field: FieldSpec, coords: Sequence[Fraction | int | str]) -> FieldElement:
    """Element with the given integral-basis coordinates."""
    if len(coords) != field.degree:
        raise ValidationFailure(f"expected {field.degree} coordinates, got {len(coords)}")
    return FieldElement(field=field, coords=tuple(Fraction(c) for c in coords))


def from_power_coordinates(field: FieldSpec, coords: Sequence[Fraction | int]) -> FieldElement:
    """Element given by its coordinates in 1, θ, ..., θ^(d-1)."""
    if len(coords) != field.degree:
        raise ValidationFailure(f"expected {field.degree} power coordinates, got {len(coords)}")
    return FieldElement(field=field, coords=tuple(mat_vec(field.basis_inverse, coords)))


def one(field: FieldSpec) -> FieldElement:
    return FieldElement(field=field, coords=tuple(Fraction(c) for c in field.one_coordinates))


def rational(field: FieldSpec, value: Fraction | int) -> FieldElement:
    scaled = tuple(Fraction(value) * c for c in field.one_coordinates)
    return FieldElement(field=field, coords=scaled)


def theta(field: FieldSpec) -> FieldElement:
    """The generator θ, a root of the defining polynomial."""
    power = [Fraction(0)] * field.degree
    if field.degree == 1:
        return rational(field, -field.polynomial.coefficients[0])
    power[1] = Fraction(1)
    return from_power_coordinates(field, power)


def _reduce_modulo(coefficients: list[Fraction], modulus: RationalPolynomial) -> list[Fraction]:
    degree = modulus.degree
    lead = modulus.leading_coefficient
    work = list(coefficients) + [Fraction(0)] * max(0, degree - len(coefficients))
    for power in range(len(work) - 1, degree - 1, -1):
        factor = work[power] / lead
        if factor:
            for offset, c in enumerate(modulus.coefficients):
                work[power - degree + offset] -= factor * c
    return work[:degree]


def power_basis_product(
    a: Sequence[Fraction], b: Sequence[Fraction], modulus: RationalPolynomial
) -> list[Fraction]:
    """Product of two power-basis coordinate vectors modulo the defining polynomial."""
    product = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                product[i + j] += x * y
    return _reduce_modulo(product, modulus)


def multiply(a: FieldElement, b: FieldElement) -> FieldElement:
    """Exact product through the structure constants of the integral basis."""
    _check_same_field(a, b)
    table = a.field.structure_constants
    degree = a.field.degree
    result = [Fraction(0)] * degree
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if not y:
                continue
            weight = x * y
            for k, constant in enumerate(table[i][j]):
                if constant:
                    result[k] += weight * constant
    return a.with_coords(result)


def multiplication_matrix_rational(a: FieldElement) -> list[list[Fraction]]:
    """Matrix of multiplication by ``a``; column j holds the coordinates of a·b_j."""
    table = a.field.structure_constants
    degree = a.field.degree
    matrix = [[Fraction(0)] * degree for _ in range(degree)]
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j in range(degree):
            for k, constant in enumerate(table[i][j]):
                if constant:
                    matrix[k][j] += x * constant
    return matrix


def multiplication_matrix(a: FieldElement) -> IntegerMatrix:
    """Integer matrix of multiplication by an integral element.

    Raises:
        ValidationFailure: if ``a`` is not integral
    """
    if not is_integral(a):
        raise ValidationFailure(
            f"element {a} is not integral; its multiplication matrix is rational"
        )
    return IntegerMatrix.from_rows(
        [int(entry) for entry in row] for row in multiplication_matrix_rational(a)
    )


def invert(a: FieldElement) -> FieldElement:
    """Multiplicative inverse.

    Raises:
        ZeroDivisionError: for the zero element
    """
    if a.is_zero:
        raise ZeroDivisionError("division by zero in the number field")
    inverse = rational_inverse(multiplication_matrix_rational(a))
    return a.with_coords(mat_vec(inverse, a.field.one_coordinates))


def norm_trace(a: FieldElement) -> tuple[Fraction, Fraction]:
    """Field norm and trace as determinant and trace of the multiplication matrix."""
    matrix = multiplication_matrix_rational(a)
    trace = sum((matrix[i][i] for i in range(len(matrix))), Fraction(0))
    return rational_determinant(matrix), trace


def norm(a: FieldElement) -> Fraction:
    return norm_trace(a)[0]


def minimal_polynomial(a: FieldElement) -> RationalPolynomial:
    """Monic minimal polynomial from the first linear dependency among 1, a, a², ...

    Args:
        a: Any field element

    Returns:
        The monic polynomial of least degree vanishing at ``a``
    """
    powers = [one(a.field).coords]
    current = one(a.field)
    for _ in range(a.field.degree):
        current = current * a
        powers.append(current.coords)
        columns = [list(column) for column in zip(*powers)]
        kernel = rational_nullspace(columns)
        if kernel:
            relation = kernel[0]
            lead = relation[-1]
            return RationalPolynomial(coefficients=tuple(c / lead for c in relation))
    raise AssertionError("powers of a field element are always dependent after d steps")


def is_integral(a: FieldElement) -> bool:
    """True iff every integral-basis coordinate is an integer."""
    return all(c.denominator == 1 for c in a.coords)


def embed(a: FieldElement, handle: EmbeddingHandle, precision: Fraction) -> CertifiedInterval:
    """Certified enclosure of σ(a) with radius at most ``precision``.

    The root box of θ is refined until Horner evaluation of ``a`` as a polynomial in θ is
    tight enough.
    """
    expression = a.as_polynomial()
    if expression.degree <= 0:
        return CertifiedInterval.exact(expression.coefficients[0] if expression.coefficients else 0)
    scale = 1 + sum(abs(c) for c in expression.coefficients)
    root_precision = precision / (scale * 4)
    while True:
        box = refine_root(a.field.polynomial, handle.root, root_precision)
        value = expression.evaluate_interval(box)
        if value.radius <= precision:
            return value
        root_precision /= 16
