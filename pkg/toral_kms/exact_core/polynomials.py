"""Rational polynomials, irreducibility over Q and certified root isolation."""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import islice
from math import gcd, lcm

from ai_pipeline_core import get_pipeline_logger
from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import Poly, Rational, Symbol, primerange

from toral_kms.exceptions import ValidationFailure

from .intervals import CertifiedInterval, precision_to_bits

logger = get_pipeline_logger(__name__)

X = Symbol("x")

# Number of good primes tried before falling back to full factorization.
_IRREDUCIBILITY_PRIMES = 8


def _as_fraction(value: object) -> Fraction:
    rational = Rational(value)  # type: ignore[arg-type]
    return Fraction(int(rational.p), int(rational.q))


class RationalPolynomial(BaseModel):
    """Polynomial with rational coefficients stored from the constant term upwards.

    Trailing zero coefficients are stripped, so the zero polynomial has an empty coefficient
    tuple and degree -1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: tuple[Fraction, ...] = Field(description="Coefficients c0, c1, ..., cd")

    @field_validator("coefficients", mode="before")
    @classmethod
    def _normalize(cls, value: Iterable[Fraction | int | str]) -> tuple[Fraction, ...]:
        coefficients = [Fraction(c) for c in value]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return tuple(coefficients)

    @classmethod
    def from_integers(cls, coefficients: Iterable[int]) -> "RationalPolynomial":
        return cls(coefficients=tuple(Fraction(int(c)) for c in coefficients))

    @classmethod
    def from_sympy(cls, poly: Poly) -> "RationalPolynomial":
        return cls(coefficients=tuple(_as_fraction(c) for c in reversed(poly.all_coeffs())))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    @property
    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def monic(self) -> "RationalPolynomial":
        if self.is_zero:
            raise ValueError("the zero polynomial has no monic multiple")
        lead = self.leading_coefficient
        return RationalPolynomial(coefficients=tuple(c / lead for c in self.coefficients))

    def primitive_integer_coefficients(self) -> tuple[int, ...]:
        """Coefficients of the primitive integer multiple with positive leading coefficient."""
        if self.is_zero:
            return ()
        scale = lcm(*(c.denominator for c in self.coefficients))
        integers = [int(c * scale) for c in self.coefficients]
        content = gcd(*integers)
        sign = 1 if integers[-1] > 0 else -1
        return tuple(sign * value // content for value in integers)

    def to_sympy(self) -> Poly:
        if self.is_zero:
            return Poly(0, X, domain="QQ")
        high_to_low = [Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)]
        return Poly(high_to_low, X, domain="QQ")

    def __call__(self, value: Fraction | int) -> Fraction:
        result = Fraction(0)
        for coefficient in reversed(self.coefficients):
            result = result * value + coefficient
        return result

    def evaluate_interval(self, box: CertifiedInterval) -> CertifiedInterval:
        """Horner evaluation in interval arithmetic; the result encloses every value on ``box``."""
        result = CertifiedInterval.exact(0)
        for coefficient in reversed(self.coefficients):
            result = result * box + CertifiedInterval.exact(coefficient)
        return result

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        padded_self = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        padded_other = other.coefficients + (Fraction(0),) * (size - len(other.coefficients))
        summed = tuple(a + b for a, b in zip(padded_self, padded_other))
        return RationalPolynomial(coefficients=summed)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(coefficients=tuple(-c for c in self.coefficients))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if self.is_zero or other.is_zero:
            return RationalPolynomial(coefficients=())
        product = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return RationalPolynomial(coefficients=tuple(product))

    def __pow__(self, exponent: int) -> "RationalPolynomial":
        if exponent < 0:
            raise ValueError("negative polynomial powers are undefined")
        result = RationalPolynomial.from_integers([1])
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(
            coefficients=tuple(index * c for index, c in enumerate(self.coefficients) if index)
        )

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        """Monic greatest common divisor."""
        return RationalPolynomial.from_sympy(self.to_sympy().gcd(other.to_sympy())).monic()

    def discriminant(self) -> Fraction:
        return _as_fraction(self.to_sympy().discriminant())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms: list[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                monomial = "x" if power == 1 else f"x^{power}"
                body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _subset_degree_sums(degrees: Sequence[int]) -> set[int]:
    sums = {0}
    for degree in degrees:
        sums |= {s + degree for s in sums}
    return sums


def is_irreducible_q(polynomial: RationalPolynomial) -> bool:
    """Decide irreducibility over the rationals.

    Factor degree patterns modulo several primes of good reduction are intersected first; an
    empty intersection proves irreducibility. Otherwise the decision falls back to a complete
    factorization over the integers.

    Args:
        polynomial: Nonzero polynomial of positive degree

    Returns:
        True iff the polynomial has no factorization into two non-constant rational factors

    Raises:
        ValidationFailure: for the zero or a constant polynomial
    """
    if polynomial.degree < 1:
        raise ValidationFailure("constant polynomial has no irreducibility status")
    if polynomial.degree == 1:
        return True
    integers = polynomial.primitive_integer_coefficients()
    integer_poly = Poly(list(reversed(integers)), X, domain="ZZ")
    discriminant = int(integer_poly.discriminant())
    if discriminant == 0:
        return False

    degree = polynomial.degree
    possible = set(range(1, degree))
    bad_factor = abs(integers[-1] * discriminant)
    good_primes = (p for p in primerange(2, 10**6) if bad_factor % p != 0)
    for prime in islice(good_primes, _IRREDUCIBILITY_PRIMES):
        modular = Poly(list(reversed(integers)), X, modulus=prime)
        _, factors = modular.factor_list()
        degrees = [factor.degree() for factor, multiplicity in factors for _ in range(multiplicity)]
        possible &= _subset_degree_sums(degrees)
        if not possible:
            logger.debug(f"Irreducibility of {polynomial} certified modulo {prime}")
            return True
    return bool(integer_poly.is_irreducible)


def _complex_corners(lower: object, upper: object) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    real_low, imag_low = lower.as_real_imag()  # type: ignore[attr-defined]
    real_high, imag_high = upper.as_real_imag()  # type: ignore[attr-defined]
    return (
        _as_fraction(real_low),
        _as_fraction(imag_low),
        _as_fraction(real_high),
        _as_fraction(imag_high),
    )


@lru_cache(maxsize=256)
def _isolate(coefficients: tuple[int, ...], bits: int) -> tuple[CertifiedInterval, ...]:
    poly = Poly(list(reversed(coefficients)), X, domain="ZZ")
    eps = Rational(1, 1 << bits)
    while True:
        real_part, complex_part = poly.intervals(all=True, eps=eps)
        real_boxes = [
            CertifiedInterval.from_real(_as_fraction(low), _as_fraction(high))
            for (low, high), _ in real_part
        ]
        complex_boxes: list[CertifiedInterval] = []
        for (lower, upper), _ in complex_part:
            real_low, imag_low, real_high, imag_high = _complex_corners(lower, upper)
            if imag_high > 0 and imag_low >= 0:
                complex_boxes.append(
                    CertifiedInterval.from_box(real_low, imag_low, real_high, imag_high)
                )
        limit = Fraction(1, 1 << bits)
        if all(box.radius <= limit for box in real_boxes + complex_boxes):
            break
        eps = eps / 2
    real_boxes.sort(key=lambda box: box.real.center, reverse=True)
    complex_boxes.sort(key=lambda box: box.center)
    return tuple(real_boxes + complex_boxes)


def isolate_roots(polynomial: RationalPolynomial, precision: Fraction) -> list[CertifiedInterval]:
    """Certified isolating boxes for the roots of a squarefree polynomial.

    Real roots come first in descending order, followed by one upper-half-plane representative
    per complex-conjugate pair ordered by real part, then imaginary part. Every box has radius at
    most ``precision`` and contains exactly one root.

    Raises:
        ValidationFailure: if the polynomial is constant or has a repeated factor
    """
    if polynomial.degree < 1:
        raise ValidationFailure("constant polynomial has no roots to isolate")
    repeated = polynomial.gcd(polynomial.derivative())
    if repeated.degree > 0:
        raise ValidationFailure(
            f"polynomial {polynomial} is not squarefree: gcd with derivative is {repeated}"
        )
    bits = precision_to_bits(precision)
    return list(_isolate(polynomial.primitive_integer_coefficients(), bits))


def root_multiplicity_total(boxes: Sequence[CertifiedInterval]) -> int:
    """Number of roots accounted for: one per real box, two per complex representative."""
    return sum(2 if box.is_complex else 1 for box in boxes)


def refine_root(
    polynomial: RationalPolynomial, box: CertifiedInterval, precision: Fraction
) -> CertifiedInterval:
    """Shrink an isolating box of ``polynomial`` to radius at most ``precision``.

    Isolation is deterministic, so the finer boxes nest inside the coarser ones; the refined box
    is the unique finer box meeting ``box``.
    """
    if box.radius <= precision:
        return box
    finer = [
        candidate
        for candidate in isolate_roots(polynomial, precision)
        if candidate.is_complex == box.is_complex and candidate.overlaps(box)
    ]
    if len(finer) != 1:
        raise ValidationFailure(
            f"box {box} does not isolate a single root of {polynomial} ({len(finer)} matches)"
        )
    return finer[0]

