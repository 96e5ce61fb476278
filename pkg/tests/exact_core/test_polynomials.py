"""Tests for rational polynomials, irreducibility and root isolation."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Poly, Symbol

from toral_kms.exact_core import (
    RationalPolynomial,
    is_irreducible_q,
    isolate_roots,
    refine_root,
    root_multiplicity_total,
)
from toral_kms.exceptions import ValidationFailure


def poly(*coefficients: int) -> RationalPolynomial:
    """Build from coefficients listed constant term first."""
    return RationalPolynomial.from_integers(coefficients)


def _divisors(value: int) -> list[int]:
    value = abs(value)
    return [d for d in range(1, value + 1) if value % d == 0]


def has_rational_root(coefficients: list[int]) -> bool:
    """Rational root theorem oracle."""
    if coefficients[0] == 0:
        return True
    candidate = RationalPolynomial.from_integers(coefficients)
    for p in _divisors(coefficients[0]):
        for q in _divisors(coefficients[-1]):
            if candidate(Fraction(p, q)) == 0 or candidate(Fraction(-p, q)) == 0:
                return True
    return False


class TestRationalPolynomial:
    """Arithmetic on the coefficient representation."""

    def test_normalization_and_degree(self):
        """Trailing zeros are stripped; the zero polynomial has degree -1."""
        assert poly(1, 2, 0, 0).degree == 1
        assert poly(0, 0).is_zero
        assert poly(0, 0).degree == -1

    def test_arithmetic(self):
        """(x - 1)(x + 1) = x² - 1 and the derivative of x³ is 3x²."""
        assert poly(-1, 1) * poly(1, 1) == poly(-1, 0, 1)
        assert poly(0, 0, 0, 1).derivative() == poly(0, 0, 3)
        assert poly(1, 1) ** 2 == poly(1, 2, 1)
        assert poly(-2, 0, 1)(3) == 7

    def test_str(self):
        """Rendering from the highest power down."""
        assert str(poly(-2, 0, 1)) == "x^2 - 2"
        assert str(poly(1, -1, 0, -1)) == "-x^3 - x + 1"

    def test_primitive_integer_coefficients(self):
        """Denominators and content are cleared."""
        polynomial = RationalPolynomial(coefficients=(Fraction(-1, 2), Fraction(0), Fraction(3, 2)))
        assert polynomial.primitive_integer_coefficients() == (-1, 0, 3)

    def test_sympy_round_trip(self):
        """Conversion through sympy keeps coefficients."""
        polynomial = poly(1, 0, -3, 1)
        assert RationalPolynomial.from_sympy(polynomial.to_sympy()) == polynomial
        assert polynomial.to_sympy() == Poly([1, -3, 0, 1], Symbol("x"), domain="QQ")


class TestIsIrreducible:
    """Irreducibility over the rationals."""

    def test_known_cases(self):
        """x² - 2 and the fifth cyclotomic polynomial are irreducible; x² - 1 is not."""
        assert is_irreducible_q(poly(-2, 0, 1))
        assert not is_irreducible_q(poly(-1, 0, 1))
        assert is_irreducible_q(poly(1, 1, 1, 1, 1))

    def test_degree_set_needs_fallback(self):
        """x⁴ + 1 splits modulo every prime but is irreducible."""
        assert is_irreducible_q(poly(1, 0, 0, 0, 1))
        assert not is_irreducible_q(poly(4, 0, 0, 0, 1))

    def test_repeated_factor(self):
        """A square is reducible."""
        assert not is_irreducible_q(poly(1, 2, 1))

    def test_constant_rejected(self):
        """Constants have no irreducibility status."""
        with pytest.raises(ValidationFailure, match="constant polynomial"):
            is_irreducible_q(poly(5))

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=4))
    def test_low_degree_agrees_with_rational_root_oracle(self, coefficients: list[int]):
        """In degree 2 and 3 reducibility is the same as having a rational root."""
        assume(coefficients[-1] != 0)
        assert is_irreducible_q(RationalPolynomial.from_integers(coefficients)) == (
            not has_rational_root(coefficients)
        )

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
    def test_quartics_agree_with_factorization(self, coefficients: list[int]):
        """In degree 4 the decision matches a full factorization."""
        assume(coefficients[-1] != 0)
        polynomial = RationalPolynomial.from_integers(coefficients)
        _, factors = polynomial.to_sympy().factor_list()
        expected = len(factors) == 1 and factors[0][1] == 1
        assert is_irreducible_q(polynomial) == expected


class TestIsolateRoots:
    """Certified root boxes."""

    precision = Fraction(1, 2**20)

    def test_sqrt_two(self):
        """Two real boxes, the positive root first."""
        boxes = isolate_roots(poly(-2, 0, 1), self.precision)
        assert len(boxes) == 2
        assert not any(box.is_complex for box in boxes)
        positive, negative = boxes
        assert 0 < positive.real.lower and positive.real.lower**2 <= 2 <= positive.real.upper**2
        assert negative.real.upper < 0

    def test_gaussian(self):
        """One upper-half-plane representative around i."""
        boxes = isolate_roots(poly(1, 0, 1), self.precision)
        assert len(boxes) == 1
        assert boxes[0].is_complex
        assert boxes[0].contains(0, 1)

    def test_cube_root_signature(self):
        """x³ - 2 has one real root and one complex pair."""
        boxes = isolate_roots(poly(-2, 0, 0, 1), self.precision)
        assert [box.is_complex for box in boxes] == [False, True]
        assert root_multiplicity_total(boxes) == 3

    def test_repeated_factor_rejected(self):
        """(x - 1)²(x + 1) is rejected and the repeated factor is named."""
        with pytest.raises(ValidationFailure, match="not squarefree.*x - 1"):
            isolate_roots(poly(1, -1, -1, 1), self.precision)

    @pytest.mark.parametrize(
        "coefficients",
        [(-2, 0, 1), (-5, 0, 1), (5, 0, 1), (-2, 0, 0, 1), (1, -2, -1, 1), (-2, 0, 0, 0, 1),
         (1, 1, 1, 1, 1)],
    )
    def test_boxes_are_certified(self, coefficients: tuple[int, ...]):
        """Each box is small, the evaluation straddles zero and boxes are disjoint."""
        polynomial = RationalPolynomial.from_integers(coefficients)
        boxes = isolate_roots(polynomial, self.precision)
        assert root_multiplicity_total(boxes) == polynomial.degree
        for index, box in enumerate(boxes):
            assert box.radius <= self.precision
            assert polynomial.evaluate_interval(box).contains_zero()
            assert not any(box.overlaps(other) for other in boxes[index + 1 :])

    def test_refine(self):
        """Refinement shrinks a coarse box around the same root."""
        polynomial = poly(-2, 0, 0, 1)
        coarse = isolate_roots(polynomial, Fraction(1, 2**6))
        for box in coarse:
            fine = refine_root(polynomial, box, Fraction(1, 2**40))
            assert fine.radius <= Fraction(1, 2**40)
            assert fine.overlaps(box)
            assert fine.is_complex == box.is_complex
