"""Tests for CM detection, Berend's conditions, the ID verdict and sublattice avoidance."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toral_kms.berend_certifier import (
    apply_automorphism,
    avoid_sublattices,
    berend_conditions,
    conjugation_matrix,
    expanding_unit,
    id_verdict,
    is_cm,
    power_test_exponents,
    real_subfield_lattice,
    real_unit_subgroup,
    recheck_irreducibility,
    totally_irreducible_unit_search,
)
from toral_kms.exact_core import IntegerMatrix, RationalPolynomial, integer_rank
from toral_kms.exceptions import ValidationFailure
from toral_kms.ideal_lattice import principal_ideal, unit_ideal
from toral_kms.number_field import create_field, element, one, theta
from toral_kms.toral_action import ToralRep, build_toral_rep
from toral_kms.unit_group import UnitGroupData, UnitWord, standard_unit_group, verify_units

BUDGET = 4


def poly(*coefficients: int) -> RationalPolynomial:
    return RationalPolynomial.from_integers(coefficients)


@pytest.fixture(scope="module")
def sqrt2_units() -> UnitGroupData:
    return standard_unit_group(create_field(poly(-2, 0, 1), name="sqrt2"), None)


@pytest.fixture(scope="module")
def sqrt2_rep(sqrt2_units: UnitGroupData) -> ToralRep:
    return build_toral_rep(sqrt2_units, unit_ideal(sqrt2_units.field))


@pytest.fixture(scope="module")
def gaussian_units() -> UnitGroupData:
    return standard_unit_group(create_field(poly(1, 0, 1), name="gaussian"), None)


@pytest.fixture(scope="module")
def cubic_units() -> UnitGroupData:
    field = create_field(poly(1, -2, -1, 1), name="real-cubic")
    root = theta(field)
    return verify_units(field, [root, root - one(field)])


@pytest.fixture(scope="module")
def zeta5_units() -> UnitGroupData:
    field = create_field(poly(1, 1, 1, 1, 1), name="zeta5")
    return verify_units(field, [element(field, [1, 1, 0, 0])])


@pytest.fixture(scope="module")
def zeta7_units() -> UnitGroupData:
    field = create_field(poly(1, 1, 1, 1, 1, 1, 1), name="zeta7")
    real = element(field, [0, 1, 0, 0, 0, 0]) + element(field, [-1, -1, -1, -1, -1, -1])
    return verify_units(field, [real, real + one(field)])


@pytest.fixture(scope="module")
def quartic_units() -> UnitGroupData:
    field = create_field(poly(-2, 0, 0, 0, 1), name="x4-2")
    return verify_units(field, [element(field, [1, 1, 0, 0]), element(field, [1, 0, 1, 0])])


class TestTotallyIrreducibleSearch:
    """Power-degree certificates."""

    def test_power_test_set(self):
        """M(2) = {m : φ(m) ≤ 4}."""
        assert power_test_exponents(2) == [1, 2, 3, 4, 5, 6, 8, 10, 12]

    def test_sqrt_two(self, sqrt2_rep: ToralRep):
        """1+√2 is certified with every degree equal to 2."""
        certificate = totally_irreducible_unit_search(sqrt2_rep, BUDGET)
        assert certificate is not None
        assert certificate.word == UnitWord.free((1,))
        assert set(certificate.degrees) == {2}
        assert recheck_irreducibility(sqrt2_rep, certificate)

    def test_rank_zero(self, gaussian_units: UnitGroupData):
        """Q(i) has no free generator to search."""
        rep = build_toral_rep(gaussian_units, unit_ideal(gaussian_units.field))
        with pytest.raises(ValidationFailure, match="unit rank"):
            totally_irreducible_unit_search(rep, BUDGET)

    def test_cyclotomic_five_not_found(self, zeta5_units: UnitGroupData):
        """Every unit of Q(ζ₅) has a power in Q(√5)."""
        rep = build_toral_rep(zeta5_units, unit_ideal(zeta5_units.field))
        assert totally_irreducible_unit_search(rep, BUDGET) is None


class TestIsCM:
    """CM certificates and their absence."""

    def test_real_place(self, quartic_units: UnitGroupData):
        """x⁴ - 2 has real embeddings, so it is not CM."""
        status = is_cm(quartic_units.field, quartic_units, BUDGET)
        assert status.kind == "not_CM"

    def test_gaussian(self, gaussian_units: UnitGroupData):
        """Conjugation on Q(i) is θ ↦ -θ."""
        status = is_cm(gaussian_units.field, gaussian_units, BUDGET)
        assert status.kind == "CM"
        assert status.cm_certificate is not None
        assert status.cm_certificate.conjugation_image == -theta(gaussian_units.field)
        assert status.cm_certificate.fixed_field_polynomial.degree == 1

    def test_cyclotomic_five(self, zeta5_units: UnitGroupData):
        """Conjugation on Q(ζ₅) is θ ↦ θ⁴ with fixed field of degree 2."""
        field = zeta5_units.field
        status = is_cm(field, zeta5_units, BUDGET)
        assert status.kind == "CM"
        certificate = status.cm_certificate
        assert certificate is not None
        assert certificate.conjugation_image == theta(field) ** 4
        assert certificate.fixed_field_polynomial.degree == 2
        assert certificate.matched_embeddings == (1, 2)

    def test_conjugation_is_involution(self, zeta5_units: UnitGroupData):
        """The conjugation matrix squares to the identity and fixes a rank two lattice."""
        field = zeta5_units.field
        certificate = is_cm(field, zeta5_units, BUDGET).cm_certificate
        assert certificate is not None
        matrix = conjugation_matrix(field, certificate)
        assert matrix @ matrix == IntegerMatrix.identity(4)
        fixed = real_subfield_lattice(field, certificate)
        assert len(fixed) == 2
        assert all(matrix.apply(vector) == tuple(vector) for vector in fixed)

    def test_real_unit_subgroup(self, zeta5_units: UnitGroupData):
        """(1+ζ₅)^5 is the least real power of 1+ζ₅."""
        field = zeta5_units.field
        certificate = is_cm(field, zeta5_units, BUDGET).cm_certificate
        assert certificate is not None
        real = real_unit_subgroup(zeta5_units, certificate)
        unit = zeta5_units.free_generators[0]
        assert real.free_generators == (unit**5,)
        assert real.torsion_order == 2
        assert real.provenance == "derived-subgroup"
        image = certificate.conjugation_image
        assert apply_automorphism(real.free_generators[0], image) == real.free_generators[0]


class TestExpandingUnit:
    """Quasi-hyperbolicity certificates."""

    def test_sqrt_two_embeddings(self, sqrt2_rep: ToralRep):
        """1+√2 expands at σ₁ and its inverse at σ₂."""
        field = sqrt2_rep.field
        first = expanding_unit(sqrt2_rep, field.embedding(1), BUDGET)
        second = expanding_unit(sqrt2_rep, field.embedding(2), BUDGET)
        assert first.word == UnitWord.free((1,))
        assert second.word == UnitWord.free((-1,))
        assert first.abs_squared.lower > 1

    def test_rank_zero(self, gaussian_units: UnitGroupData):
        """No unit expands when the rank is 0."""
        rep = build_toral_rep(gaussian_units, unit_ideal(gaussian_units.field))
        with pytest.raises(ValidationFailure, match="rank 0"):
            expanding_unit(rep, gaussian_units.field.embedding(1), BUDGET)


class TestBerendConditions:
    """The three matrix-level conditions."""

    def test_real_cubic(self, cubic_units: UnitGroupData):
        """All three conditions hold on the cubic field of discriminant 49."""
        rep = build_toral_rep(cubic_units, unit_ideal(cubic_units.field))
        conditions = berend_conditions(rep, BUDGET)
        assert conditions.totally_irreducible is not None
        assert conditions.all_expanding
        assert conditions.not_virtually_cyclic
        assert conditions.outcome == "ID"

    def test_sqrt_two(self, sqrt2_rep: ToralRep):
        """Q(√2) fails only the rank condition."""
        conditions = berend_conditions(sqrt2_rep, BUDGET)
        assert conditions.totally_irreducible is not None
        assert conditions.all_expanding
        assert not conditions.not_virtually_cyclic
        assert conditions.outcome == "not_ID"

    def test_cyclotomic_five(self, zeta5_units: UnitGroupData):
        """Q(ζ₅): no certificate, expanding units everywhere, rank 1."""
        rep = build_toral_rep(zeta5_units, unit_ideal(zeta5_units.field))
        conditions = berend_conditions(rep, BUDGET)
        assert conditions.totally_irreducible is None
        assert conditions.all_expanding
        assert not conditions.not_virtually_cyclic


class TestIDVerdict:
    """Field criterion against matrix conditions."""

    def test_sqrt_two(self, sqrt2_units: UnitGroupData):
        """Rank 1 is never ID."""
        verdict = id_verdict(sqrt2_units, BUDGET)
        assert verdict.verdict == "not_ID"
        assert verdict.agreement

    def test_real_cubic(self, cubic_units: UnitGroupData):
        """The totally real cubic with rank 2 is ID on both routes."""
        verdict = id_verdict(cubic_units, BUDGET)
        assert verdict.verdict == "ID"
        assert verdict.field_route == verdict.matrix_route == "ID"
        assert verdict.agreement

    def test_quartic_with_second_ideal(self, quartic_units: UnitGroupData):
        """x⁴ - 2 is ID, and the conditions agree on O_K and on (θ)."""
        field = quartic_units.field
        ideals = [unit_ideal(field), principal_ideal(theta(field), label="theta")]
        verdict = id_verdict(quartic_units, BUDGET, ideals)
        assert verdict.verdict == "ID"
        assert [c.ideal_label for c in verdict.conditions] == ["O_K", "theta"]
        assert all(c.satisfied for c in verdict.conditions)

    def test_cyclotomic_seven(self, zeta7_units: UnitGroupData):
        """Q(ζ₇) has rank 2 but is CM, hence not ID."""
        verdict = id_verdict(zeta7_units, BUDGET)
        assert verdict.verdict == "not_ID"
        assert verdict.cm_status.kind == "CM"
        assert verdict.cm_status.cm_certificate is not None
        assert verdict.cm_status.cm_certificate.conjugation_image == theta(zeta7_units.field) ** 6

    def test_gaussian(self, gaussian_units: UnitGroupData):
        """Rank 0 fields are not ID."""
        verdict = id_verdict(gaussian_units, BUDGET)
        assert verdict.verdict == "not_ID"
        assert verdict.conditions[0].expanding == (None,)

    def test_rank_two_implies_expanding(
        self, cubic_units: UnitGroupData, quartic_units: UnitGroupData
    ):
        """Whenever the rank condition holds, every embedding has an expanding unit."""
        for group in (cubic_units, quartic_units):
            for conditions in id_verdict(group, BUDGET).conditions:
                assert conditions.not_virtually_cyclic
                assert conditions.all_expanding


class TestAvoidSublattices:
    """Vectors outside finitely many proper subspaces."""

    def test_examples(self):
        """span(e₁) and {span(e₁), span(e₂)} give (1,1); span((1,1)) needs m₁ ≠ m₂."""
        assert avoid_sublattices([[[1, 0]]], 2) == (1, 1)
        assert avoid_sublattices([[[1, 0]], [[0, 1]]], 2) == (1, 1)
        first, second = avoid_sublattices([[[1, 1]]], 2)
        assert first != second

    def test_full_rank_rejected(self):
        """A full-rank sublattice cannot be avoided."""
        with pytest.raises(ValidationFailure, match="full rank"):
            avoid_sublattices([[[1, 0], [0, 1]]], 2)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.lists(
                st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=2
            ),
            min_size=1,
            max_size=4,
        )
    )
    def test_rank_increases(self, sublattices: list[list[list[int]]]):
        """rank(F + Zm) = rank(F) + 1 for every F."""
        m = avoid_sublattices(sublattices, 3)
        for vectors in sublattices:
            assert integer_rank([*vectors, m]) == integer_rank(vectors) + 1
