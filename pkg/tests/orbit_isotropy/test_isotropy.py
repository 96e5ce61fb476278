"""Tests for isotropy lattices, character groups, the quasi-orbit space and Prim closures."""

import cmath
from fractions import Fraction

import pytest

from toral_kms.berend_certifier import IDVerdict, id_verdict
from toral_kms.exact_core import RationalPolynomial
from toral_kms.exceptions import ValidationFailure
from toral_kms.ideal_lattice import unit_ideal
from toral_kms.number_field import create_field, one, theta
from toral_kms.orbit_isotropy import (
    CharacterValue,
    FiniteOrbit,
    PrimPoint,
    character_grid,
    character_group,
    contains_word,
    denominator_statistics,
    evaluate_character,
    isotropy,
    orbit_of,
    orbit_records,
    partition_denominator,
    prim_closure_contains,
    prim_strata,
    quasi_orbit_space,
    reduce_group_mod_q,
    torsion_characters,
)
from toral_kms.toral_action import RationalTorusPoint, ToralRep, act, build_toral_rep
from toral_kms.unit_group import UnitGroupData, UnitWord, standard_unit_group, verify_units

BUDGET = 4


def poly(*coefficients: int) -> RationalPolynomial:
    return RationalPolynomial.from_integers(coefficients)


def point(*coordinates: Fraction | int) -> RationalTorusPoint:
    return RationalTorusPoint.from_fractions(coordinates)


@pytest.fixture(scope="module")
def sqrt2_units() -> UnitGroupData:
    return standard_unit_group(create_field(poly(-2, 0, 1), name="sqrt2"), None)


@pytest.fixture(scope="module")
def sqrt2_rep(sqrt2_units: UnitGroupData) -> ToralRep:
    return build_toral_rep(sqrt2_units, unit_ideal(sqrt2_units.field))


@pytest.fixture(scope="module")
def gaussian_rep() -> ToralRep:
    units = standard_unit_group(create_field(poly(1, 0, 1), name="gaussian"), None)
    return build_toral_rep(units, unit_ideal(units.field))


@pytest.fixture(scope="module")
def cubic_units() -> UnitGroupData:
    field = create_field(poly(1, -2, -1, 1), name="real-cubic")
    root = theta(field)
    return verify_units(field, [root, root - one(field)])


@pytest.fixture(scope="module")
def cubic_rep(cubic_units: UnitGroupData) -> ToralRep:
    return build_toral_rep(cubic_units, unit_ideal(cubic_units.field))


@pytest.fixture(scope="module")
def cubic_verdict(cubic_units: UnitGroupData) -> IDVerdict:
    return id_verdict(cubic_units, BUDGET)


class TestIsotropy:
    """Stabilizers pulled back to the exponent lattice."""

    def test_zero_orbit_is_everything(self, sqrt2_rep: ToralRep):
        """The orbit {0} has H = G."""
        subgroup = isotropy(
            orbit_of(RationalTorusPoint.zero(2), sqrt2_rep), reduce_group_mod_q(sqrt2_rep, 1)
        )
        assert subgroup.index == 1
        assert subgroup.lattice == ((1, 0), (0, 1))
        assert subgroup.quotient_invariants == ()

    def test_sqrt_two_fifth(self, sqrt2_rep: ToralRep):
        """Trivial stabilizer mod 5, H = ⟨(6, 1)⟩ and G/H ≅ Z/12."""
        orbit = orbit_of(point(Fraction(1, 5), 0), sqrt2_rep)
        subgroup = isotropy(orbit, reduce_group_mod_q(sqrt2_rep, 5))
        assert subgroup.stabilizer_order == 1
        assert subgroup.index == 12
        assert subgroup.quotient_invariants == (12,)
        assert subgroup.lattice == ((6, 1), (0, 2))
        assert subgroup.torsion_order == 1
        assert contains_word(subgroup, (6, 1))
        assert contains_word(subgroup, UnitWord.free((12,)))
        assert not contains_word(subgroup, UnitWord.torsion(1, 1))

    def test_gaussian_halves(self, gaussian_rep: ToralRep):
        """Only the identity fixes (1/2, 0) mod 2, so H has index 2 in Z/4."""
        group = reduce_group_mod_q(gaussian_rep, 2)
        swapped, fixed = partition_denominator(gaussian_rep, 2)
        moving = isotropy(swapped, group)
        assert moving.index == 2
        assert moving.torsion_order == 2
        assert moving.torsion_generator == (2,)
        still = isotropy(fixed, group)
        assert still.index == 1
        assert still.torsion_order == 4

    def test_mismatched_modulus(self, sqrt2_rep: ToralRep):
        """The group must be reduced modulo the orbit denominator."""
        orbit = orbit_of(point(Fraction(1, 5), 0), sqrt2_rep)
        with pytest.raises(ValidationFailure, match="denominator 5"):
            isotropy(orbit, reduce_group_mod_q(sqrt2_rep, 1))

    @pytest.mark.parametrize("q", range(1, 13))
    def test_invariants_up_to_twelve(self, sqrt2_rep: ToralRep, gaussian_rep: ToralRep, q: int):
        """Full rank, orbit–stabilizer and membership agree with fixing the base point."""
        for rep in (sqrt2_rep, gaussian_rep):
            group = reduce_group_mod_q(rep, q)
            for orbit in partition_denominator(rep, q):
                subgroup = isotropy(orbit, group)
                assert len(subgroup.lattice) == rep.rank + 1
                assert group.order == orbit.size * subgroup.stabilizer_order
                for word in rep.generator_words():
                    fixes = act(orbit.base, word, rep) == orbit.base
                    assert contains_word(subgroup, word) == fixes

    @pytest.mark.parametrize("q", [3, 4, 5, 6])
    def test_constant_along_orbit(self, sqrt2_rep: ToralRep, q: int):
        """Isotropy computed from any point of an orbit gives the same lattice."""
        group = reduce_group_mod_q(sqrt2_rep, q)
        for orbit in partition_denominator(sqrt2_rep, q):
            reference = isotropy(orbit, group).lattice
            for other in orbit.points:
                assert isotropy(orbit_of(other, sqrt2_rep), group).lattice == reference


class TestCharacterGroup:
    """Ĥ ≅ V̂ × T^n."""

    def test_full_group_sqrt_two(self, sqrt2_rep: ToralRep):
        """H = G has torsion {±1} and one free direction."""
        subgroup = isotropy(
            orbit_of(RationalTorusPoint.zero(2), sqrt2_rep), reduce_group_mod_q(sqrt2_rep, 1)
        )
        descriptor = character_group(subgroup)
        assert descriptor.torsion_invariants == (2,)
        assert descriptor.torus_rank == 1

    def test_torsion_free_isotropy(self, sqrt2_rep: ToralRep):
        """H = ⟨(6, 1)⟩ ≅ Z."""
        subgroup = isotropy(
            orbit_of(point(Fraction(1, 5), 0), sqrt2_rep), reduce_group_mod_q(sqrt2_rep, 5)
        )
        descriptor = character_group(subgroup)
        assert descriptor.torsion_invariants == ()
        assert descriptor.torus_rank == 1

    def test_gaussian(self, gaussian_rep: ToralRep):
        """Isotropy of the swapped pair is Z/2 with no torus part."""
        swapped, _ = partition_denominator(gaussian_rep, 2)
        descriptor = character_group(isotropy(swapped, reduce_group_mod_q(gaussian_rep, 2)))
        assert descriptor.torsion_invariants == (2,)
        assert descriptor.torus_rank == 0
        assert str(descriptor) == "Z/2 × T^0"

    def test_character_values(self, sqrt2_rep: ToralRep):
        """On H = ⟨(6, 1)⟩ the angle 1/4 sends (6, 1) to i and u¹² to -1."""
        subgroup = isotropy(
            orbit_of(point(Fraction(1, 5), 0), sqrt2_rep), reduce_group_mod_q(sqrt2_rep, 5)
        )
        character = CharacterValue(angles=(Fraction(1, 4),))
        assert abs(evaluate_character(subgroup, character, (6, 1)) - 1j) < 1e-12
        assert abs(evaluate_character(subgroup, character, (12, 0)) + 1) < 1e-12
        with pytest.raises(ValidationFailure, match="not in the isotropy group"):
            evaluate_character(subgroup, character, (1, 0))

    def test_torsion_characters_gaussian(self, gaussian_rep: ToralRep):
        """The four characters of Z/4 send i to the fourth roots of unity."""
        subgroup = isotropy(
            orbit_of(RationalTorusPoint.zero(2), gaussian_rep), reduce_group_mod_q(gaussian_rep, 1)
        )
        values = [evaluate_character(subgroup, c, (1,)) for c in torsion_characters(subgroup)]
        expected = [cmath.exp(2j * cmath.pi * k / 4) for k in range(4)]
        assert all(abs(v - e) < 1e-12 for v, e in zip(values, expected))

    def test_character_is_multiplicative(self, sqrt2_rep: ToralRep):
        """χ(a + b) = χ(a)·χ(b) on H for every grid character."""
        subgroup = isotropy(
            orbit_of(RationalTorusPoint.zero(2), sqrt2_rep), reduce_group_mod_q(sqrt2_rep, 1)
        )
        words = [(1, 0), (0, 1), (3, 1), (-2, 1)]
        for character in character_grid(subgroup, 3):
            for a in words:
                for b in words:
                    total = tuple(x + y for x, y in zip(a, b))
                    product = evaluate_character(subgroup, character, a) * evaluate_character(
                        subgroup, character, b
                    )
                    assert abs(evaluate_character(subgroup, character, total) - product) < 1e-9

    def test_grid_size(self, sqrt2_rep: ToralRep):
        """Two torsion characters times three angles."""
        subgroup = isotropy(
            orbit_of(RationalTorusPoint.zero(2), sqrt2_rep), reduce_group_mod_q(sqrt2_rep, 1)
        )
        assert len(character_grid(subgroup, 3)) == 6


class TestOrbitRecords:
    """Orbit catalogs and per-denominator statistics."""

    def test_gaussian_counts(self, gaussian_rep: ToralRep):
        """Sizes 1, 2, 1 with isotropy orders 4, 2, 4 up to q = 2."""
        records = orbit_records(gaussian_rep, 2)
        assert [record.orbit.size for record in records] == [1, 2, 1]
        assert [record.characters.torsion_size for record in records] == [4, 2, 4]

    def test_statistics(self, sqrt2_rep: ToralRep):
        """Denominator 5 of Q(√2): two orbits of 12 among 24 points."""
        records = orbit_records(sqrt2_rep, 5)
        statistics = denominator_statistics(5, 2, records)
        assert statistics.orbit_count == 2
        assert statistics.sizes == (12, 12)
        assert statistics.point_count == 24
        assert statistics.isotropy_index_lcm == 12


class TestQuasiOrbitSpace:
    """Quasi-orbits of an ID action."""

    def test_real_cubic(self, cubic_rep: ToralRep, cubic_verdict: IDVerdict):
        """O_K/2 is the field with eight elements, so the seven halves form one orbit."""
        space = quasi_orbit_space(cubic_rep, 2, cubic_verdict)
        assert [orbit.size for orbit in space.finite_quasi_orbits] == [1, 7]
        assert space.omega_infinity

    def test_trivial_bound(self, cubic_rep: ToralRep, cubic_verdict: IDVerdict):
        """qmax = 1 leaves {0} and ω∞."""
        space = quasi_orbit_space(cubic_rep, 1, cubic_verdict)
        assert [orbit.points for orbit in space.finite_quasi_orbits] == [
            (RationalTorusPoint.zero(3),)
        ]

    def test_rank_one_rejected(self, sqrt2_units: UnitGroupData, sqrt2_rep: ToralRep):
        """Q(√2) is not ID."""
        verdict = id_verdict(sqrt2_units, BUDGET)
        with pytest.raises(ValidationFailure, match="valid only under ID"):
            quasi_orbit_space(sqrt2_rep, 2, verdict)

    def test_strata_are_disjoint(self, cubic_rep: ToralRep, cubic_verdict: IDVerdict):
        """Finite quasi-orbits at different denominators share no point."""
        space = quasi_orbit_space(cubic_rep, 3, cubic_verdict)
        seen: set[RationalTorusPoint] = set()
        for orbit in space.finite_quasi_orbits:
            assert not seen & set(orbit.points)
            seen.update(orbit.points)

    def test_prim_strata(self, cubic_rep: ToralRep, cubic_verdict: IDVerdict):
        """{0} and the halves carry Z/2 × T², ω∞ carries the trivial group."""
        strata = prim_strata(quasi_orbit_space(cubic_rep, 2, cubic_verdict), cubic_rep)
        assert len(strata) == 3
        assert [str(stratum.characters) for stratum in strata] == [
            "Z/2 × T^2",
            "Z/2 × T^2",
            "1 × T^0",
        ]
        assert strata[-1].q is None


class TestPrimClosure:
    """Closure rules on finite samples."""

    @pytest.fixture(scope="class")
    def orbits(self, cubic_rep: ToralRep) -> list[FiniteOrbit]:
        return [orbit for q in (1, 2) for orbit in partition_denominator(cubic_rep, q)]

    def test_omega_is_dense(self, orbits: list[FiniteOrbit]):
        """Any point lies in the closure of {ω∞}."""
        target = PrimPoint(quasi_orbit=orbits[1], character=CharacterValue.trivial(2))
        assert prim_closure_contains(target, [PrimPoint.omega()])
        assert prim_closure_contains(PrimPoint.omega(), [PrimPoint.omega()])

    def test_finite_samples_are_closed(self, orbits: list[FiniteOrbit]):
        """ω∞ is not in the closure of finitely many finite quasi-orbits."""
        sample = [PrimPoint(quasi_orbit=orbit) for orbit in orbits]
        assert not prim_closure_contains(PrimPoint.omega(), sample)

    def test_declared_infinite_sample(self, orbits: list[FiniteOrbit]):
        """A sample standing for infinitely many quasi-orbits is dense."""
        sample = [PrimPoint(quasi_orbit=orbits[0])]
        assert prim_closure_contains(PrimPoint.omega(), sample, declared_infinite=True)

    def test_reflexive(self, orbits: list[FiniteOrbit]):
        """([x], γ) lies in the closure of {([x], γ)}, but not of another character."""
        character = CharacterValue(torsion_index=1, angles=(Fraction(1, 3), Fraction(0)))
        target = PrimPoint(quasi_orbit=orbits[1], character=character)
        assert prim_closure_contains(target, [target])
        other = PrimPoint(quasi_orbit=orbits[1], character=CharacterValue.trivial(2))
        assert not prim_closure_contains(target, [other])

    def test_empty_sample(self, orbits: list[FiniteOrbit]):
        """The empty set is closed."""
        assert not prim_closure_contains(PrimPoint(quasi_orbit=orbits[0]), [])

    def test_mixed_ideals(self, orbits: list[FiniteOrbit], sqrt2_rep: ToralRep):
        """Points from different ideal duals cannot be compared."""
        foreign = orbit_of(RationalTorusPoint.zero(2), sqrt2_rep).model_copy(
            update={"ideal_label": "other"}
        )
        with pytest.raises(ValidationFailure, match="different ideals"):
            prim_closure_contains(
                PrimPoint(quasi_orbit=orbits[0]), [PrimPoint(quasi_orbit=foreign)]
            )
