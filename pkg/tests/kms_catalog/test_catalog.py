"""Tests for the extremal trace catalog, the trace formula and the classification status."""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from toral_kms.berend_certifier import id_verdict
from toral_kms.exact_core import RationalPolynomial
from toral_kms.exceptions import ValidationFailure
from toral_kms.ideal_lattice import principal_ideal, unit_ideal
from toral_kms.kms_catalog import (
    ClassificationStatus,
    ExtremalTraceParam,
    KmsCatalog,
    character_value,
    classification_status,
    enumerate_extremal_params,
    evaluate_trace,
    ideal_vector,
    is_positive_semidefinite,
    trace_matrix,
)
from toral_kms.number_field import create_field, element, one, rational, theta
from toral_kms.orbit_isotropy import CharacterValue, OrbitRecord
from toral_kms.toral_action import RationalTorusPoint, act, build_toral_rep
from toral_kms.unit_group import UnitGroupData, UnitWord, standard_unit_group, verify_units

BUDGET = 4
PLACEHOLDER = ClassificationStatus(kind="undetermined", notes="not computed in this test")


def poly(*coefficients: int) -> RationalPolynomial:
    return RationalPolynomial.from_integers(coefficients)


@pytest.fixture(scope="module")
def sqrt2_units() -> UnitGroupData:
    return standard_unit_group(create_field(poly(-2, 0, 1), name="sqrt2"), None)


@pytest.fixture(scope="module")
def gaussian_units() -> UnitGroupData:
    return standard_unit_group(create_field(poly(1, 0, 1), name="gaussian"), None)


@pytest.fixture(scope="module")
def cubic_units() -> UnitGroupData:
    field = create_field(poly(1, -2, -1, 1), name="real-cubic")
    root = theta(field)
    return verify_units(field, [root, root - one(field)])


@pytest.fixture(scope="module")
def sqrt2_catalog(sqrt2_units: UnitGroupData) -> KmsCatalog:
    ideals = [unit_ideal(sqrt2_units.field)]
    return enumerate_extremal_params(sqrt2_units, ideals, 7, PLACEHOLDER)


@pytest.fixture(scope="module")
def gaussian_catalog(gaussian_units: UnitGroupData) -> KmsCatalog:
    ideals = [unit_ideal(gaussian_units.field)]
    return enumerate_extremal_params(gaussian_units, ideals, 7, PLACEHOLDER)


def record_at(catalog: KmsCatalog, base: RationalTorusPoint) -> OrbitRecord:
    return next(
        entry.record
        for stratum in catalog.strata
        for entry in stratum.orbits
        if entry.record.orbit.base == base
    )


def orbit_param(record: OrbitRecord, character: CharacterValue | None = None) -> ExtremalTraceParam:
    return ExtremalTraceParam(
        ideal_label=record.orbit.ideal_label,
        measure="orbit",
        record=record,
        character=character or CharacterValue.trivial(record.isotropy.free_rank),
    )


FIFTH = RationalTorusPoint.from_fractions([Fraction(1, 5), 0])


class TestEnumerateExtremalParams:
    """Catalog contents."""

    def test_gaussian_ten_parameters(self, gaussian_units: UnitGroupData):
        """Orbits {0}, the swapped halves and (1/2, 1/2) carry 4 + 2 + 4 characters."""
        catalog = enumerate_extremal_params(
            gaussian_units, [unit_ideal(gaussian_units.field)], 2, PLACEHOLDER
        )
        assert catalog.discrete_parameter_count == 10
        assert not catalog.strata[0].haar
        assert len(list(catalog.parameters())) == 10

    def test_rank_one_trivial_bound(self, sqrt2_units: UnitGroupData):
        """qmax = 1 gives the zero orbit with Ĝ = Z/2 × T and the Haar parameter."""
        catalog = enumerate_extremal_params(
            sqrt2_units, [unit_ideal(sqrt2_units.field)], 1, PLACEHOLDER
        )
        (entry,) = catalog.strata[0].orbits
        assert str(entry.descriptor) == "Z/2 × T^1"
        parameters = list(catalog.parameters())
        assert [p.measure for p in parameters] == ["orbit", "orbit", "haar"]

    def test_real_cubic(self, cubic_units: UnitGroupData):
        """Orbits of sizes 1 and 7 plus Haar, and the non-CM banner."""
        verdict = id_verdict(cubic_units, BUDGET)
        status = classification_status(cubic_units.field, verdict)
        catalog = enumerate_extremal_params(
            cubic_units, [unit_ideal(cubic_units.field)], 2, status
        )
        stratum = catalog.strata[0]
        assert [entry.record.orbit.size for entry in stratum.orbits] == [1, 7]
        assert stratum.haar
        assert catalog.status.kind == "non_cm_conjectural"

    def test_several_ideals_in_threads(self, sqrt2_units: UnitGroupData):
        """Each ideal gets its own stratum, in the order given."""
        field = sqrt2_units.field
        ideals = [unit_ideal(field), principal_ideal(theta(field), "(√2)")]
        catalog = enumerate_extremal_params(sqrt2_units, ideals, 3, PLACEHOLDER, threads=2)
        assert [stratum.ideal_label for stratum in catalog.strata] == ["O_K", "(√2)"]

    def test_character_grid(self, sqrt2_units: UnitGroupData):
        """A grid of 4 angles gives 2 × 4 sample characters on the zero orbit."""
        catalog = enumerate_extremal_params(
            sqrt2_units, [unit_ideal(sqrt2_units.field)], 1, PLACEHOLDER, grid=4
        )
        assert len(catalog.strata[0].orbits[0].sample_characters) == 8
        assert len(list(catalog.parameters(include_samples=True))) == 9

    @pytest.mark.parametrize("beta", [2.0, 1.5, -1.0])
    def test_beta_must_exceed_two(self, sqrt2_units: UnitGroupData, beta: float):
        """Only β > 2 is accepted."""
        with pytest.raises(ValidationFailure, match="β > 2"):
            enumerate_extremal_params(
                sqrt2_units, [unit_ideal(sqrt2_units.field)], 1, PLACEHOLDER, beta=beta
            )


class TestEvaluateTrace:
    """The explicit trace formula."""

    def test_sqrt_two_fifth(self, sqrt2_catalog: KmsCatalog):
        """Each nonzero residue appears three times, so the average is -1/4."""
        param = orbit_param(record_at(sqrt2_catalog, FIFTH))
        value = evaluate_trace(param, (1, 0), UnitWord.identity(1))
        assert abs(value - (-0.25)) < 1e-10

    def test_outside_isotropy_is_zero(self, sqrt2_catalog: KmsCatalog):
        """u = 1 + √2 moves (1/5, 0), so the trace vanishes exactly."""
        param = orbit_param(record_at(sqrt2_catalog, FIFTH))
        assert evaluate_trace(param, (1, 0), UnitWord.free((1,))) == 0
        assert evaluate_trace(param, (0, 0), UnitWord.torsion(1, 1)) == 0

    def test_zero_orbit_returns_character(self, sqrt2_catalog: KmsCatalog):
        """On {0} the trace is χ(u) for every j; the sign character sends -1 to -1."""
        param = orbit_param(
            record_at(sqrt2_catalog, RationalTorusPoint.zero(2)),
            CharacterValue(torsion_index=1, angles=(Fraction(0),)),
        )
        for j in [(0, 0), (3, -1), (5, 7)]:
            assert abs(evaluate_trace(param, j, UnitWord.torsion(1, 1)) + 1) < 1e-12
            assert abs(evaluate_trace(param, j, UnitWord.identity(1)) - 1) < 1e-12

    def test_haar(self):
        """Haar gives 1 at (1, 0) and 0 elsewhere."""
        param = ExtremalTraceParam(ideal_label="O_K", measure="haar", unit_torsion_order=2)
        assert evaluate_trace(param, (0, 0), UnitWord.identity(1)) == 1
        assert evaluate_trace(param, (1, 0), UnitWord.identity(1)) == 0
        assert evaluate_trace(param, (0, 0), UnitWord.free((1,))) == 0
        assert evaluate_trace(param, (0, 0), UnitWord.torsion(1, 1)) == 0
        with pytest.raises(ValidationFailure, match="trivial isotropy"):
            character_value(param, UnitWord.free((1,)))

    @pytest.mark.parametrize("exponent", [2, -2, 4])
    def test_haar_full_torsion_turn(self, exponent: int):
        """(-1)^2 is the identity, so Haar sees u = 1."""
        param = ExtremalTraceParam(ideal_label="O_K", measure="haar", unit_torsion_order=2)
        word = UnitWord.torsion(exponent, 1)
        assert character_value(param, word) == 1
        assert evaluate_trace(param, (0, 0), word) == 1
        assert evaluate_trace(param, (0, 1), word) == 0

    def test_haar_from_catalog(self, sqrt2_catalog: KmsCatalog, gaussian_units: UnitGroupData):
        """Catalog Haar parameters carry w."""
        haar = [p for p in sqrt2_catalog.parameters() if p.measure == "haar"]
        assert [p.torsion_order for p in haar] == [2]
        catalog = enumerate_extremal_params(
            gaussian_units, [unit_ideal(gaussian_units.field)], 1, PLACEHOLDER
        )
        assert catalog.unit_torsion_order == 4

    def test_haar_needs_torsion_order(self, sqrt2_catalog: KmsCatalog):
        """Haar without w, or an orbit parameter with the wrong w, is rejected."""
        with pytest.raises(ValueError, match="order of the unit torsion group"):
            ExtremalTraceParam(ideal_label="O_K", measure="haar")
        record = record_at(sqrt2_catalog, FIFTH)
        with pytest.raises(ValueError, match="does not match"):
            ExtremalTraceParam(
                ideal_label="O_K",
                measure="orbit",
                record=record,
                character=CharacterValue.trivial(record.isotropy.free_rank),
                unit_torsion_order=4,
            )

    def test_zero_orbit_full_torsion_turn(self, sqrt2_catalog: KmsCatalog):
        """The sign character sends (-1)^2 to 1."""
        param = orbit_param(
            record_at(sqrt2_catalog, RationalTorusPoint.zero(2)),
            CharacterValue(torsion_index=1, angles=(Fraction(0),)),
        )
        assert abs(evaluate_trace(param, (0, 0), UnitWord.torsion(2, 1)) - 1) < 1e-12

    @pytest.mark.parametrize("j", [(1, 0), (3, -2), (0, 4)])
    def test_large_coordinates(self, sqrt2_catalog: KmsCatalog, j: tuple[int, int]):
        """j and j + 5·2^64·e_1 give the same trace on an orbit of denominator 5."""
        param = orbit_param(record_at(sqrt2_catalog, FIFTH))
        shifted = (j[0] + 5 * 2**64, j[1])
        expected = evaluate_trace(param, j, UnitWord.identity(1))
        assert abs(evaluate_trace(param, shifted, UnitWord.identity(1)) - expected) < 1e-12
        negative = (j[0] - 5 * 2**70, j[1] + 5 * 3**50)
        assert abs(evaluate_trace(param, negative, UnitWord.identity(1)) - expected) < 1e-12

    def test_field_element_argument(self, sqrt2_units: UnitGroupData, sqrt2_catalog: KmsCatalog):
        """j = 1 as a field element is read in the basis of O_K."""
        field = sqrt2_units.field
        param = orbit_param(record_at(sqrt2_catalog, FIFTH))
        value = evaluate_trace(param, one(field), UnitWord.identity(1), unit_ideal(field))
        assert abs(value + 0.25) < 1e-10

    def test_element_outside_ideal(self, sqrt2_units: UnitGroupData):
        """1 is not in (2)."""
        field = sqrt2_units.field
        doubled = principal_ideal(rational(field, 2), "2O_K")
        with pytest.raises(ValidationFailure, match="not in the ideal"):
            ideal_vector(doubled, one(field))
        assert ideal_vector(doubled, element(field, [2, 4])) == (1, 2)

    @pytest.mark.parametrize("which", ["sqrt2", "gaussian"])
    def test_matches_brute_force_sum(
        self, sqrt2_catalog: KmsCatalog, gaussian_catalog: KmsCatalog, which: str
    ):
        """Trivial character at u = 1 equals the direct character sum for every orbit, q ≤ 7."""
        catalog = sqrt2_catalog if which == "sqrt2" else gaussian_catalog
        js = [(1, 0), (0, 1), (2, -3), (4, 5)]
        for entry in catalog.strata[0].orbits:
            param = orbit_param(entry.record)
            points = entry.record.orbit.points
            for j in js:
                direct = sum(
                    cmath.exp(2j * cmath.pi * sum(a * float(x) for a, x in zip(j, p.coordinates())))
                    for p in points
                ) / len(points)
                rank = entry.record.isotropy.free_rank
                value = evaluate_trace(param, j, UnitWord.identity(rank))
                assert abs(value - direct) < 1e-10

    def test_membership_matches_fixing(
        self, sqrt2_units: UnitGroupData, sqrt2_catalog: KmsCatalog
    ):
        """τ(u·δ_0) ≠ 0 exactly when u fixes the base point."""
        rep = build_toral_rep(sqrt2_units, unit_ideal(sqrt2_units.field))
        words = [UnitWord.from_vector(v) for v in [(1, 0), (0, 1), (6, 1), (12, 0), (3, 1)]]
        for entry in sqrt2_catalog.strata[0].orbits:
            param = orbit_param(entry.record)
            base = entry.record.orbit.base
            for word in words:
                fixes = act(base, word, rep) == base
                assert (abs(evaluate_trace(param, (0, 0), word)) > 0.5) == fixes


class TestStateChecks:
    """Traces are positive definite functions on the ideal."""

    def test_trace_matrices_are_psd(self, sqrt2_catalog: KmsCatalog):
        """Gram matrices over a 3×3 box of j are positive semidefinite."""
        js = [(a, b) for a in range(-1, 2) for b in range(-1, 2)]
        for param in sqrt2_catalog.parameters():
            assert is_positive_semidefinite(trace_matrix(param, js))

    def test_indefinite_rejected(self):
        """A matrix with a negative eigenvalue fails."""
        assert not is_positive_semidefinite(np.array([[1, 2], [2, 1]], dtype=np.complex128))


class TestClassificationStatus:
    """Banner per field type."""

    def test_gaussian(self, gaussian_units: UnitGroupData):
        """Unit rank 0."""
        verdict = id_verdict(gaussian_units, BUDGET)
        status = classification_status(gaussian_units.field, verdict)
        assert status.kind == "imaginary_quadratic_complete"

    def test_sqrt_two(self, sqrt2_units: UnitGroupData):
        """Unit rank 1."""
        verdict = id_verdict(sqrt2_units, BUDGET)
        assert classification_status(sqrt2_units.field, verdict).kind == "rank_one_poulsen"

    def test_cyclotomic_seven(self):
        """Q(ζ₇) is CM with unit rank 2."""
        field = create_field(poly(1, 1, 1, 1, 1, 1, 1), name="zeta7")
        real = element(field, [0, 1, 0, 0, 0, 0]) + element(field, [-1, -1, -1, -1, -1, -1])
        units = verify_units(field, [real, real + one(field)])
        status = classification_status(field, id_verdict(units, BUDGET))
        assert status.kind == "cm_incomplete"

    def test_rank_mismatch(self, sqrt2_units: UnitGroupData, gaussian_units: UnitGroupData):
        """A verdict of another field is rejected."""
        verdict = id_verdict(gaussian_units, BUDGET)
        with pytest.raises(ValidationFailure, match="unit rank 0"):
            classification_status(sqrt2_units.field, verdict)
