"""The representation ρ_J of the unit group on the dual torus of an ideal."""

from collections import OrderedDict
from fractions import Fraction
from threading import Lock

from ai_pipeline_core import get_pipeline_logger
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from toral_kms.exact_core import (
    CertifiedInterval,
    IntegerMatrix,
    charpoly,
    isolate_roots,
    rational_inverse,
    rational_product,
)
from toral_kms.exceptions import InternalConsistencyError, ValidationFailure
from toral_kms.ideal_lattice import IntegralIdeal
from toral_kms.number_field import (
    FieldElement,
    FieldSpec,
    embed,
    minimal_polynomial,
    multiplication_matrix_rational,
)
from toral_kms.unit_group import UnitGroupData, UnitWord, evaluate_word

from .models import RationalTorusPoint

logger = get_pipeline_logger(__name__)

# Word matrices kept per representation; least recently used words are evicted first.
WORD_CACHE_SIZE = 4096

EIGEN_CHECK_PRECISION = Fraction(1, 2**40)


def toral_matrix_of_element(value: FieldElement, ideal: IntegralIdeal) -> IntegerMatrix:
    """ρ_J(value) = (B_J⁻¹ · A_value · B_J)ᵀ.

    Raises:
        ValidationFailure: if multiplication by ``value`` does not preserve the ideal lattice
    """
    basis = ideal.basis_rational()
    conjugated = rational_product(
        rational_inverse(basis), rational_product(multiplication_matrix_rational(value), basis)
    )
    if any(entry.denominator != 1 for row in conjugated for entry in row):
        raise ValidationFailure(f"multiplication by {value} does not preserve {ideal.label}")
    return IntegerMatrix.from_columns([[int(entry) for entry in row] for row in conjugated])


def toral_matrix(group: UnitGroupData, word: UnitWord, ideal: IntegralIdeal) -> IntegerMatrix:
    """ρ_J of the exact unit named by ``word``; always in GL_d(Z)."""
    return toral_matrix_of_element(evaluate_word(group, word), ideal)


class ToralRep(BaseModel):
    """ρ_J : unit group → GL_d(Z) with its generator matrices and a word cache.

    The cache is bounded by ``WORD_CACHE_SIZE`` and safe to use from several threads.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    unit_group: UnitGroupData = Field(repr=False)
    ideal: IntegralIdeal
    torsion_matrix: IntegerMatrix
    generator_matrices: tuple[IntegerMatrix, ...]
    inverse_matrices: tuple[IntegerMatrix, ...]

    _cache: OrderedDict[UnitWord, IntegerMatrix] = PrivateAttr(default_factory=OrderedDict)
    _lock: Lock = PrivateAttr(default_factory=Lock)

    @property
    def field(self) -> FieldSpec:
        return self.ideal.field

    @property
    def dimension(self) -> int:
        return self.ideal.degree

    @property
    def rank(self) -> int:
        return len(self.generator_matrices)

    @property
    def torsion_order(self) -> int:
        return self.unit_group.torsion_order

    def matrix(self, word: UnitWord) -> IntegerMatrix:
        """ρ_J(word) assembled from the generator matrices."""
        key = word.reduced(self.torsion_order)
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                self._cache.move_to_end(key)
                return cached
        result = self.torsion_matrix.power(key.torsion_exp)
        for exponent, forward, backward in zip(
            key.exponents, self.generator_matrices, self.inverse_matrices
        ):
            if exponent:
                result = result @ (forward if exponent > 0 else backward).power(abs(exponent))
        with self._lock:
            self._cache[key] = result
            while len(self._cache) > WORD_CACHE_SIZE:
                self._cache.popitem(last=False)
        return result

    @property
    def cached_words(self) -> int:
        with self._lock:
            return len(self._cache)

    def generator_words(self, include_inverses: bool = True) -> list[UnitWord]:
        """Free generators (and their inverses) followed by the torsion generator."""
        words: list[UnitWord] = []
        for index in range(self.rank):
            exponents = tuple(int(i == index) for i in range(self.rank))
            words.append(UnitWord.free(exponents))
            if include_inverses:
                words.append(UnitWord.free(tuple(-e for e in exponents)))
        if self.torsion_order > 1:
            words.append(UnitWord.torsion(1, self.rank))
        return words


def build_toral_rep(group: UnitGroupData, ideal: IntegralIdeal) -> ToralRep:
    """Generator matrices of ρ_J, each checked to lie in GL_d(Z)."""
    if group.field.polynomial != ideal.field.polynomial:
        raise ValidationFailure("unit group and ideal belong to different fields")
    torsion = toral_matrix_of_element(group.torsion_generator, ideal)
    forward = tuple(toral_matrix_of_element(u, ideal) for u in group.free_generators)
    backward = tuple(toral_matrix_of_element(u**-1, ideal) for u in group.free_generators)
    identity = IntegerMatrix.identity(ideal.degree)
    for index, (matrix, inverse) in enumerate(zip(forward, backward)):
        if not matrix.is_unimodular() or matrix @ inverse != identity:
            raise InternalConsistencyError(f"ρ of unit generator {index} is not in GL_d(Z)")
    logger.debug(f"Built ρ for {ideal.label} with {len(forward)} free generators")
    return ToralRep(
        unit_group=group,
        ideal=ideal,
        torsion_matrix=torsion,
        generator_matrices=forward,
        inverse_matrices=backward,
    )


def verify_eigen_structure(group: UnitGroupData, word: UnitWord, ideal: IntegralIdeal) -> bool:
    """Check that the eigenvalues of ρ_J(u) are the archimedean embeddings of u.

    Exact part: charpoly(ρ_J(u)) = minpoly(u)^(d/deg). Certified part: every isolated root of the
    minimal polynomial overlaps an embedding value of u (up to conjugation) and vice versa.
    Mismatches are logged and reported as False.
    """
    unit = evaluate_word(group, word)
    matrix = toral_matrix_of_element(unit, ideal)
    characteristic = charpoly(matrix)
    minimal = minimal_polynomial(unit)
    multiplicity = ideal.degree // minimal.degree
    if characteristic != minimal**multiplicity:
        logger.warning(
            f"charpoly {characteristic} of ρ({word}) differs from ({minimal})^{multiplicity}"
        )
        return False
    roots = isolate_roots(minimal, EIGEN_CHECK_PRECISION)
    values = [embed(unit, handle, EIGEN_CHECK_PRECISION) for handle in unit.field.embeddings]

    def matches(root: CertifiedInterval, value: CertifiedInterval) -> bool:
        return root.overlaps(value) or root.overlaps(value.conjugate())

    unmatched_roots = [str(r) for r in roots if not any(matches(r, v) for v in values)]
    unmatched_values = [str(v) for v in values if not any(matches(r, v) for r in roots)]
    if unmatched_roots or unmatched_values:
        logger.warning(
            f"eigenvalues of ρ({word}) do not match embeddings: roots {unmatched_roots}, "
            f"embedding values {unmatched_values}"
        )
        return False
    return True


def act(point: RationalTorusPoint, word: UnitWord, rep: ToralRep) -> RationalTorusPoint:
    """u·x: numerators ← ρ(u)·numerators mod q."""
    return act_by_matrix(point, rep.matrix(word))


def act_by_matrix(point: RationalTorusPoint, matrix: IntegerMatrix) -> RationalTorusPoint:
    if point.dimension != matrix.shape[1]:
        raise ValidationFailure(
            f"point of dimension {point.dimension} cannot be acted on by a {matrix.shape} matrix"
        )
    return RationalTorusPoint.reduced(matrix.apply(point.numerators), point.denominator)
