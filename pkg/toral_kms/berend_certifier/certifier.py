"""Berend's three conditions on ρ_J and the resulting ID verdict."""

from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import product

from ai_pipeline_core import get_pipeline_logger

from toral_kms.exact_core import charpoly, is_irreducible_q
from toral_kms.exceptions import InternalConsistencyError, UndeterminedError, ValidationFailure
from toral_kms.number_field import EmbeddingHandle, embed, minimal_polynomial
from toral_kms.toral_action import ToralRep
from toral_kms.unit_group import (
    UnitWord,
    evaluate_word,
    possible_root_of_unity_orders,
)

from .models import (
    BerendConditions,
    ExpandingCertificate,
    TotalIrreducibilityCertificate,
)

logger = get_pipeline_logger(__name__)

EXPANSION_PRECISION = Fraction(1, 2**40)


def power_test_exponents(degree: int) -> list[int]:
    """M(d) = {m ≥ 1 : φ(m) ≤ d²}.

    A degree drop of some power u^m forces a ratio of two conjugates of u to be a root of unity
    of order dividing m; that ratio lies in a field of degree at most d², which bounds φ.
    """
    return possible_root_of_unity_orders(degree * degree)


def enumerate_words(rank: int, budget: int) -> Iterator[UnitWord]:
    """Non-trivial free words by length, generator order, positive exponents first."""
    for length in range(1, budget + 1):
        vectors = [
            vector
            for vector in product(range(-length, length + 1), repeat=rank)
            if sum(abs(e) for e in vector) == length
        ]
        vectors.sort(key=lambda vector: tuple((-abs(e), e < 0) for e in vector))
        for vector in vectors:
            yield UnitWord.free(vector)


def _power_degrees(rep: ToralRep, word: UnitWord, exponents: Sequence[int]) -> list[int] | None:
    """Minimal polynomial degrees of u^m, stopping at the first degree drop."""
    unit = evaluate_word(rep.unit_group, word)
    degree = rep.dimension
    wanted = set(exponents)
    degrees: list[int] = []
    power = unit
    for m in range(1, max(exponents) + 1):
        if m > 1:
            power = power * unit
        if m not in wanted:
            continue
        current = minimal_polynomial(power).degree
        if current != degree:
            logger.debug(f"Word {word}: u^{m} has minimal polynomial degree {current} < {degree}")
            return None
        degrees.append(current)
    return degrees


def totally_irreducible_unit_search(
    rep: ToralRep, budget: int
) -> TotalIrreducibilityCertificate | None:
    """First word of length ≤ budget whose powers u^m, m ∈ M(d), all generate the field.

    Returns:
        The certificate, or None when the budget is exhausted (which disproves nothing)

    Raises:
        ValidationFailure: for unit rank 0
    """
    if rep.rank < 1:
        raise ValidationFailure("totally irreducible unit search needs unit rank ≥ 1")
    exponents = power_test_exponents(rep.dimension)
    for word in enumerate_words(rep.rank, budget):
        degrees = _power_degrees(rep, word, exponents)
        if degrees is not None:
            logger.info(f"Totally irreducible unit {word} on {rep.ideal.label}")
            return TotalIrreducibilityCertificate(
                word=word, exponent_set=tuple(exponents), degrees=tuple(degrees)
            )
    return None


def recheck_irreducibility(rep: ToralRep, certificate: TotalIrreducibilityCertificate) -> bool:
    """charpoly(ρ_J(u^m)) is irreducible over Q for every m of the certificate."""
    return all(
        is_irreducible_q(charpoly(rep.matrix(certificate.word.scale(m))))
        for m in certificate.exponent_set
    )


def expanding_unit(rep: ToralRep, handle: EmbeddingHandle, budget: int) -> ExpandingCertificate:
    """Shortest word u with |σ(u)| certified above 1.

    Raises:
        ValidationFailure: for unit rank 0
        UndeterminedError: when no word within the budget is certified
    """
    if rep.rank < 1:
        raise ValidationFailure("no expanding unit exists for unit rank 0")
    for word in enumerate_words(rep.rank, budget):
        value = embed(evaluate_word(rep.unit_group, word), handle, EXPANSION_PRECISION)
        size = value.abs_squared()
        if size.lower > 1:
            return ExpandingCertificate(embedding_index=handle.index, word=word, abs_squared=size)
    raise UndeterminedError(
        f"no unit expanding at embedding {handle.index} among words of length ≤ {budget}"
    )


def berend_conditions(rep: ToralRep, budget: int) -> BerendConditions:
    """Totally irreducible, quasi-hyperbolic and not virtually cyclic, on one ideal dual."""
    irreducible: TotalIrreducibilityCertificate | None = None
    expanding: list[ExpandingCertificate | None] = []
    if rep.rank >= 1:
        irreducible = totally_irreducible_unit_search(rep, budget)
        if irreducible is not None and not recheck_irreducibility(rep, irreducible):
            raise InternalConsistencyError(
                f"certificate {irreducible.word} fails the characteristic polynomial recheck"
            )
        for handle in rep.field.embeddings:
            try:
                expanding.append(expanding_unit(rep, handle, budget))
            except UndeterminedError:
                expanding.append(None)
    else:
        expanding = [None] * len(rep.field.embeddings)
    return BerendConditions(
        ideal_label=rep.ideal.label,
        rank=rep.rank,
        totally_irreducible=irreducible,
        expanding=tuple(expanding),
        not_virtually_cyclic=rep.rank >= 2,
    )


def check_solidarity(conditions: Sequence[BerendConditions]) -> None:
    """Condition outcomes depend only on characteristic polynomials, hence not on the ideal."""
    reference = conditions[0]
    for other in conditions[1:]:
        if (
            (other.totally_irreducible is None) != (reference.totally_irreducible is None)
            or other.all_expanding != reference.all_expanding
            or other.not_virtually_cyclic != reference.not_virtually_cyclic
        ):
            raise InternalConsistencyError(
                f"Berend conditions differ between {reference.ideal_label} and {other.ideal_label}"
            )

