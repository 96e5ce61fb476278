"""The explicit trace formula τ_(μ,χ)(u, j) and state checks on it."""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from toral_kms.exceptions import ValidationFailure
from toral_kms.ideal_lattice import IntegralIdeal, ideal_coordinates
from toral_kms.number_field import FieldElement
from toral_kms.orbit_isotropy import contains_word, evaluate_character
from toral_kms.unit_group import UnitWord

from .models import ExtremalTraceParam

PSD_TOLERANCE = 1e-8


def ideal_vector(ideal: IntegralIdeal, value: FieldElement) -> tuple[int, ...]:
    """Integer coordinates of ``value`` in the ideal basis.

    Raises:
        ValidationFailure: if ``value`` is not in the ideal
    """
    coordinates = ideal_coordinates(ideal, value)
    if any(c.denominator != 1 for c in coordinates):
        raise ValidationFailure(f"{value} is not in the ideal {ideal.label}")
    return tuple(int(c) for c in coordinates)


def character_value(param: ExtremalTraceParam, word: UnitWord) -> complex:
    """χ(u) for u in the isotropy group of the parameter's measure."""
    if param.record is None:
        word = word.reduced(param.torsion_order)
        if any(word.exponents) or word.torsion_exp:
            raise ValidationFailure(f"unit {word} is not in the trivial isotropy group of Haar")
        return 1.0 + 0j
    return evaluate_character(param.record.isotropy, param.character, word)


def evaluate_trace(
    param: ExtremalTraceParam,
    j: FieldElement | Sequence[int],
    word: UnitWord,
    ideal: IntegralIdeal | None = None,
) -> complex:
    """τ_(μ,χ) on the element u·δ_j.

    Zero unless u lies in the isotropy group H_μ; otherwise χ(u) times the average over the orbit
    of exp(2πi⟨j, x⟩). For Haar measure the value is 1 at (u, j) = (1, 0) and 0 elsewhere.

    Args:
        param: Measure and character
        j: Element of the ideal, or its integer coordinates in the ideal basis
        word: Unit word u
        ideal: The ideal of ``param``, needed when ``j`` is a field element

    Raises:
        ValidationFailure: if ``j`` is not in the ideal or has the wrong length
    """
    if isinstance(j, FieldElement):
        if ideal is None or ideal.label != param.ideal_label:
            raise ValidationFailure(f"the ideal {param.ideal_label} is needed to read j")
        vector = ideal_vector(ideal, j)
    else:
        vector = tuple(j)
    record = param.record
    if record is None:
        reduced = word.reduced(param.torsion_order)
        identity = not any(reduced.exponents) and reduced.torsion_exp == 0
        return complex(1.0 if identity and not any(vector) else 0.0)
    orbit = record.orbit
    if len(vector) != orbit.base.dimension:
        raise ValidationFailure(
            f"j has {len(vector)} coordinates but the torus has dimension {orbit.base.dimension}"
        )
    if not contains_word(record.isotropy, word):
        return 0j
    # exact residues; j may exceed int64
    residues = np.array(
        [sum(n * c for n, c in zip(p.numerators, vector)) % orbit.q for p in orbit.points]
    )
    average = np.exp(2j * np.pi * residues / orbit.q).mean()
    return complex(character_value(param, word) * average)


def trace_matrix(
    param: ExtremalTraceParam, js: Sequence[Sequence[int]]
) -> npt.NDArray[np.complex128]:
    """Gram matrix [τ(δ_(j_b − j_a))]_(a,b) of the trace restricted to the torus part."""
    size = len(js)
    rank = param.record.isotropy.free_rank if param.record is not None else 0
    identity = UnitWord.identity(rank)
    matrix = np.zeros((size, size), dtype=np.complex128)
    for a, left in enumerate(js):
        for b, right in enumerate(js):
            difference = [y - x for x, y in zip(left, right)]
            matrix[a, b] = evaluate_trace(param, difference, identity)
    return matrix


def is_positive_semidefinite(
    matrix: npt.NDArray[np.complex128], tolerance: float = PSD_TOLERANCE
) -> bool:
    """Hermitian with no eigenvalue below -tolerance."""
    if not np.allclose(matrix, matrix.conj().T, atol=tolerance):
        return False
    return bool(np.linalg.eigvalsh(matrix).min() >= -tolerance)
