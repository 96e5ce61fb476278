"""Reduction of ρ_J modulo q: the finite group Ḡ and its relation lattice."""

from collections import deque
from collections.abc import Sequence

from ai_pipeline_core import get_pipeline_logger

from toral_kms.exact_core import IntegerMatrix, lattice_index, row_lattice_basis
from toral_kms.exceptions import InternalConsistencyError, ValidationFailure
from toral_kms.toral_action import ToralRep

from .models import ExponentVector, FiniteGroupModQ, GroupElementModQ

logger = get_pipeline_logger(__name__)

ModMatrix = tuple[tuple[int, ...], ...]


def multiply_mod(left: ModMatrix, right: ModMatrix, q: int) -> ModMatrix:
    columns = tuple(zip(*right))
    return tuple(
        tuple(sum(a * b for a, b in zip(row, column)) % q for column in columns) for row in left
    )


def apply_mod(matrix: ModMatrix, vector: Sequence[int], q: int) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, vector)) % q for row in matrix)


def generator_matrices_mod(rep: ToralRep, q: int) -> list[ModMatrix]:
    """Free generators followed by the torsion generator, reduced mod q."""
    return [matrix.reduce_mod(q) for matrix in rep.generator_matrices] + [
        rep.torsion_matrix.reduce_mod(q)
    ]


def reduce_group_mod_q(rep: ToralRep, q: int) -> FiniteGroupModQ:
    """Enumerate Ḡ = ρ_J(units) mod q by breadth-first search from the identity.

    Every newly reached matrix keeps the exponent vector of the path that found it. Whenever a
    step lands on a matrix that is already labelled, the difference of the two labels acts
    trivially; these differences generate the relation lattice.

    Raises:
        ValidationFailure: if q < 1
        InternalConsistencyError: if the relation lattice index differs from the group order
    """
    if q < 1:
        raise ValidationFailure(f"modulus must be at least 1, got {q}")
    dimension = rep.rank + 1
    generators = generator_matrices_mod(rep, q)
    steps = [tuple(int(i == k) for i in range(dimension)) for k in range(dimension)]

    identity = IntegerMatrix.identity(rep.dimension).reduce_mod(q)
    labels: dict[ModMatrix, ExponentVector] = {identity: (0,) * dimension}
    order: list[ModMatrix] = [identity]
    relations: list[ExponentVector] = [(0,) * rep.rank + (rep.torsion_order,)]
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        label = labels[current]
        for generator, step in zip(generators, steps):
            product = multiply_mod(current, generator, q)
            candidate = tuple(a + b for a, b in zip(label, step))
            known = labels.get(product)
            if known is None:
                labels[product] = candidate
                order.append(product)
                queue.append(product)
            elif known != candidate:
                relations.append(tuple(a - b for a, b in zip(candidate, known)))

    lattice = row_lattice_basis(relations, dimension)
    if lattice_index(lattice, dimension) != len(order):
        raise InternalConsistencyError(
            f"relation lattice mod {q} has index {lattice_index(lattice, dimension)} "
            f"but the group has {len(order)} elements"
        )
    logger.debug(f"ρ({rep.ideal.label}) mod {q} has order {len(order)}")
    return FiniteGroupModQ(
        q=q,
        ideal_label=rep.ideal.label,
        rank=rep.rank,
        torsion_order=rep.torsion_order,
        generators=tuple(IntegerMatrix.from_rows(matrix) for matrix in generators),
        elements=tuple(
            GroupElementModQ(matrix=IntegerMatrix.from_rows(matrix), label=labels[matrix])
            for matrix in order
        ),
        relation_lattice=lattice,
    )


def word_matrix_mod(group: FiniteGroupModQ, vector: ExponentVector) -> ModMatrix:
    """Matrix mod q of the unit with exponent vector ``vector``.

    Exponents are reduced mod |Ḡ|, which every generator order divides.
    """
    if len(vector) != group.lattice_dimension:
        raise ValidationFailure(
            f"expected an exponent vector of length {group.lattice_dimension}, got {len(vector)}"
        )
    size = len(group.generators[0].rows)
    result = IntegerMatrix.identity(size).reduce_mod(group.q)
    for exponent, generator in zip(vector, group.generators):
        base = generator.rows
        remaining = exponent % group.order
        while remaining:
            if remaining & 1:
                result = multiply_mod(result, base, group.q)
            base = multiply_mod(base, base, group.q)
            remaining >>= 1
    return result
