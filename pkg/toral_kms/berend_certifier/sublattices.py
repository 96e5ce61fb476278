"""Integer vectors avoiding finitely many proper sublattices."""

from collections.abc import Iterator, Sequence

from toral_kms.exact_core import integer_rank
from toral_kms.exceptions import ValidationFailure


def _candidates(dimension: int) -> Iterator[tuple[int, ...]]:
    """All-ones vector, then points (1, t, t², ...) of the moment curve.

    A proper subspace meets the moment curve in fewer than ``dimension`` points, so finitely many
    proper subspaces cannot contain all candidates.
    """
    yield (1,) * dimension
    t = 2
    while True:
        yield tuple(t**k for k in range(dimension))
        t += 1


def avoid_sublattices(
    sublattices: Sequence[Sequence[Sequence[int]]], dimension: int
) -> tuple[int, ...]:
    """Vector m ∈ Z^d outside the real span of every listed sublattice.

    Args:
        sublattices: Each sublattice as a list of spanning vectors
        dimension: Ambient dimension d

    Returns:
        m with rank(F + Zm) = rank(F) + 1 for every F

    Raises:
        ValidationFailure: if some sublattice has full rank
    """
    ranks = []
    for position, vectors in enumerate(sublattices):
        if any(len(vector) != dimension for vector in vectors):
            raise ValidationFailure(f"sublattice {position} has vectors outside Z^{dimension}")
        rank = integer_rank(vectors)
        if rank >= dimension:
            raise ValidationFailure(f"sublattice {position} has full rank {rank}")
        ranks.append(rank)
    for candidate in _candidates(dimension):
        if all(
            integer_rank([*vectors, candidate]) == rank + 1
            for vectors, rank in zip(sublattices, ranks)
        ):
            return candidate
    raise AssertionError("the moment curve leaves every proper subspace")
