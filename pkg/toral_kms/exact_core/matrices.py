"""Integer matrix normal forms, lattice helpers and exact rational solves.

Hermite forms are row-style: ``H = U·M`` is in echelon form, every pivot is positive and the
entries above a pivot lie in ``[0, pivot)``. Lattices are therefore spanned by rows, and two
row lattices are equal exactly when their reduced bases coincide.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction

from sympy import QQ, ZZ, igcdex
from sympy.polys.matrices import DM, DomainMatrix

from .models import HermiteDecomposition, IntegerMatrix, SNFDecomposition
from .polynomials import RationalPolynomial

Rows = list[list[int]]


def _combine_rows(rows: Rows, top: int, other: int, column: int) -> tuple[int, int, int, int]:
    """Unimodular 2×2 step that moves gcd(rows[top][column], rows[other][column]) into top."""
    a, b = rows[top][column], rows[other][column]
    x, y, g = (int(value) for value in igcdex(a, b))
    return x, y, -b // g, a // g


def _apply_row_step(rows: Rows, top: int, other: int, step: tuple[int, int, int, int]) -> None:
    x, y, p, q = step
    upper, lower = rows[top], rows[other]
    rows[top] = [x * s + y * t for s, t in zip(upper, lower)]
    rows[other] = [p * s + q * t for s, t in zip(upper, lower)]


def _echelonize(rows: Rows, transform: Rows | None) -> int:
    """Bring rows into reduced Hermite form in place. Returns the rank."""
    height = len(rows)
    width = len(rows[0]) if rows else 0
    pivot_row = 0
    for column in range(width):
        if pivot_row == height:
            break
        for other in range(pivot_row + 1, height):
            if rows[other][column] == 0:
                continue
            if rows[pivot_row][column] == 0:
                rows[pivot_row], rows[other] = rows[other], rows[pivot_row]
                if transform is not None:
                    transform[pivot_row], transform[other] = transform[other], transform[pivot_row]
                continue
            step = _combine_rows(rows, pivot_row, other, column)
            _apply_row_step(rows, pivot_row, other, step)
            if transform is not None:
                _apply_row_step(transform, pivot_row, other, step)
        pivot = rows[pivot_row][column]
        if pivot == 0:
            continue
        if pivot < 0:
            rows[pivot_row] = [-entry for entry in rows[pivot_row]]
            if transform is not None:
                transform[pivot_row] = [-entry for entry in transform[pivot_row]]
            pivot = -pivot
        for above in range(pivot_row):
            quotient = rows[above][column] // pivot
            if quotient:
                rows[above] = [s - quotient * t for s, t in zip(rows[above], rows[pivot_row])]
                if transform is not None:
                    transform[above] = [
                        s - quotient * t for s, t in zip(transform[above], transform[pivot_row])
                    ]
        pivot_row += 1
    return pivot_row


def hermite_normal_form(matrix: IntegerMatrix) -> HermiteDecomposition:
    """Compute the row-style Hermite normal form together with its unimodular transform.

    Args:
        matrix: Integer matrix of any shape

    Returns:
        Decomposition with ``H = U·M``
    """
    height = matrix.shape[0]
    rows = [list(row) for row in matrix.rows]
    transform = [[int(i == j) for j in range(height)] for i in range(height)]
    rank = _echelonize(rows, transform)
    return HermiteDecomposition(
        hermite=IntegerMatrix.from_rows(rows),
        transform=IntegerMatrix.from_rows(transform),
        rank=rank,
    )


def row_lattice_basis(
    vectors: Iterable[Sequence[int]], dimension: int
) -> tuple[tuple[int, ...], ...]:
    """Reduced Hermite basis of the lattice spanned by ``vectors`` in ``Z^dimension``.

    Vectors are folded in one at a time so the working matrix never grows beyond
    ``dimension + 1`` rows.
    """
    basis: Rows = []
    for vector in vectors:
        if len(vector) != dimension:
            raise ValueError(f"expected vectors of length {dimension}, got {len(vector)}")
        if not any(vector):
            continue
        rows = basis + [list(vector)]
        rank = _echelonize(rows, None)
        basis = rows[:rank]
    return tuple(tuple(row) for row in basis)


def lattice_coordinates(
    basis: Sequence[Sequence[int]], vector: Sequence[int]
) -> tuple[int, ...] | None:
    """Integer coordinates of ``vector`` in an echelon ``basis``, or None for non-members."""
    remainder = list(vector)
    coordinates: list[int] = []
    for row in basis:
        pivot_column = next(index for index, entry in enumerate(row) if entry != 0)
        if any(remainder[index] != 0 for index in range(pivot_column)):
            return None
        quotient, residue = divmod(remainder[pivot_column], row[pivot_column])
        if residue:
            return None
        coordinates.append(quotient)
        remainder = [s - quotient * t for s, t in zip(remainder, row)]
    if any(remainder):
        return None
    return tuple(coordinates)


def lattice_contains(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    return lattice_coordinates(basis, vector) is not None


def lattice_index(basis: Sequence[Sequence[int]], dimension: int) -> int:
    """Index of a full-rank echelon lattice in ``Z^dimension`` (product of pivots)."""
    if len(basis) != dimension:
        raise ValueError(f"lattice has rank {len(basis)} < {dimension}; index is infinite")
    index = 1
    for position, row in enumerate(basis):
        index *= row[position]
    return abs(index)


def integer_kernel(matrix: IntegerMatrix) -> tuple[tuple[int, ...], ...]:
    """Basis of the saturated lattice ``{y ∈ Z^n : M·y = 0}``."""
    decomposition = hermite_normal_form(matrix.transpose())
    rank = decomposition.rank
    return decomposition.transform.rows[rank:]


def _smith_step_rows(matrix: Rows, left: Rows, top: int, other: int) -> None:
    step = _combine_rows(matrix, top, other, top)
    _apply_row_step(matrix, top, other, step)
    _apply_row_step(left, top, other, step)


def _smith_step_columns(matrix: Rows, right: Rows, left_col: int, other: int) -> None:
    a, b = matrix[left_col][left_col], matrix[left_col][other]
    x, y, g = (int(value) for value in igcdex(a, b))
    p, q = -b // g, a // g
    for target in (matrix, right):
        for row in target:
            s, t = row[left_col], row[other]
            row[left_col], row[other] = x * s + y * t, p * s + q * t


def smith_normal_form(matrix: IntegerMatrix) -> SNFDecomposition:
    """Smith normal form with unimodular transforms, ``U·M·V = S``.

    The diagonal satisfies ``d1 | d2 | ...`` and every entry is non-negative.
    """
    height, width = matrix.shape
    work = [list(row) for row in matrix.rows]
    left = [[int(i == j) for j in range(height)] for i in range(height)]
    right = [[int(i == j) for j in range(width)] for i in range(width)]

    for t in range(min(height, width)):
        candidates = [
            (abs(work[i][j]), i, j)
            for i in range(t, height)
            for j in range(t, width)
            if work[i][j] != 0
        ]
        if not candidates:
            break
        _, i, j = min(candidates)
        work[t], work[i] = work[i], work[t]
        left[t], left[i] = left[i], left[t]
        for target in (work, right):
            for row in target:
                row[t], row[j] = row[j], row[t]

        while True:
            for i in range(t + 1, height):
                if work[i][t] != 0:
                    _smith_step_rows(work, left, t, i)
            for j in range(t + 1, width):
                if work[t][j] != 0:
                    _smith_step_columns(work, right, t, j)
            if any(work[i][t] != 0 for i in range(t + 1, height)):
                continue
            pivot = work[t][t]
            offender = next(
                (
                    i
                    for i in range(t + 1, height)
                    for j in range(t + 1, width)
                    if work[i][j] % pivot != 0
                ),
                None,
            )
            if offender is None:
                break
            work[t] = [s + u for s, u in zip(work[t], work[offender])]
            left[t] = [s + u for s, u in zip(left[t], left[offender])]

        if work[t][t] < 0:
            work[t] = [-entry for entry in work[t]]
            left[t] = [-entry for entry in left[t]]

    return SNFDecomposition(
        smith=IntegerMatrix.from_rows(work),
        left=IntegerMatrix.from_rows(left),
        right=IntegerMatrix.from_rows(right),
    )


def charpoly(matrix: IntegerMatrix) -> RationalPolynomial:
    """Characteristic polynomial ``det(x·I − M)``, monic with integer coefficients."""
    if not matrix.is_square:
        raise ValueError(f"characteristic polynomial of a non-square {matrix.shape} matrix")
    high_to_low = [int(c) for c in matrix.to_domain_matrix().charpoly()]
    return RationalPolynomial.from_integers(list(reversed(high_to_low)))


def _to_qq(rows: Sequence[Sequence[Fraction | int]]) -> DomainMatrix:
    return DM([[(Fraction(e).numerator, Fraction(e).denominator) for e in row] for row in rows], QQ)


def _from_qq(matrix: DomainMatrix) -> list[list[Fraction]]:
    return [
        [Fraction(int(entry.numerator), int(entry.denominator)) for entry in row]
        for row in matrix.to_list()
    ]


def rational_inverse(rows: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """Inverse of a non-singular rational matrix."""
    return _from_qq(_to_qq(rows).inv())


def rational_product(
    left: Sequence[Sequence[Fraction | int]], right: Sequence[Sequence[Fraction | int]]
) -> list[list[Fraction]]:
    return _from_qq(_to_qq(left) * _to_qq(right))


def rational_determinant(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    if not rows:
        return Fraction(1)
    value = _to_qq(rows).det()
    return Fraction(int(value.numerator), int(value.denominator))


def rational_nullspace(rows: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """Basis vectors of ``{x : A·x = 0}`` over the rationals."""
    return _from_qq(_to_qq(rows).nullspace())


def mat_vec(
    rows: Sequence[Sequence[Fraction | int]], vector: Sequence[Fraction | int]
) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vector)), Fraction(0)) for row in rows]


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return DM([list(row) for row in rows], ZZ).rank()
