"""Exact integer matrix types shared by every module."""

from collections.abc import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import ZZ
from sympy.polys.matrices import DM, DomainMatrix


class IntegerMatrix(BaseModel):
    """Dense matrix with arbitrary-precision integer entries, stored row by row."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[tuple[int, ...], ...] = Field(description="Matrix entries, one tuple per row")

    @field_validator("rows")
    @classmethod
    def _check_rectangular(cls, rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("matrix rows must have equal length")
        return rows

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntegerMatrix":
        return cls(rows=tuple(tuple(int(entry) for entry in row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntegerMatrix":
        return cls.from_rows(zip(*columns, strict=True))

    @classmethod
    def identity(cls, size: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)])

    @classmethod
    def scalar(cls, size: int, value: int) -> "IntegerMatrix":
        return cls.from_rows([[value * int(i == j) for j in range(size)] for i in range(size)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(rows=self.columns)

    def to_domain_matrix(self) -> DomainMatrix:
        return DM([list(row) for row in self.rows], ZZ)

    def determinant(self) -> int:
        if not self.is_square:
            raise ValueError(f"determinant of a non-square {self.shape} matrix")
        return int(self.to_domain_matrix().det())

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_columns = other.columns
        return IntegerMatrix(
            rows=tuple(
                tuple(sum(a * b for a, b in zip(row, column)) for column in other_columns)
                for row in self.rows
            )
        )

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Multiply the matrix by an integer column vector."""
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.rows)

    def reduce_mod(self, modulus: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(entry % modulus for entry in row) for row in self.rows)

    def power(self, exponent: int) -> "IntegerMatrix":
        """Non-negative integer power by repeated squaring."""
        if exponent < 0:
            raise ValueError("use an explicit inverse for negative powers")
        result = IntegerMatrix.identity(self.shape[0])
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def is_unimodular(self) -> bool:
        return self.is_square and abs(self.determinant()) == 1

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, row)) + "]" for row in self.rows) + "]"


class HermiteDecomposition(BaseModel):
    """Row-style Hermite normal form ``H = U·M``."""

    model_config = ConfigDict(frozen=True)

    hermite: IntegerMatrix = Field(description="Echelon form H, positive pivots, reduced above")
    transform: IntegerMatrix = Field(description="Unimodular U with H = U·M")
    rank: int = Field(description="Number of nonzero rows of H")


class SNFDecomposition(BaseModel):
    """Smith normal form ``U·M·V = S`` with a divisibility chain on the diagonal."""

    model_config = ConfigDict(frozen=True)

    smith: IntegerMatrix = Field(description="Diagonal matrix S")
    left: IntegerMatrix = Field(description="Unimodular U")
    right: IntegerMatrix = Field(description="Unimodular V")

    @property
    def diagonal(self) -> tuple[int, ...]:
        rows, cols = self.smith.shape
        return tuple(self.smith.rows[i][i] for i in range(min(rows, cols)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries different from 1."""
        return tuple(entry for entry in self.diagonal if entry not in (0, 1))
