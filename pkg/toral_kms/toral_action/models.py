"""Rational points of the torus R^d/Z^d."""

from collections.abc import Sequence
from fractions import Fraction
from math import gcd, lcm

from pydantic import BaseModel, ConfigDict, Field, model_validator


class RationalTorusPoint(BaseModel):
    """Point (n_1/q, ..., n_d/q) mod 1 stored with its exact denominator.

    The numerators lie in [0, q) and share no common factor with q, so every rational point has
    exactly one representation.
    """

    model_config = ConfigDict(frozen=True)

    numerators: tuple[int, ...]
    denominator: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_canonical(self) -> "RationalTorusPoint":
        if any(not 0 <= n < self.denominator for n in self.numerators):
            raise ValueError(f"numerators must lie in [0, {self.denominator})")
        if gcd(self.denominator, *self.numerators) != 1:
            raise ValueError("denominator is not exact; use RationalTorusPoint.reduced")
        return self

    @classmethod
    def reduced(cls, numerators: Sequence[int], denominator: int) -> "RationalTorusPoint":
        """Canonical point for arbitrary integer numerators over ``denominator``."""
        if denominator < 1:
            raise ValueError("denominator must be positive")
        residues = [n % denominator for n in numerators]
        common = gcd(denominator, *residues)
        return cls(
            numerators=tuple(n // common for n in residues), denominator=denominator // common
        )

    @classmethod
    def from_fractions(cls, coordinates: Sequence[Fraction | int]) -> "RationalTorusPoint":
        values = [Fraction(c) for c in coordinates]
        denominator = lcm(*(v.denominator for v in values)) if values else 1
        return cls.reduced([int(v * denominator) for v in values], denominator)

    @classmethod
    def zero(cls, dimension: int) -> "RationalTorusPoint":
        return cls(numerators=(0,) * dimension, denominator=1)

    @property
    def dimension(self) -> int:
        return len(self.numerators)

    @property
    def is_zero(self) -> bool:
        return self.denominator == 1

    def coordinates(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.denominator) for n in self.numerators)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coordinates()) + ")"
