"""Simulation settings and the equidistribution report."""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from toral_kms.toral_action import RationalTorusPoint

SimScheme = Literal["ball_enumeration", "random_walk"]

DEFAULT_START_DENOMINATOR = 2**31 - 1
HEURISTIC_NOTE = (
    "Weyl sums of a finite orbit sample indicate equidistribution; they do not certify density "
    "of the orbit closure"
)


class SimConfig(BaseModel):
    """How to sample an orbit and which frequencies to test.

    Without ``start`` or ``start_point`` the walk begins at a pseudo-random rational point with
    denominator ``DEFAULT_START_DENOMINATOR`` drawn from ``seed``.
    """

    model_config = ConfigDict(frozen=True)

    scheme: SimScheme = "random_walk"
    steps: int = Field(default=10_000, gt=0, description="Random walk length N")
    radius: int | None = Field(default=None, gt=0, description="Word-length radius R of the ball")
    seed: int = 0
    start: tuple[float, ...] | None = Field(default=None, description="Float start vector")
    start_point: RationalTorusPoint | None = Field(
        default=None, description="Rational start, simulated in exact modular arithmetic"
    )
    frequencies: tuple[tuple[int, ...], ...] = Field(
        default=(), description="Test frequencies k; empty selects ±e_i and e_1 + e_2"
    )
    output: Path | None = Field(default=None, description="CSV file for the samples")

    @model_validator(mode="after")
    def _check(self) -> "SimConfig":
        if self.scheme == "ball_enumeration" and self.radius is None:
            raise ValueError("ball enumeration needs a radius")
        if self.start is not None and self.start_point is not None:
            raise ValueError("give either a float start or a rational start, not both")
        if any(not any(k) for k in self.frequencies):
            raise ValueError("test frequencies must be nonzero")
        return self


class WeylMagnitude(BaseModel):
    model_config = ConfigDict(frozen=True)

    frequency: tuple[int, ...]
    magnitude: float = Field(ge=0.0, le=1.0)


class EquidistReport(BaseModel):
    """|S(k)| = |(1/N) Σ_t exp(2πi k·x_t)| for every tested frequency."""

    model_config = ConfigDict(frozen=True)

    scheme: SimScheme
    sample_count: int
    seed: int | None = None
    magnitudes: tuple[WeylMagnitude, ...]
    note: str = HEURISTIC_NOTE

    @property
    def max_magnitude(self) -> float:
        return max((entry.magnitude for entry in self.magnitudes), default=0.0)
