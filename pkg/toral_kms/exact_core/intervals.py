"""Certified interval arithmetic over exact dyadic endpoints.

Endpoints are ``Fraction``s, so sums and products are exact; ``round_outward`` snaps them to a
dyadic grid, always moving the lower end down and the upper end up. Transcendental functions
go through mpmath at extra working precision and are then widened by an explicit margin.
"""

import math
from fractions import Fraction

from mpmath import mp, mpf
from pydantic import BaseModel, ConfigDict, Field, model_validator

from toral_kms.exceptions import UndeterminedError


def dyadic_floor(value: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(value * scale), scale)


def dyadic_ceil(value: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(value * scale), scale)


def precision_to_bits(precision: Fraction) -> int:
    """Number of binary digits needed for a box radius of at most ``precision``."""
    if precision <= 0:
        raise ValueError("precision must be positive")
    return max(1, math.ceil(-math.log2(precision)) + 1)


def mpf_to_fraction(value: mpf) -> Fraction:
    mantissa, exponent = value.man_exp
    mantissa, exponent = int(mantissa), int(exponent)
    if exponent >= 0:
        return Fraction(mantissa * (1 << exponent))
    return Fraction(mantissa, 1 << -exponent)


class RealInterval(BaseModel):
    """Closed real interval ``[lower, upper]``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: Fraction
    upper: Fraction

    @model_validator(mode="after")
    def _ordered(self) -> "RealInterval":
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")
        return self

    @classmethod
    def point(cls, value: Fraction | int) -> "RealInterval":
        return cls(lower=Fraction(value), upper=Fraction(value))

    @property
    def center(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def radius(self) -> Fraction:
        return (self.upper - self.lower) / 2

    def contains(self, value: Fraction | int) -> bool:
        return self.lower <= value <= self.upper

    def contains_zero(self) -> bool:
        return self.contains(0)

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def is_subset_of(self, other: "RealInterval") -> bool:
        return other.lower <= self.lower and self.upper <= other.upper

    def __add__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(lower=self.lower + other.lower, upper=self.upper + other.upper)

    def __sub__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(lower=self.lower - other.upper, upper=self.upper - other.lower)

    def __neg__(self) -> "RealInterval":
        return RealInterval(lower=-self.upper, upper=-self.lower)

    def __mul__(self, other: "RealInterval") -> "RealInterval":
        products = (
            self.lower * other.lower,
            self.lower * other.upper,
            self.upper * other.lower,
            self.upper * other.upper,
        )
        return RealInterval(lower=min(products), upper=max(products))

    def scale(self, factor: Fraction | int) -> "RealInterval":
        return self * RealInterval.point(factor)

    def square(self) -> "RealInterval":
        if self.contains_zero():
            return RealInterval(lower=Fraction(0), upper=max(self.lower**2, self.upper**2))
        low, high = sorted((self.lower**2, self.upper**2))
        return RealInterval(lower=low, upper=high)

    def round_outward(self, bits: int) -> "RealInterval":
        return RealInterval(
            lower=dyadic_floor(self.lower, bits), upper=dyadic_ceil(self.upper, bits)
        )

    def __str__(self) -> str:
        return f"[{float(self.lower):.12g}, {float(self.upper):.12g}]"


def interval_log(value: RealInterval, bits: int) -> RealInterval:
    """Certified enclosure of ``log`` over a positive interval.

    Raises:
        UndeterminedError: if the interval reaches zero or below
    """
    if value.lower <= 0:
        raise UndeterminedError(f"logarithm of an interval not bounded away from zero: {value}")
    with mp.workprec(bits + 32):
        low = mp.log(mpf(value.lower.numerator) / value.lower.denominator)
        high = mp.log(mpf(value.upper.numerator) / value.upper.denominator)
    low_q, high_q = mpf_to_fraction(low), mpf_to_fraction(high)
    margin = Fraction(1, 1 << bits) * (1 + max(abs(low_q), abs(high_q)))
    return RealInterval(lower=low_q - margin, upper=high_q + margin).round_outward(bits + 8)


class CertifiedInterval(BaseModel):
    """Certified enclosure of a real or complex number.

    Real values carry ``imag=None``; complex values are axis-parallel boxes.
    """

    model_config = ConfigDict(frozen=True)

    real: RealInterval = Field(description="Enclosure of the real part")
    imag: RealInterval | None = Field(default=None, description="Enclosure of the imaginary part")

    @classmethod
    def from_real(cls, lower: Fraction | int, upper: Fraction | int) -> "CertifiedInterval":
        return cls(real=RealInterval(lower=Fraction(lower), upper=Fraction(upper)))

    @classmethod
    def from_box(
        cls, real_lower: Fraction, imag_lower: Fraction, real_upper: Fraction, imag_upper: Fraction
    ) -> "CertifiedInterval":
        return cls(
            real=RealInterval(lower=real_lower, upper=real_upper),
            imag=RealInterval(lower=imag_lower, upper=imag_upper),
        )

    @classmethod
    def exact(cls, value: Fraction | int) -> "CertifiedInterval":
        return cls(real=RealInterval.point(value))

    @property
    def is_complex(self) -> bool:
        return self.imag is not None

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return self.real.center, self.imag.center if self.imag else Fraction(0)

    @property
    def radius(self) -> Fraction:
        if self.imag is None:
            return self.real.radius
        return max(self.real.radius, self.imag.radius)

    def _imag_or_zero(self) -> RealInterval:
        return self.imag if self.imag is not None else RealInterval.point(0)

    def _build(self, real: RealInterval, imag: RealInterval | None) -> "CertifiedInterval":
        return CertifiedInterval(real=real, imag=imag)

    def __add__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        if self.imag is None and other.imag is None:
            return self._build(self.real + other.real, None)
        return self._build(self.real + other.real, self._imag_or_zero() + other._imag_or_zero())

    def __sub__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return self + (-other)

    def __neg__(self) -> "CertifiedInterval":
        return self._build(-self.real, -self.imag if self.imag is not None else None)

    def __mul__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        if self.imag is None and other.imag is None:
            return self._build(self.real * other.real, None)
        a, b = self.real, self._imag_or_zero()
        c, d = other.real, other._imag_or_zero()
        return self._build(a * c - b * d, a * d + b * c)

    def conjugate(self) -> "CertifiedInterval":
        if self.imag is None:
            return self
        return self._build(self.real, -self.imag)

    def abs_squared(self) -> RealInterval:
        """Enclosure of ``|z|²``."""
        if self.imag is None:
            return self.real.square()
        return self.real.square() + self.imag.square()

    def log_abs(self, bits: int) -> RealInterval:
        """Enclosure of ``log|z|`` computed as half the log of ``|z|²``."""
        return interval_log(self.abs_squared(), bits).scale(Fraction(1, 2)).round_outward(bits + 8)

    def contains(self, real: Fraction | int, imag: Fraction | int = 0) -> bool:
        return self.real.contains(real) and self._imag_or_zero().contains(imag)

    def contains_zero(self) -> bool:
        return self.contains(0, 0)

    def overlaps(self, other: "CertifiedInterval") -> bool:
        return self.real.overlaps(other.real) and self._imag_or_zero().overlaps(
            other._imag_or_zero()
        )

    def is_subset_of(self, other: "CertifiedInterval") -> bool:
        return self.real.is_subset_of(other.real) and self._imag_or_zero().is_subset_of(
            other._imag_or_zero()
        )

    def round_outward(self, bits: int) -> "CertifiedInterval":
        return self._build(
            self.real.round_outward(bits),
            self.imag.round_outward(bits) if self.imag is not None else None,
        )

    def __str__(self) -> str:
        if self.imag is None:
            return str(self.real)
        return f"{self.real} + i{self.imag}"
