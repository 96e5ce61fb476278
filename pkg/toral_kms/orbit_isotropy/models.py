"""Finite quotients of the unit group, finite orbits, isotropy lattices and Prim points."""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from toral_kms.exact_core import IntegerMatrix
from toral_kms.toral_action import RationalTorusPoint

ExponentVector = tuple[int, ...]


class GroupElementModQ(BaseModel):
    """A matrix of ρ_J mod q with one exponent vector that maps to it."""

    model_config = ConfigDict(frozen=True)

    matrix: IntegerMatrix
    label: ExponentVector = Field(description="(free exponents..., torsion exponent)")


class FiniteGroupModQ(BaseModel):
    """Image Ḡ of the unit group in GL_d(Z/q) together with its relation lattice.

    The relation lattice is the set of exponent vectors in Z^n × Z that act trivially mod q, in
    reduced Hermite form; its index equals the number of elements.
    """

    model_config = ConfigDict(frozen=True)

    q: int = Field(ge=1)
    ideal_label: str
    rank: int = Field(ge=0)
    torsion_order: int = Field(ge=1)
    generators: tuple[IntegerMatrix, ...] = Field(
        description="Free generators then the torsion generator, reduced mod q"
    )
    elements: tuple[GroupElementModQ, ...]
    relation_lattice: tuple[ExponentVector, ...]

    _lookup: dict[IntegerMatrix, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context: object) -> None:
        self._lookup.update({item.matrix: index for index, item in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def lattice_dimension(self) -> int:
        return self.rank + 1

    def label_of(self, matrix: IntegerMatrix) -> ExponentVector | None:
        index = self._lookup.get(matrix)
        return None if index is None else self.elements[index].label


class FiniteOrbit(BaseModel):
    """Finite orbit of a rational torus point, points sorted by numerators."""

    model_config = ConfigDict(frozen=True)

    q: int = Field(ge=1, description="Exact denominator shared by every point")
    ideal_label: str
    base: RationalTorusPoint
    points: tuple[RationalTorusPoint, ...]

    @model_validator(mode="after")
    def _check_points(self) -> "FiniteOrbit":
        if self.base not in self.points:
            raise ValueError(f"base point {self.base} is not in the orbit")
        if any(point.denominator != self.q for point in self.points):
            raise ValueError(f"every orbit point must have exact denominator {self.q}")
        return self

    @property
    def size(self) -> int:
        return len(self.points)

    def same_points(self, other: "FiniteOrbit") -> bool:
        return self.ideal_label == other.ideal_label and self.points == other.points

    def __str__(self) -> str:
        return f"orbit of {self.base} ({self.size} points, q={self.q})"


class IsotropySubgroup(BaseModel):
    """Preimage H ⊆ Z^n × Z_w of the stabilizer of an orbit point.

    ``lattice`` spans H together with the torsion relation (0, ..., 0, w); it always has full
    rank n + 1. As an abstract group H ≅ Z/torsion_order × Z^n, and ``character_coordinates`` is
    the unimodular change of coordinates y = x·V that splits a lattice coordinate vector x into
    its torsion coordinate y_1 and free coordinates y_2, ..., y_(n+1).
    """

    model_config = ConfigDict(frozen=True)

    q: int
    ideal_label: str
    base: RationalTorusPoint
    lattice: tuple[ExponentVector, ...]
    index: int = Field(ge=1, description="[G : H]")
    quotient_invariants: tuple[int, ...] = Field(description="Invariant factors of G/H")
    stabilizer_order: int = Field(ge=1, description="|Ḡ_x| inside the finite quotient")
    free_rank: int
    unit_torsion_order: int = Field(ge=1, description="w = |W|")
    torsion_order: int = Field(ge=1, description="|V|, the order of H ∩ W")
    character_coordinates: tuple[ExponentVector, ...]

    @property
    def torsion_generator(self) -> ExponentVector:
        """Exponent vector of a generator of V = H ∩ W."""
        return (0,) * self.free_rank + (self.unit_torsion_order // self.torsion_order,)


class CharacterGroupDescriptor(BaseModel):
    """Ĥ ≅ V̂ × T^n."""

    model_config = ConfigDict(frozen=True)

    torsion_invariants: tuple[int, ...]
    torus_rank: int

    @property
    def torsion_size(self) -> int:
        size = 1
        for factor in self.torsion_invariants:
            size *= factor
        return size

    def __str__(self) -> str:
        torsion = " × ".join(f"Z/{f}" for f in self.torsion_invariants) or "1"
        return f"{torsion} × T^{self.torus_rank}"


class CharacterValue(BaseModel):
    """Character of H ≅ Z/g × Z^n: a torsion index in Z/g and n angles in [0, 1)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    torsion_index: int = Field(default=0, ge=0)
    angles: tuple[Fraction, ...] = ()

    @model_validator(mode="after")
    def _angles_in_unit_interval(self) -> "CharacterValue":
        if any(not 0 <= angle < 1 for angle in self.angles):
            raise ValueError("character angles must lie in [0, 1)")
        return self

    @classmethod
    def trivial(cls, free_rank: int) -> "CharacterValue":
        return cls(torsion_index=0, angles=(Fraction(0),) * free_rank)

    @property
    def is_trivial(self) -> bool:
        return self.torsion_index == 0 and not any(self.angles)


class QuasiOrbitSpace(BaseModel):
    """Finite quasi-orbits up to a denominator bound, plus the infinite quasi-orbit ω∞."""

    model_config = ConfigDict(frozen=True)

    ideal_label: str
    qmax: int
    finite_quasi_orbits: tuple[FiniteOrbit, ...]
    omega_infinity: bool = Field(description="Present exactly when the action is ID")


class PrimPoint(BaseModel):
    """A point ([x], γ) of Prim with γ a character of G_x, or ω∞ when ``quasi_orbit`` is None."""

    model_config = ConfigDict(frozen=True)

    quasi_orbit: FiniteOrbit | None = None
    character: CharacterValue | None = None

    @classmethod
    def omega(cls) -> "PrimPoint":
        return cls()

    @property
    def is_omega(self) -> bool:
        return self.quasi_orbit is None


class PrimStratum(BaseModel):
    """One piece {[x]} × Ĝ_x of Prim."""

    model_config = ConfigDict(frozen=True)

    q: int | None = Field(description="Denominator of the quasi-orbit; None for ω∞")
    base: RationalTorusPoint | None
    size: int | None = Field(description="Number of points; None for the infinite quasi-orbit")
    characters: CharacterGroupDescriptor


class DenominatorStatistics(BaseModel):
    """Summary of the orbits of one exact denominator."""

    model_config = ConfigDict(frozen=True)

    q: int
    orbit_count: int
    sizes: tuple[int, ...]
    point_count: int
    isotropy_index_lcm: int


class OrbitRecord(BaseModel):
    """A finite orbit with its isotropy lattice and character group."""

    model_config = ConfigDict(frozen=True)

    orbit: FiniteOrbit
    isotropy: IsotropySubgroup
    characters: CharacterGroupDescriptor
