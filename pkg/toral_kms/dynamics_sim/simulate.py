"""Orbit sampling on the dual torus and Weyl sums of the samples."""

from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import numpy.typing as npt
from ai_pipeline_core import get_pipeline_logger

from toral_kms.exact_core import IntegerMatrix, integer_kernel
from toral_kms.exceptions import ValidationFailure
from toral_kms.orbit_isotropy.groups import ModMatrix, apply_mod
from toral_kms.toral_action import RationalTorusPoint, ToralRep

from .models import (
    DEFAULT_START_DENOMINATOR,
    EquidistReport,
    SimConfig,
    SimScheme,
    WeylMagnitude,
)

logger = get_pipeline_logger(__name__)

Samples = npt.NDArray[np.float64]


def default_frequencies(dimension: int) -> tuple[tuple[int, ...], ...]:
    """±e_i for every coordinate, then e_1 + e_2 when d ≥ 2."""
    frequencies: list[tuple[int, ...]] = []
    for index in range(dimension):
        unit = tuple(int(i == index) for i in range(dimension))
        frequencies.extend([unit, tuple(-e for e in unit)])
    if dimension >= 2:
        frequencies.append((1, 1) + (0,) * (dimension - 2))
    return tuple(frequencies)


def random_start(
    dimension: int, seed: int, denominator: int = DEFAULT_START_DENOMINATOR
) -> RationalTorusPoint:
    rng = np.random.default_rng(seed)
    numerators = rng.integers(0, denominator, size=dimension)
    return RationalTorusPoint.reduced([int(n) for n in numerators], denominator)


def invariant_subtorus_start(
    sublattice: Sequence[Sequence[int]], denominator: int, seed: int
) -> RationalTorusPoint:
    """Pseudo-random rational point x with ⟨ℓ, x⟩ ∈ Z for every ℓ in ``sublattice``.

    The point lies on the connected annihilator of the sublattice: its numerators are an integer
    combination of the kernel vectors of the sublattice rows.

    Raises:
        ValidationFailure: if the sublattice has full rank, so the annihilator is finite
    """
    kernel = integer_kernel(IntegerMatrix.from_rows(sublattice))
    if not kernel:
        raise ValidationFailure("sublattice has full rank; its annihilator has no subtorus")
    rng = np.random.default_rng(seed)
    coefficients = [int(c) for c in rng.integers(0, denominator, size=len(kernel))]
    numerators = [
        sum(c * vector[i] for c, vector in zip(coefficients, kernel)) % denominator
        for i in range(len(kernel[0]))
    ]
    return RationalTorusPoint.reduced(numerators, denominator)


def _step_matrices(rep: ToralRep) -> list[IntegerMatrix]:
    """Free generators and their inverses, then t and t^-1 (t alone when t^2 = 1).

    Ball enumeration indexes the free steps as 2i and 2i + 1.
    """
    matrices: list[IntegerMatrix] = []
    for forward, backward in zip(rep.generator_matrices, rep.inverse_matrices):
        matrices.extend([forward, backward])
    matrices.append(rep.torsion_matrix)
    if rep.torsion_order > 2:
        matrices.append(rep.torsion_matrix.power(rep.torsion_order - 1))
    return matrices


def _ball_words(rank: int, radius: int) -> Iterator[tuple[int, ...]]:
    """Free exponent vectors with |e|₁ ≤ radius, each after its parent one step closer to 0."""
    layer: list[tuple[int, ...]] = [(0,) * rank]
    seen = set(layer)
    yield layer[0]
    for _ in range(radius):
        following: list[tuple[int, ...]] = []
        for word in layer:
            for index in range(rank):
                for sign in (1, -1):
                    child = tuple(e + sign * int(i == index) for i, e in enumerate(word))
                    if child not in seen and sum(map(abs, child)) == sum(map(abs, word)) + 1:
                        seen.add(child)
                        following.append(child)
                        yield child
        layer = following


def _parent(word: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """The word one step closer to 0 and the index of the step matrix leading back to ``word``."""
    index = next(i for i, e in enumerate(word) if e)
    sign = 1 if word[index] > 0 else -1
    parent = tuple(e - sign * int(i == index) for i, e in enumerate(word))
    return parent, 2 * index + (0 if sign > 0 else 1)


class _ExactState:
    def __init__(self, rep: ToralRep, point: RationalTorusPoint):
        self.q = point.denominator
        self.matrices: list[ModMatrix] = [m.reduce_mod(self.q) for m in _step_matrices(rep)]
        self.torsion: ModMatrix = rep.torsion_matrix.reduce_mod(self.q)

    def step(self, vector: tuple[int, ...], matrix: ModMatrix) -> tuple[int, ...]:
        return apply_mod(matrix, vector, self.q)

    def as_floats(self, vectors: Sequence[tuple[int, ...]]) -> Samples:
        return np.array(vectors, dtype=np.int64).astype(np.float64) / self.q


def _float_matrices(rep: ToralRep) -> tuple[list[Samples], Samples]:
    steps = [np.array(m.rows, dtype=np.float64) for m in _step_matrices(rep)]
    return steps, np.array(rep.torsion_matrix.rows, dtype=np.float64)


def _walk_choices(config: SimConfig, count: int) -> npt.NDArray[np.int64]:
    rng = np.random.default_rng(config.seed)
    return rng.integers(0, count, size=config.steps)


def _simulate_exact(rep: ToralRep, config: SimConfig, point: RationalTorusPoint) -> Samples:
    state = _ExactState(rep, point)
    vectors: list[tuple[int, ...]] = []
    if config.scheme == "random_walk":
        current = point.numerators
        for choice in _walk_choices(config, len(state.matrices)):
            current = state.step(current, state.matrices[int(choice)])
            vectors.append(current)
        return state.as_floats(vectors)

    points: dict[tuple[int, ...], tuple[int, ...]] = {}
    for word in _ball_words(rep.rank, config.radius or 0):
        if any(word):
            parent, index = _parent(word)
            points[word] = state.step(points[parent], state.matrices[index])
        else:
            points[word] = point.numerators
        rotated = points[word]
        for _ in range(rep.torsion_order):
            vectors.append(rotated)
            rotated = state.step(rotated, state.torsion)
    return state.as_floats(vectors)


def _simulate_float(rep: ToralRep, config: SimConfig, start: Samples) -> Samples:
    matrices, torsion = _float_matrices(rep)
    if config.scheme == "random_walk":
        choices = _walk_choices(config, len(matrices))
        samples = np.empty((config.steps, rep.dimension), dtype=np.float64)
        current = start % 1.0
        for t, choice in enumerate(choices):
            current = (matrices[int(choice)] @ current) % 1.0
            samples[t] = current
        return samples

    points: dict[tuple[int, ...], Samples] = {}
    rows: list[Samples] = []
    for word in _ball_words(rep.rank, config.radius or 0):
        if any(word):
            parent, index = _parent(word)
            points[word] = (matrices[index] @ points[parent]) % 1.0
        else:
            points[word] = start % 1.0
        rotated = points[word]
        for _ in range(rep.torsion_order):
            rows.append(rotated)
            rotated = (torsion @ rotated) % 1.0
    return np.array(rows, dtype=np.float64)


def simulate_orbit(rep: ToralRep, config: SimConfig) -> Samples:
    """Sample the orbit of the start point under ρ_J.

    ``random_walk`` left-multiplies by a uniformly chosen free generator, torsion generator or
    inverse at each of the N steps and records the N visited points. ``ball_enumeration``
    records ρ(g)·x₀ for every word g with |exponents|₁ ≤ R and every torsion power, one sample
    per word. Float starts are reduced mod 1 after every step; rational starts are simulated
    exactly mod q and converted to floats at the end.

    Args:
        rep: Toral representation
        config: Sampling scheme, start and seed

    Returns:
        Array of shape (samples, d) with entries in [0, 1)

    Raises:
        ValidationFailure: if the start has the wrong dimension
    """
    if config.start is not None:
        if len(config.start) != rep.dimension:
            raise ValidationFailure(
                f"start has {len(config.start)} coordinates but the torus has dimension "
                f"{rep.dimension}"
            )
        samples = _simulate_float(rep, config, np.array(config.start, dtype=np.float64))
    else:
        point = config.start_point or random_start(rep.dimension, config.seed)
        if point.dimension != rep.dimension:
            raise ValidationFailure(
                f"start point {point} does not lie on the {rep.dimension}-torus"
            )
        samples = _simulate_exact(rep, config, point)
    logger.debug(f"{config.scheme} on {rep.ideal.label}: {len(samples)} samples")
    return samples


def weyl_sums(
    samples: Samples,
    frequencies: Sequence[Sequence[int]],
    scheme: SimScheme = "random_walk",
    seed: int | None = None,
) -> EquidistReport:
    """|S(k)| for each frequency k in double precision.

    Raises:
        ValidationFailure: if there are no samples or a frequency has the wrong length
    """
    if len(samples) == 0:
        raise ValidationFailure("Weyl sums need at least one sample")
    dimension = samples.shape[1]
    entries: list[WeylMagnitude] = []
    for k in frequencies:
        if len(k) != dimension:
            raise ValidationFailure(f"frequency {list(k)} does not have {dimension} entries")
        phases = samples @ np.array(k, dtype=np.float64)
        value = np.exp(2j * np.pi * phases).mean()
        entries.append(WeylMagnitude(frequency=tuple(k), magnitude=min(1.0, float(abs(value)))))
    return EquidistReport(
        scheme=scheme,
        sample_count=len(samples),
        seed=seed,
        magnitudes=tuple(entries),
    )


def equidistribution(rep: ToralRep, config: SimConfig) -> tuple[Samples, EquidistReport]:
    """Simulate, write the CSV when an output path is set, and compute the Weyl sums."""
    samples = simulate_orbit(rep, config)
    if config.output is not None:
        write_samples_csv(samples, config.output)
    frequencies = config.frequencies or default_frequencies(rep.dimension)
    seed = config.seed if config.scheme == "random_walk" else None
    report = weyl_sums(samples, frequencies, config.scheme, seed)
    logger.info(
        f"{config.scheme} with {report.sample_count} samples: max |S(k)| = "
        f"{report.max_magnitude:.4f}"
    )
    return samples, report


def equidistribution_trials(
    rep: ToralRep, config: SimConfig, seeds: Sequence[int], threads: int = 1
) -> list[EquidistReport]:
    """Independent walks, one per seed, in the order of ``seeds``."""

    def run(seed: int) -> EquidistReport:
        return equidistribution(rep, config.model_copy(update={"seed": seed, "output": None}))[1]

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(run, seeds))


def write_samples_csv(samples: Samples, path: Path) -> None:
    """Columns t, x1, …, xd with floats formatted %.12g."""
    dimension = samples.shape[1]
    header = ",".join(["t", *(f"x{i + 1}" for i in range(dimension))])
    t = np.arange(1, len(samples) + 1, dtype=np.float64)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        np.column_stack([t, samples]),
        fmt="%.12g",
        delimiter=",",
        header=header,
        comments="",
    )
