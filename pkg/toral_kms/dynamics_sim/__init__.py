"""Orbit simulation on the dual torus with Weyl-sum equidistribution diagnostics."""

from .models import (
    DEFAULT_START_DENOMINATOR,
    EquidistReport,
    SimConfig,
    SimScheme,
    WeylMagnitude,
)
from .simulate import (
    default_frequencies,
    equidistribution,
    equidistribution_trials,
    invariant_subtorus_start,
    random_start,
    simulate_orbit,
    weyl_sums,
    write_samples_csv,
)

__all__ = [
    "DEFAULT_START_DENOMINATOR",
    "EquidistReport",
    "SimConfig",
    "SimScheme",
    "WeylMagnitude",
    "default_frequencies",
    "equidistribution",
    "equidistribution_trials",
    "invariant_subtorus_start",
    "random_start",
    "simulate_orbit",
    "weyl_sums",
    "write_samples_csv",
]
