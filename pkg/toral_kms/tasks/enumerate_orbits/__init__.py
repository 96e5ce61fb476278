"""Tasks enumerating finite orbits and isotropy groups."""

from .enumerate_orbits import (
    build_isotropy_report,
    build_orbit_catalog,
    enumerate_orbits_task,
    parse_point,
)

__all__ = [
    "build_isotropy_report",
    "build_orbit_catalog",
    "enumerate_orbits_task",
    "parse_point",
]
