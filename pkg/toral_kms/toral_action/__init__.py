"""Unit group action ρ_J on the dual torus of an ideal and on its rational points."""

from .models import RationalTorusPoint
from .representation import (
    ToralRep,
    act,
    act_by_matrix,
    build_toral_rep,
    toral_matrix,
    toral_matrix_of_element,
    verify_eigen_structure,
)

__all__ = [
    "RationalTorusPoint",
    "ToralRep",
    "act",
    "act_by_matrix",
    "build_toral_rep",
    "toral_matrix",
    "toral_matrix_of_element",
    "verify_eigen_structure",
]
