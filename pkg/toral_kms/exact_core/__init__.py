"""Exact integer/rational kernel: normal forms, polynomials and certified intervals."""

from .intervals import (
    CertifiedInterval,
    RealInterval,
    interval_log,
    mpf_to_fraction,
    precision_to_bits,
)
from .matrices import (
    charpoly,
    hermite_normal_form,
    integer_kernel,
    integer_rank,
    lattice_contains,
    lattice_coordinates,
    lattice_index,
    mat_vec,
    rational_determinant,
    rational_inverse,
    rational_nullspace,
    rational_product,
    row_lattice_basis,
    smith_normal_form,
)
from .models import HermiteDecomposition, IntegerMatrix, SNFDecomposition
from .polynomials import (
    RationalPolynomial,
    is_irreducible_q,
    isolate_roots,
    refine_root,
    root_multiplicity_total,
)

__all__ = [
    "CertifiedInterval",
    "HermiteDecomposition",
    "IntegerMatrix",
    "RationalPolynomial",
    "RealInterval",
    "SNFDecomposition",
    "charpoly",
    "hermite_normal_form",
    "integer_kernel",
    "integer_rank",
    "interval_log",
    "is_irreducible_q",
    "isolate_roots",
    "lattice_contains",
    "lattice_coordinates",
    "lattice_index",
    "mat_vec",
    "mpf_to_fraction",
    "precision_to_bits",
    "rational_determinant",
    "rational_inverse",
    "rational_nullspace",
    "rational_product",
    "refine_root",
    "root_multiplicity_total",
    "row_lattice_basis",
    "smith_normal_form",
]
