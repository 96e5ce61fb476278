"""ID certification: CM detection, Berend's conditions and the field-level verdict."""

from .certifier import (
    berend_conditions,
    check_solidarity,
    enumerate_words,
    expanding_unit,
    power_test_exponents,
    recheck_irreducibility,
    totally_irreducible_unit_search,
)
from .cm import (
    apply_automorphism,
    conjugation_matrix,
    find_cm_certificate,
    is_cm,
    real_subfield_lattice,
    real_unit_subgroup,
)
from .models import (
    ZW_CONDITION_NOTE,
    BerendConditions,
    CMCertificate,
    CMKind,
    CMStatus,
    ExpandingCertificate,
    IDVerdict,
    TotalIrreducibilityCertificate,
    Verdict,
)
from .sublattices import avoid_sublattices
from .verdict import field_level_verdict, id_verdict

__all__ = [
    "ZW_CONDITION_NOTE",
    "BerendConditions",
    "CMCertificate",
    "CMKind",
    "CMStatus",
    "ExpandingCertificate",
    "IDVerdict",
    "TotalIrreducibilityCertificate",
    "Verdict",
    "apply_automorphism",
    "avoid_sublattices",
    "berend_conditions",
    "check_solidarity",
    "conjugation_matrix",
    "enumerate_words",
    "expanding_unit",
    "field_level_verdict",
    "find_cm_certificate",
    "id_verdict",
    "is_cm",
    "power_test_exponents",
    "real_subfield_lattice",
    "real_unit_subgroup",
    "recheck_irreducibility",
    "totally_irreducible_unit_search",
]
