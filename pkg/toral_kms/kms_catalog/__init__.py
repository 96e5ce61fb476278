"""Extremal trace parameters, the explicit trace formula and the classification status."""

from .catalog import classification_status, enumerate_extremal_params
from .models import (
    ClassificationKind,
    ClassificationStatus,
    ExtremalTraceParam,
    IdealStratum,
    KmsCatalog,
    MeasureKind,
    OrbitParameters,
)
from .traces import (
    character_value,
    evaluate_trace,
    ideal_vector,
    is_positive_semidefinite,
    trace_matrix,
)

__all__ = [
    "ClassificationKind",
    "ClassificationStatus",
    "ExtremalTraceParam",
    "IdealStratum",
    "KmsCatalog",
    "MeasureKind",
    "OrbitParameters",
    "character_value",
    "classification_status",
    "enumerate_extremal_params",
    "evaluate_trace",
    "ideal_vector",
    "is_positive_semidefinite",
    "trace_matrix",
]
