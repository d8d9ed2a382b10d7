"""Groupoid presentations, pushout computations, and Jordan-curve verification."""

from .groups import (
    AbelianInvariants,
    Certificate,
    GroupPresentation,
    IntegerMatrix,
    abelianization,
    no_z_retract_sufficient,
    smith_normal_form,
    tietze_simplify,
)
from .groupoids import (
    Arrow,
    GroupoidPresentation,
    RelationFamily,
    SpanningTreeData,
    Word,
    free_product,
    quotient_by_relations,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "Arrow",
    "Certificate",
    "GroupPresentation",
    "GroupoidPresentation",
    "IntegerMatrix",
    "RelationFamily",
    "SpanningTreeData",
    "Word",
    "abelianization",
    "free_product",
    "no_z_retract_sufficient",
    "quotient_by_relations",
    "smith_normal_form",
    "tietze_simplify",
]
