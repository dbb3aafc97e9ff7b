"""Morphisms: approximable mappings between frames and CF-approximable relations."""
from .base import BaseMorphism
from .mappings import (
    ApproximableMapping,
    FrameIsoPair,
    check_mapping_lemmas,
    compose_mappings,
    identity_mapping,
    validate_mapping,
)
from .relations import CFRelation, RelationIsoPair, compose_cf, identity_cf, validate_cf_relation

__all__ = [
    "BaseMorphism", "ApproximableMapping", "FrameIsoPair", "CFRelation", "RelationIsoPair",
    "validate_mapping", "identity_mapping", "compose_mappings", "check_mapping_lemmas",
    "validate_cf_relation", "identity_cf", "compose_cf",
]
