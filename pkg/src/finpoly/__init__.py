"""Executable workbench for polynomial functors between finite groupoids."""

from .config import Caps, DEFAULT_CAPS, CapExceeded, TruncationConfig
from .groupoid import (
    FiniteGroupoid, GroupoidFunctor, GroupoidError,
    discrete, deloop, coproduct, product, build_groupoid,
    validate_groupoid, validate_functor, identity_functor,
    components_and_automorphisms, groupoid_cardinality,
    check_groupoid_equivalence, verify_equivalence_witness,
)

__all__ = [
    "Caps", "DEFAULT_CAPS", "CapExceeded", "TruncationConfig",
    "FiniteGroupoid", "GroupoidFunctor", "GroupoidError",
    "discrete", "deloop", "coproduct", "product", "build_groupoid",
    "validate_groupoid", "validate_functor", "identity_functor",
    "components_and_automorphisms", "groupoid_cardinality",
    "check_groupoid_equivalence", "verify_equivalence_witness",
]
