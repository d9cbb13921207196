"""Search caps, truncation bound, and the refusal exception."""

from __future__ import annotations

from dataclasses import dataclass


class CapExceeded(Exception):
    """Raised when an enumeration or search would exceed its configured cap.

    Callers that must never guess turn this into an explicit "cap exceeded"
    outcome instead of a wrong answer.
    """

    def __init__(self, what, limit, reached=None):
        self.what = what
        self.limit = limit
        self.reached = reached
        detail = f"{what}: cap {limit} exceeded"
        if reached is not None:
            detail += f" (needed {reached})"
        super().__init__(detail)


@dataclass(frozen=True)
class Caps:
    """Size caps for decision procedures.

    aut_order       largest automorphism group brute-forced in equivalence checks
    max_sections    candidate bound for coherent-section enumeration
    max_candidates  candidate bound per witness-search stage
    search_objects  largest boundary groupoid (objects) admitted to witness search
    search_morphisms  same, morphism count
    """

    aut_order: int = 64
    max_sections: int = 10**6
    max_candidates: int = 10**6
    search_objects: int = 6
    search_morphisms: int = 16


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class TruncationConfig:
    """Maximum family size represented in the bijection and exponential groupoids."""

    bound: int = 4

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("truncation bound must be >= 0")
