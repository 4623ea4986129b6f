"""Core data model: gap sets, factor sources and the (S, w) pair."""

from __future__ import annotations

from dataclasses import dataclass

from .factors import (
    SYMBOLS,
    FactorSource,
    FullShift,
    Periodic,
    Substitution,
    complexity,
    extend_right,
    factor_set,
    is_primitive,
    letters_of,
)
from .gapset import (
    EventuallyPeriodicGapSet,
    FiniteGapSet,
    GapSet,
    PredicateGapSet,
    gapset_contains,
    gapset_elements_upto,
)


@dataclass(frozen=True, eq=False)
class ShiftSpec:
    """The (S, w)-gap shift over {0, 1, ..., k}, with 0 as the marker symbol."""

    gap_set: GapSet
    factor_source: FactorSource

    @property
    def k(self) -> int:
        return self.factor_source.alphabet_size

    @property
    def alphabet(self) -> str:
        return SYMBOLS[:self.k + 1]

    def __repr__(self):
        return f"ShiftSpec(S={self.gap_set!r}, w={self.factor_source!r})"


__all__ = [
    "SYMBOLS", "FactorSource", "FullShift", "Periodic", "Substitution", "complexity",
    "extend_right", "factor_set", "is_primitive", "letters_of", "EventuallyPeriodicGapSet",
    "FiniteGapSet", "GapSet", "PredicateGapSet", "gapset_contains", "gapset_elements_upto",
    "ShiftSpec",
]
