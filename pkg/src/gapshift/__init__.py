"""Symbolic dynamics of (S, w)-gap shifts.

X_w(S) is the closure of the bi-infinite sequences ``... 0 u_{-1} 0 u_0 0 u_1 ...``
over {0, 1, ..., k} in which every gap u_i is a factor of the word w with
length in S.  The package decides membership in its language, counts words,
certifies the entropy and samples the gap process of the measure of maximal
entropy.
"""

from .core import (
    EventuallyPeriodicGapSet,
    FiniteGapSet,
    FullShift,
    Periodic,
    PredicateGapSet,
    ShiftSpec,
    Substitution,
)
from .dynamics import gap_distribution, is_mixing, sample_mme
from .entropy import characteristic_sum, empirical_entropy, sgap_entropy, solve_entropy
from .language import bridge, count_words, decompose, enumerate_words, is_allowed

__version__ = "0.1.0"

__all__ = [
    "EventuallyPeriodicGapSet", "FiniteGapSet", "FullShift", "Periodic", "PredicateGapSet",
    "ShiftSpec", "Substitution", "gap_distribution", "is_mixing", "sample_mme",
    "characteristic_sum", "empirical_entropy", "sgap_entropy", "solve_entropy", "bridge",
    "count_words", "decompose", "enumerate_words", "is_allowed",
]
