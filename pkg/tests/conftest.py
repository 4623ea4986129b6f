import pytest

from gapshift.core import (
    EventuallyPeriodicGapSet,
    FiniteGapSet,
    FullShift,
    Periodic,
    PredicateGapSet,
    ShiftSpec,
    Substitution,
)

THUE_MORSE = {"1": "12", "2": "21"}
NATURALS = EventuallyPeriodicGapSet((), [(0, 1)])


def make_corpus():
    """Specs shared by the property and acceptance tests, all with k <= 2."""
    return {
        "golden": ShiftSpec(FiniteGapSet({0, 1}), Periodic("1")),
        "orbit": ShiftSpec(FiniteGapSet({1}), Periodic("1")),
        "gap2-period2": ShiftSpec(FiniteGapSet({2}), Periodic("12")),
        "gaps13": ShiftSpec(FiniteGapSet({1, 3}), Periodic("1")),
        "naturals-period2": ShiftSpec(NATURALS, Periodic("12")),
        "primes": ShiftSpec(PredicateGapSet.named("primes", 10_000), Periodic("1")),
        "thue-morse": ShiftSpec(FiniteGapSet({0, 1, 2, 3}), Substitution(THUE_MORSE)),
        "odd-period2": ShiftSpec(EventuallyPeriodicGapSet((), [(1, 2)]), Periodic("12")),
        "pow2-thue-morse": ShiftSpec(PredicateGapSet.named("powers-of-2", 10_000), Substitution(THUE_MORSE)),
        "naturals-full2": ShiftSpec(NATURALS, FullShift(2)),
    }


# finite S and periodic w: the harvest oracle must reproduce the whole language
STRUCTURED = ["golden", "orbit", "gap2-period2", "gaps13"]

CORPUS = make_corpus()


@pytest.fixture(params=sorted(CORPUS))
def corpus_spec(request):
    return CORPUS[request.param]


@pytest.fixture
def golden():
    return CORPUS["golden"]
