import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, NATURALS, THUE_MORSE
from gapshift.core import (
    EventuallyPeriodicGapSet,
    FiniteGapSet,
    FullShift,
    Periodic,
    PredicateGapSet,
    ShiftSpec,
    Substitution,
)
from gapshift.entropy import (
    EXACT,
    GEOMETRIC,
    SUBMULTIPLICATIVE,
    characteristic_sum,
    empirical_entropy,
    periodic_characteristic,
    sgap_entropy,
    solve_entropy,
)
from gapshift.errors import DepthExhausted, DivergentAt, WrongVariant
from oracles import exact_partial_sum, partial_sum, periodic_windows, substitution_iterate, windows

PHI = (1 + math.sqrt(5)) / 2
GOLDEN = CORPUS["golden"]
TM_TEXT = substitution_iterate(THUE_MORSE, "1", 12)
TM_NAT = ShiftSpec(NATURALS, Substitution(THUE_MORSE))


def oracle_phi(w):
    """Complexity computed without the library's factor code."""
    if isinstance(w, Periodic):
        return lambda n: len(periodic_windows(w.word, n)) if n else 1
    if isinstance(w, FullShift):
        return lambda n: w.alphabet_size ** n
    return lambda n: len(windows(TM_TEXT, n))


# --- characteristic sum -----------------------------------------------------

def test_characteristic_sum_examples():
    for depth in (30, 60, 200):
        cv = characteristic_sum(ShiftSpec(NATURALS, Periodic("1")), 2.0, depth)
        assert cv.contains(1.0) and cv.width < 1e-8 and cv.tail_bound_kind == GEOMETRIC
    cv = characteristic_sum(GOLDEN, PHI, 1)
    assert cv.contains(1.0) and cv.tail_bound_kind == EXACT and cv.width < 1e-11
    for k in (1, 2, 3):
        cv = characteristic_sum(ShiftSpec(NATURALS, FullShift(k)), k + 1.0, 200)
        assert cv.contains(1.0)


def test_characteristic_sum_golden_is_polynomial():
    # exact rational evaluation of lam^-1 + lam^-2 at lam = 3/2
    exact = float(Fraction(2, 3) + Fraction(4, 9))
    cv = characteristic_sum(GOLDEN, 1.5, 1)
    assert cv.contains(exact) and cv.width < 1e-10


def test_tail_kinds():
    assert characteristic_sum(CORPUS["thue-morse"], 3.0, 16).tail_bound_kind == EXACT
    assert characteristic_sum(TM_NAT, 3.0, 16).tail_bound_kind == SUBMULTIPLICATIVE
    assert characteristic_sum(CORPUS["primes"], 1.5, 64).tail_bound_kind == GEOMETRIC


def test_unattainable_tail_is_infinite_or_divergent():
    spec = ShiftSpec(NATURALS, Periodic("1"))
    assert characteristic_sum(spec, 1.0, 40).hi == math.inf
    with pytest.raises(DivergentAt):
        characteristic_sum(spec, 1.0, 40, max_depth=160)
    tm = TM_NAT
    assert characteristic_sum(tm, 1.2, 4).hi == math.inf
    assert math.isfinite(characteristic_sum(tm, 1.2, 4, max_depth=4096).hi)


def test_rejects_nonpositive_lambda():
    with pytest.raises(ValueError):
        characteristic_sum(GOLDEN, 0.0, 4)


SOUNDNESS_CASES = [
    ("golden", (1.05, 3.0)),
    ("gap2-period2", (1.05, 3.0)),
    ("naturals-period2", (1.05, 3.0)),
    ("odd-period2", (1.05, 3.0)),
    ("thue-morse", (2.0, 3.5)),
    ("pow2-thue-morse", (2.0, 3.5)),
    ("naturals-full2", (2.05, 3.5)),
    ("primes", (1.05, 3.0)),
    ("tm-naturals", (2.0, 3.5)),
]


@pytest.mark.parametrize("name,bracket", SOUNDNESS_CASES)
def test_enclosure_soundness_against_deeper_partial_sums(name, bracket):
    spec = TM_NAT if name == "tm-naturals" else CORPUS[name]
    phi = oracle_phi(spec.factor_source)
    rng = np.random.default_rng(11)
    for depth in (4, 8, 12):
        for lam in rng.uniform(*bracket, size=8):
            cv = characteristic_sum(spec, lam, depth)
            deeper = partial_sum(spec.gap_set.elements_upto(4 * depth), phi, lam)
            assert cv.lo <= deeper <= cv.hi


@pytest.mark.parametrize("name", ["golden", "gap2-period2", "naturals-period2"])
def test_enclosure_soundness_exact_arithmetic(name):
    spec = CORPUS[name]
    phi = oracle_phi(spec.factor_source)
    for lam in (Fraction(11, 10), Fraction(3, 2), Fraction(5, 2)):
        cv = characteristic_sum(spec, float(lam), 10)
        value = exact_partial_sum(spec.gap_set.elements_upto(40), phi, lam)
        assert cv.lo <= float(value) <= cv.hi


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([CORPUS["golden"], CORPUS["naturals-period2"], TM_NAT,
                        CORPUS["naturals-full2"], CORPUS["odd-period2"]]),
       st.floats(2.1, 4.0), st.floats(0.01, 1.0))
def test_monotonicity(spec, lam1, step):
    a = characteristic_sum(spec, lam1, 64)
    b = characteristic_sum(spec, lam1 + step, 64)
    assert a.lo >= b.hi - (a.width + b.width)


# --- root solving --------------------------------------------------------------

def test_solve_examples():
    enc = solve_entropy(GOLDEN, 1e-12)
    assert enc.contains(PHI) and enc.width <= 1e-12
    assert abs(enc.h - 0.4812118251) < 1e-9
    one = solve_entropy(ShiftSpec(FiniteGapSet({1}), Periodic("1")))
    assert one.lo == one.hi == 1.0 and one.h == 0.0
    p2 = solve_entropy(ShiftSpec(NATURALS, Periodic("12")))
    assert p2.contains(1 + math.sqrt(2)) and abs(p2.h - 0.8813735870) < 1e-9
    f2 = solve_entropy(ShiftSpec(NATURALS, FullShift(2)))
    assert abs(f2.h - math.log(3)) < 1e-9


def test_singleton_short_circuit():
    enc = solve_entropy(ShiftSpec(FiniteGapSet({3}), Periodic("12")))
    assert enc.contains(2 ** 0.25) and enc.tail_bound_kind == EXACT
    enc = solve_entropy(ShiftSpec(FiniteGapSet({4}), Substitution(THUE_MORSE)))
    assert enc.contains(10 ** 0.2)


def test_sgap_examples():
    assert sgap_entropy(NATURALS).contains(2.0)
    assert sgap_entropy(FiniteGapSet({0, 1})).contains(PHI)
    pow2 = sgap_entropy(PredicateGapSet.named("powers-of-2", 10 ** 6), 1e-9)
    assert pow2.width <= 1e-9 and 1 < pow2.lo < pow2.hi < 2
    # the root satisfies the truncated equation to high accuracy
    lam = pow2.mid
    assert abs(math.fsum(lam ** -(2 ** i + 1) for i in range(60)) - 1) < 1e-8


@pytest.mark.parametrize("S", [NATURALS, FiniteGapSet({0, 1}), FiniteGapSet({2, 5, 9}),
                               EventuallyPeriodicGapSet({1}, [(4, 3)]),
                               PredicateGapSet.named("primes", 10 ** 6)])
def test_sgap_reduction(S):
    tol = 1e-10
    a = solve_entropy(ShiftSpec(S, Periodic("1")), tol)
    b = sgap_entropy(S, tol)
    assert abs(a.mid - b.mid) <= tol


def test_root_sandwich(corpus_spec):
    enc = solve_entropy(corpus_spec, 1e-10)
    assert enc.width <= 1e-10
    at_lo = characteristic_sum(corpus_spec, enc.lo, 4096)
    at_hi = characteristic_sum(corpus_spec, enc.hi, 4096)
    slack = at_lo.width + at_hi.width + 1e-9
    assert at_lo.hi >= 1 - slack
    assert at_hi.lo <= 1 + slack


def test_per_term_lower_bound(corpus_spec):
    tol = 1e-10
    enc = solve_entropy(corpus_spec, tol)
    w = corpus_spec.factor_source
    for n in corpus_spec.gap_set.elements_upto(40):
        assert enc.hi >= w.complexity(n) ** (1 / (n + 1)) - tol


def test_depth_exhausted_returns_partial():
    spec = ShiftSpec(PredicateGapSet.named("primes", 20), Periodic("1"))
    with pytest.raises(DepthExhausted) as info:
        solve_entropy(spec, 1e-10)
    partial = info.value.partial
    assert partial.uncertain and partial.lo <= partial.hi
    truth = sgap_entropy(PredicateGapSet.named("primes", 10 ** 6))
    assert partial.lo <= truth.mid <= partial.hi


def test_depth_limit_from_environment(monkeypatch):
    monkeypatch.setenv("GAPSHIFT_MAX_DEPTH", "8")
    with pytest.raises(DepthExhausted):
        solve_entropy(TM_NAT, 1e-10)
    monkeypatch.delenv("GAPSHIFT_MAX_DEPTH")
    assert solve_entropy(TM_NAT, 1e-10).width <= 1e-10


def test_tolerance_floor():
    with pytest.raises(ValueError):
        solve_entropy(GOLDEN, 1e-13)


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(0, 12), min_size=2, max_size=6))
def test_finite_S_root_matches_polynomial(elements):
    spec = ShiftSpec(FiniteGapSet(elements), Periodic("1"))
    enc = solve_entropy(spec, 1e-11)
    # x = 1/lam solves sum x^(n+1) = 1; check the sign change in exact arithmetic
    f = lambda lam: sum(Fraction(1) / Fraction(lam) ** (n + 1) for n in elements)
    assert f(enc.lo) >= 1 >= f(enc.hi)


# --- periodic fast path -------------------------------------------------------

def test_periodic_characteristic_examples():
    spec = ShiftSpec(NATURALS, Periodic("12"))
    assert periodic_characteristic(spec, 1 + math.sqrt(2)).contains(1.0)
    S = EventuallyPeriodicGapSet({0}, [(3, 3)])
    spec = ShiftSpec(S, Periodic("123"))
    for lam in (1.3, 1.9, 2.6):
        pc = periodic_characteristic(spec, lam)
        assert pc.overlaps(characteristic_sum(spec, lam, 256))
        assert pc.width < 1e-10


def test_periodic_characteristic_reduces_to_sgap_sum():
    S = EventuallyPeriodicGapSet({1, 2}, [(5, 4)])
    lam = 1.7
    pc = periodic_characteristic(ShiftSpec(S, Periodic("1")), lam)
    direct = partial_sum(S.elements_upto(400), lambda n: 1, lam)
    assert abs(pc.mid - direct) < 1e-12


def test_periodic_characteristic_wrong_variant():
    with pytest.raises(WrongVariant):
        periodic_characteristic(CORPUS["thue-morse"], 2.0)


@pytest.mark.parametrize("name", [n for n, s in CORPUS.items() if isinstance(s.factor_source, Periodic)])
def test_two_evaluators_agree(name):
    spec = CORPUS[name]
    rng = np.random.default_rng(5)
    for lam in rng.uniform(1.05, 3.5, size=20):
        assert periodic_characteristic(spec, lam).overlaps(characteristic_sum(spec, lam, 256))


# --- empirical entropy -------------------------------------------------------

def test_empirical_entropy_examples():
    assert empirical_entropy(GOLDEN, 20) == pytest.approx(math.log(17711) / 20, abs=1e-15)
    assert 0 <= empirical_entropy(GOLDEN, 20) - 0.4812118 < 0.01
    assert empirical_entropy(ShiftSpec(FiniteGapSet({1}), Periodic("1")), 30) == pytest.approx(math.log(2) / 30)
    full = ShiftSpec(NATURALS, FullShift(1))
    assert all(empirical_entropy(full, n) == pytest.approx(math.log(2)) for n in (1, 7, 33))


def test_fekete_upper_approach(corpus_spec):
    enc = solve_entropy(corpus_spec, 1e-10)
    for n in range(1, 25):
        assert empirical_entropy(corpus_spec, n) >= enc.h_lo - enc.width
