"""Certified topological entropy of (S, w)-gap shifts.

The entropy is log(lambda) where lambda is the unique positive root of

    f(lambda) = sum_{n in S} phi_w(n) * lambda**-(n+1) = 1.

f is evaluated as an enclosure: a truncated sum plus a rigorous tail bound.
Floating point error is covered by widening each bound by a relative slack
of 2**-46 (the partial sums use ``math.fsum``, and each term costs a few ulps
at most), not by interval arithmetic.  Tail bounds, which can lose relative
precision near lambda = 1, are inflated by a further 2**-20.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .core import FullShift, Periodic, PredicateGapSet, ShiftSpec
from .core.gapset import EventuallyPeriodicGapSet
from .errors import DepthExhausted, DivergentAt, WrongVariant
from .language import count_words

SLACK = 2.0 ** -46
TAIL_SLACK = 1 + 2.0 ** -20
DEFAULT_MAX_DEPTH = 2 ** 14
DEFAULT_TOL = 1e-10
MIN_TOL = 1e-12

EXACT = "exact_polynomial"
GEOMETRIC = "geometric_tail"
SUBMULTIPLICATIVE = "submultiplicative_tail"


@dataclass(frozen=True)
class CertifiedValue:
    lo: float
    hi: float
    truncation_depth: int
    tail_bound_kind: str
    uncertain: bool = False

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "CertifiedValue") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


@dataclass(frozen=True)
class EntropyEnclosure(CertifiedValue):
    """Enclosure [lo, hi] of the root lambda; entropy bounds are its logs."""

    @property
    def h_lo(self) -> float:
        return math.log(self.lo)

    @property
    def h_hi(self) -> float:
        return math.log(self.hi)

    @property
    def h(self) -> float:
        return math.log(self.mid)


def default_max_depth() -> int:
    env = os.environ.get("GAPSHIFT_MAX_DEPTH")
    return int(env) if env else DEFAULT_MAX_DEPTH


def _term(phi: int, n: int, lam: float) -> float:
    try:
        if phi < 2 ** 53:
            return phi * lam ** (-(n + 1))
        return math.exp(math.log(phi) - (n + 1) * math.log(lam))
    except OverflowError:
        return math.inf


def _enclose(raw: float, tail: float, depth: int, kind: str) -> CertifiedValue:
    return CertifiedValue(raw * (1 - SLACK), raw * (1 + SLACK) + tail * TAIL_SLACK, depth, kind)


def characteristic_sum(spec: ShiftSpec, lam: float, depth: int,
                       max_depth: int | None = None) -> CertifiedValue:
    """Enclosure of f(lam) from the terms with n <= depth plus a tail bound.

    The tail bound is chosen by what is known about S and w:

    * exact (zero) when S is finite and depth >= max S;
    * phi = p past p - 1 for periodic w, phi = k**n for the full shift;
    * otherwise submultiplicativity, phi(q*depth + r) <= phi(depth)**q * phi(r),
      which sums to P * x / (1 - x) with x = phi(depth) / lam**depth and
      P = sum_{r < depth} phi(r) lam**-(r+1).  This needs x < 1.

    An unattainable tail gives ``hi = inf``.  When ``max_depth`` is given the
    depth is doubled up to it instead, and :class:`DivergentAt` is raised if
    the bound stays infinite.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    depth = max(int(depth), 1)
    while True:
        cv = _characteristic_sum(spec, lam, depth)
        if math.isfinite(cv.hi) or max_depth is None:
            return cv
        if depth >= max_depth:
            raise DivergentAt(lam, depth)
        depth = min(2 * depth, max_depth)


def _characteristic_sum(spec, lam, depth):
    S, w = spec.gap_set, spec.factor_source
    raw = math.fsum(_term(w.complexity(n), n, lam) for n in S.elements_upto(depth))

    if S.is_finite and depth >= S.max_element:
        return _enclose(raw, 0.0, depth, EXACT)

    if isinstance(w, Periodic) and depth >= w.minimal_period - 1:
        p = w.minimal_period
        tail = p * lam ** (-(depth + 2)) / (1 - 1 / lam) if lam > 1 else math.inf
        return _enclose(raw, tail, depth, GEOMETRIC)

    if isinstance(w, FullShift):
        k = w.alphabet_size
        tail = (k / lam) ** (depth + 1) / (lam - k) if lam > k else math.inf
        return _enclose(raw, tail, depth, GEOMETRIC)

    ratio = _term(w.complexity(depth), depth - 1, lam)  # phi(depth) * lam**-depth
    if ratio < 1:
        head = math.fsum(_term(w.complexity(r), r, lam) for r in range(depth))
        tail = head * ratio / (1 - ratio)
    else:
        tail = math.inf
    return _enclose(raw, tail, depth, SUBMULTIPLICATIVE)


def periodic_characteristic(spec: ShiftSpec, lam: float, depth: int = 256) -> CertifiedValue:
    """f(lam) for periodic w, with phi(n) = p for all n >= p - 1.

    For eventually periodic S the part past the periodicity threshold is
    summed in closed form, so nothing is truncated.  ``depth`` only matters
    for predicate gap sets.
    """
    w, S = spec.factor_source, spec.gap_set
    if not isinstance(w, Periodic):
        raise WrongVariant("periodic_characteristic needs a periodic factor source")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    p = w.minimal_period

    def coef(n):
        return p if n >= p - 1 else len(w.factor_set(n))

    if S.is_finite and not isinstance(S, PredicateGapSet):
        elems = S.elements_upto(S.max_element)
        raw = math.fsum(_term(coef(n), n, lam) for n in elems)
        return _enclose(raw, 0.0, max(S.max_element, 1), EXACT)

    if isinstance(S, EventuallyPeriodicGapSet):
        threshold, period, _ = S.canonical_form()
        threshold = max(threshold, p - 1)
        residues = [r for r in range(period) if S.contains(threshold + r)]
        head = [_term(coef(n), n, lam) for n in S.elements_upto(threshold - 1)]
        if residues and lam <= 1:
            return CertifiedValue(math.fsum(head) * (1 - SLACK), math.inf, threshold, GEOMETRIC)
        closed = [p * lam ** (-(threshold + r + 1)) / (1 - lam ** (-period)) for r in residues]
        return _enclose(math.fsum(head + closed), 0.0, max(threshold, 1), GEOMETRIC)

    # predicate gap set: truncate and bound the rest by p * sum lam**-(n+1)
    depth = min(depth, S.enumeration_bound)
    raw = math.fsum(_term(coef(n), n, lam) for n in S.elements_upto(depth))
    if S.is_finite and depth >= S.max_element:
        return _enclose(raw, 0.0, depth, EXACT)
    tail = p * lam ** (-(depth + 2)) / (1 - 1 / lam) if lam > 1 else math.inf
    return _enclose(raw, tail, depth, GEOMETRIC)


def _depth_cap(spec, max_depth):
    S = spec.gap_set
    if isinstance(S, PredicateGapSet):
        return min(max_depth, S.enumeration_bound)
    return max_depth


def _sign(spec, lam, depth, cap):
    """Certified sign of f(lam) - 1 as (sign, depth, enclosure).

    sign is +1/-1 when certified, 0 when the enclosure is limited by round-off
    slack rather than truncation, and None when depth ran out.
    """
    while True:
        cv = _characteristic_sum(spec, lam, depth)
        if cv.lo > 1:
            return 1, depth, cv
        if cv.hi < 1:
            return -1, depth, cv
        if cv.tail_bound_kind == EXACT or (math.isfinite(cv.hi) and cv.width <= 8 * SLACK * cv.hi):
            return 0, depth, cv
        if depth >= cap:
            return None, depth, cv
        depth = min(2 * depth, cap)


def solve_entropy(spec: ShiftSpec, tol: float = DEFAULT_TOL,
                  max_depth: int | None = None) -> EntropyEnclosure:
    """Certified enclosure [lo, hi] of the root, with hi - lo <= tol.

    Bisection on [1, k+1]: f(1) >= 1 since S is non-empty, and f(k+1) <= 1
    since phi(n) <= k**n.  Raises :class:`DepthExhausted` carrying the best
    bracket (flagged uncertain) when certification needs more depth than
    allowed.
    """
    if not tol >= MIN_TOL:
        raise ValueError(f"tol must be >= {MIN_TOL}")
    S, w = spec.gap_set, spec.factor_source
    cap = _depth_cap(spec, max_depth or default_max_depth())

    if S.is_finite and S.min_element == S.max_element:
        m = S.max_element
        phi = w.complexity(m)
        lam = 1.0 if phi == 1 else phi ** (1.0 / (m + 1))
        return EntropyEnclosure(lam * (1 - SLACK) if phi > 1 else 1.0, lam * (1 + SLACK) if phi > 1 else 1.0,
                                max(m, 1), EXACT)

    lo, hi = 1.0, float(spec.k + 1)
    depth = min(max(S.max_element, 1), cap) if S.is_finite else min(16, cap)
    kind = EXACT if S.is_finite else GEOMETRIC

    def exhausted(lo_, hi_, depth_):
        return DepthExhausted(
            f"could not certify the sign of f - 1 within depth {cap}",
            EntropyEnclosure(lo_, hi_, depth_, kind, uncertain=True))

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        sign, depth, cv = _sign(spec, mid, depth, cap)
        kind = cv.tail_bound_kind
        if sign is None:
            raise exhausted(lo, hi, depth)
        if sign > 0:
            lo = mid
        elif sign < 0:
            hi = mid
        else:
            # mid is within round-off of the root: certify a bracket around it
            for q in (tol / 4, tol / 2.01):
                s_lo, depth, _ = _sign(spec, max(lo, mid - q), depth, cap)
                s_hi, depth, _ = _sign(spec, min(hi, mid + q), depth, cap)
                if (s_lo == 1 or mid - q <= lo) and (s_hi == -1 or mid + q >= hi):
                    lo, hi = max(lo, mid - q), min(hi, mid + q)
                    break
            else:
                raise exhausted(lo, hi, depth)
    return EntropyEnclosure(lo, hi, depth, kind)


def sgap_entropy(S, tol: float = DEFAULT_TOL, max_depth: int | None = None) -> EntropyEnclosure:
    """Entropy of the classical S-gap shift, the case w = 1^infinity."""
    return solve_entropy(ShiftSpec(S, Periodic("1")), tol, max_depth)


def empirical_entropy(spec: ShiftSpec, n: int) -> float:
    """(1/n) log |B_n|, an upper approximation of the entropy."""
    return math.log(count_words(spec, n)) / n


__all__ = [
    "CertifiedValue", "EntropyEnclosure", "characteristic_sum", "periodic_characteristic",
    "solve_entropy", "sgap_entropy", "empirical_entropy", "default_max_depth",
]
