"""Mixing, synchronization and irreducibility checks, and the maximal-entropy gap process."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional

import numpy as np

from .core import EventuallyPeriodicGapSet, FiniteGapSet, ShiftSpec
from .entropy import CertifiedValue, default_max_depth, solve_entropy
from .errors import DepthExhausted, NotInLanguage, QueryBeyondBound, SynchronizationViolation, WrongVariant
from .language import DEFAULT_BUDGET, bridge, decompose, is_allowed, random_allowed_word

MIXING = "mixing"
NOT_MIXING = "not_mixing"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class MixingVerdict:
    status: str
    gcd_witness: int
    certificate: tuple[int, ...]
    probe_bound: Optional[int] = None

    @property
    def is_mixing(self) -> Optional[bool]:
        return {MIXING: True, NOT_MIXING: False}.get(self.status)


def is_mixing(spec: ShiftSpec, probe_bound: int = 1000) -> MixingVerdict:
    """Decide mixing from d = gcd{n + 1 : n in S}; mixing iff d = 1.

    Finite and eventually periodic S are decided exactly.  A predicate S is
    probed up to ``probe_bound`` and only a gcd of 1 is conclusive.
    """
    S = spec.gap_set
    if probe_bound < S.min_element:
        raise ValueError(f"probe_bound {probe_bound} is below min S = {S.min_element}")
    if isinstance(S, FiniteGapSet):
        used = list(S.elements)
    elif isinstance(S, EventuallyPeriodicGapSet):
        # a + i*d contributes gcd(a + 1, d) once a and a + d are included
        used = list(S.sporadic) + [x for a, d in S.progressions for x in (a, a + d)]
    else:
        g, cert = 0, []
        for n in S.elements_upto(probe_bound):
            if math.gcd(g, n + 1) != g:
                g = math.gcd(g, n + 1)
                cert.append(n)
            if g == 1:
                return MixingVerdict(MIXING, 1, tuple(cert), probe_bound)
        return MixingVerdict(UNKNOWN, g, tuple(cert), probe_bound)

    g = 0
    for n in used:
        g = math.gcd(g, n + 1)
    return MixingVerdict(MIXING if g == 1 else NOT_MIXING, g, tuple(sorted(set(used))))


def _sum_parts(parts: list[int], target: int) -> Optional[list[int]]:
    """Write target as a sum of parts (repetition allowed), or None."""
    if target < 0:
        return None
    via = [None] * (target + 1)
    via[0] = 0
    for x in range(1, target + 1):
        for p in parts:
            if p <= x and via[x - p] is not None:
                via[x] = p
                break
    if via[target] is None:
        return None
    out = []
    while target:
        out.append(via[target])
        target -= via[target]
    return out


def conductor(parts: list[int]) -> Optional[int]:
    """Least c such that every integer >= c is a sum of parts; None if gcd(parts) > 1."""
    parts = sorted(set(p for p in parts if p > 0))
    if not parts or math.gcd(*parts) != 1:
        return None
    limit = parts[0] * parts[-1] + parts[-1]
    ok = [False] * (limit + 1)
    ok[0] = True
    for x in range(1, limit + 1):
        ok[x] = any(p <= x and ok[x - p] for p in parts)
    c = limit
    while c > 0 and ok[c - 1]:
        c -= 1
    return c


def mixing_threshold(spec: ShiftSpec, u: str, v: str, probe_bound: int = 1000) -> Optional[int]:
    """Length N past which :func:`mixing_gap_witness` is guaranteed to find a constructive witness."""
    verdict = is_mixing(spec, probe_bound)
    if verdict.status != MIXING:
        return None
    c = conductor([n + 1 for n in verdict.certificate])
    t, s = bridge(spec, u, v)
    return c + len(t) + len(s) + 1


def mixing_gap_witness(spec: ShiftSpec, u: str, v: str, n: int, exhaustive: bool = True,
                       budget: int = DEFAULT_BUDGET) -> Optional[str]:
    """A word g of length n with u g v allowed, or None.

    The constructive route bridges u and v with t0s and inserts between them
    a chain of full gaps whose lengths plus markers add up to the missing
    length.  When that fails and ``exhaustive`` is set, every candidate is
    searched (extending only allowed prefixes) within ``budget``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    for x in (u, v):
        if not is_allowed(spec, x):
            raise NotInLanguage(f"{x!r} is not in the language")
    S, w = spec.gap_set, spec.factor_source
    t, s = bridge(spec, u, v)
    target = n - len(t) - len(s) - 1
    if target >= 0:
        parts = [m + 1 for m in S.elements_upto(max(target - 1, 0)) if m + 1 <= target]
        split = _sum_parts(sorted(parts, reverse=True), target)
        if split is not None:
            chain = "".join(w.sorted_factors(p - 1)[0] + "0" for p in split)
            gamma = t + "0" + chain + s
            if is_allowed(spec, u + gamma + v):
                return gamma
    if not exhaustive or len(spec.alphabet) ** n > budget:
        return None
    frontier = [""]
    for _ in range(n):
        frontier = [g + c for g in frontier for c in spec.alphabet if is_allowed(spec, u + g + c)]
    for g in frontier:
        if is_allowed(spec, u + g + v):
            return g
    return None


@dataclass(frozen=True)
class CheckReport:
    trials: int
    passes: int


def verify_synchronization(spec: ShiftSpec, trials: int = 1000, max_len: int = 10, seed=0,
                           membership: Callable[[ShiftSpec, str], bool] | None = None) -> CheckReport:
    """Check on random words that u0 and 0v allowed implies u0v allowed.

    Words are grown by random allowed extensions; ``membership`` (default
    :func:`is_allowed`) is the predicate under test.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    member = membership or is_allowed
    rng = np.random.default_rng(seed)
    passes = 0
    for _ in range(trials):
        u0 = random_allowed_word(spec, int(rng.integers(1, max_len + 1)), rng, "0", "left")
        v0 = random_allowed_word(spec, int(rng.integers(1, max_len + 1)), rng, "0", "right")
        if member(spec, u0) and member(spec, v0) and not member(spec, u0 + v0[1:]):
            raise SynchronizationViolation(u0[:-1], v0[1:])
        passes += 1
    return CheckReport(trials, passes)


def verify_irreducibility(spec: ShiftSpec, trials: int = 1000, max_len: int = 10, seed=0) -> CheckReport:
    """Bridge random allowed pairs (u, v) and count the joins that are allowed.

    A bridge that fails its own verification counts as a failed trial.
    """
    rng = np.random.default_rng(seed)
    passes = 0
    for _ in range(trials):
        u = random_allowed_word(spec, int(rng.integers(1, max_len + 1)), rng)
        v = random_allowed_word(spec, int(rng.integers(1, max_len + 1)), rng)
        try:
            t, s = bridge(spec, u, v)
        except AssertionError:
            continue
        passes += is_allowed(spec, u + t + "0" + s + v)
    return CheckReport(trials, passes)


@dataclass(frozen=True)
class GapDistribution:
    """Law of the gap length n in the maximal-entropy generator process.

    p_n = phi(n) lam**-(n+1) is the probability of emitting a generator u0
    with |u| = n (each of the phi(n) factors equally likely).
    """

    entries: tuple[tuple[int, float], ...]
    truncation_mass: float
    lam: float
    zero_frequency: float
    mass_tol: float

    @property
    def total(self) -> float:
        return math.fsum(p for _, p in self.entries)

    def probability(self, n: int) -> float:
        return dict(self.entries).get(n, 0.0)


def gap_distribution(spec: ShiftSpec, lam, mass_tol: float = 1e-9,
                     max_depth: int | None = None) -> GapDistribution:
    """Generator law at ``lam`` (a float or the enclosure from :func:`solve_entropy`).

    Entries are added in increasing n until the missing mass drops below
    ``mass_tol``.  The zero frequency is 1 / E[n + 1] (mean return time to a
    marker); the missing mass is charged at the first gap length not
    included.
    """
    if not 0 < mass_tol < 0.1:
        raise ValueError("mass_tol must lie in (0, 0.1)")
    if isinstance(lam, CertifiedValue):
        lam = lam.mid
    S, w = spec.gap_set, spec.factor_source
    cap = max_depth or default_max_depth()

    entries, ps = [], []
    last, window = -1, 64
    done = False
    while not done:
        if S.is_finite:
            window = S.max_element
        elif window > cap:
            raise DepthExhausted(f"gap law mass not within {mass_tol} by gap length {cap}")
        try:
            elems = S.elements_upto(window)
        except QueryBeyondBound as exc:
            raise DepthExhausted(f"gap law needs gaps past the predicate bound: {exc}") from exc
        for n in elems:
            if n <= last:
                continue
            p = w.complexity(n) * lam ** (-(n + 1))
            entries.append((n, p))
            ps.append(p)
            last = n
            if 1 - math.fsum(ps) < mass_tol:
                done = True
                break
        if S.is_finite:
            done = True
        window *= 2

    mass = 1 - math.fsum(ps)
    mean = math.fsum((n + 1) * p for n, p in entries) + (last + 2) * max(mass, 0.0)
    return GapDistribution(tuple(entries), mass, lam, 1 / mean, mass_tol)


def _draw_generators(spec, dist, length, rng):
    ns = np.array([n for n, _ in dist.entries])
    probs = np.array([p for _, p in dist.entries])
    probs = probs / probs.sum()
    w = spec.factor_source
    pieces, total = [], 0
    while total < length:
        batch = rng.choice(ns, size=max(16, (length - total) // max(1, int(ns.min()) + 1) + 1), p=probs)
        for n in batch:
            g = w.random_factor(int(n), rng) + "0"
            pieces.append(g)
            total += len(g)
            if total >= length:
                break
    return pieces


def sample_mme(spec: ShiftSpec, distribution: GapDistribution, length: int, seed=0) -> str:
    """Word of the given length from the generator process (truncated at the end)."""
    if length < 1:
        raise ValueError("length must be positive")
    rng = np.random.default_rng(seed)
    return "".join(_draw_generators(spec, distribution, length, rng))[:length]


def gap_histogram(spec: ShiftSpec, word: str) -> dict[int, int]:
    """Counts of internal gap lengths of an allowed word."""
    hist: dict[int, int] = {}
    for g in decompose(spec, word).internal_gaps:
        hist[len(g)] = hist.get(len(g), 0) + 1
    return dict(sorted(hist.items()))


def finite_S_zero_bound_check(spec: ShiftSpec, tol: float = 1e-10) -> bool:
    """Whether the marker frequency is at least 1/(1 + max S) for finite S."""
    S = spec.gap_set
    if not S.is_finite:
        raise WrongVariant("the zero-frequency bound applies to finite S only")
    dist = gap_distribution(spec, solve_entropy(spec, tol), mass_tol=1e-6)
    return dist.zero_frequency >= 1 / (1 + S.max_element) - 1e-12
