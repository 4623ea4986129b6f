"""Finite descriptions of gap-length sets S, a subset of the non-negative integers."""

from __future__ import annotations

import bisect
import math
import threading
from functools import reduce
from typing import Callable, Iterable, Sequence

from ..errors import QueryBeyondBound


class GapSet:
    """Common interface of the three gap-set variants.

    Every variant answers membership and enumeration exactly; the predicate
    variant does so only up to its enumeration bound and raises
    :class:`QueryBeyondBound` past it.
    """

    kind = "abstract"

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def elements_upto(self, N: int) -> list[int]:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        raise NotImplementedError

    @property
    def max_element(self) -> int:
        raise NotImplementedError

    @property
    def min_element(self) -> int:
        raise NotImplementedError

    def has_element_at_least(self, length: int) -> bool:
        """Whether some n in S satisfies n >= length."""
        if length <= 0:
            return True
        if not self.is_finite:
            return True
        return self.max_element >= length

    def least_element_at_least(self, length: int) -> int | None:
        """Smallest n in S with n >= length, or None if there is none."""
        if not self.has_element_at_least(length):
            return None
        hi = max(2 * length, 16)
        while True:
            elems = self.elements_upto(hi)
            i = bisect.bisect_left(elems, length)
            if i < len(elems):
                return elems[i]
            hi *= 2

    def __contains__(self, n):
        return self.contains(n)


class FiniteGapSet(GapSet):
    kind = "finite"

    def __init__(self, elements: Iterable[int]):
        elems = sorted(set(int(e) for e in elements))
        if not elems:
            raise ValueError("gap set must be non-empty")
        if elems[0] < 0:
            raise ValueError("gap lengths must be non-negative")
        self.elements = tuple(elems)
        self._members = frozenset(elems)

    def contains(self, n):
        return n in self._members

    def elements_upto(self, N):
        return list(self.elements[:bisect.bisect_right(self.elements, N)])

    @property
    def is_finite(self):
        return True

    @property
    def max_element(self):
        return self.elements[-1]

    @property
    def min_element(self):
        return self.elements[0]

    def __eq__(self, other):
        return isinstance(other, FiniteGapSet) and self.elements == other.elements

    def __hash__(self):
        return hash(("finite", self.elements))

    def __repr__(self):
        return f"FiniteGapSet({set(self.elements)})"


class EventuallyPeriodicGapSet(GapSet):
    """A finite set united with finitely many arithmetic progressions ``start + i*step``."""

    kind = "eventually_periodic"

    def __init__(self, sporadic: Iterable[int] = (), progressions: Sequence[tuple[int, int]] = ()):
        self.sporadic = tuple(sorted(set(int(e) for e in sporadic)))
        progs = []
        for start, step in progressions:
            start, step = int(start), int(step)
            if start < 0 or step < 1:
                raise ValueError(f"bad progression ({start}, {step}): need start >= 0, step >= 1")
            progs.append((start, step))
        self.progressions = tuple(sorted(set(progs)))
        if self.sporadic and self.sporadic[0] < 0:
            raise ValueError("gap lengths must be non-negative")
        if not self.sporadic and not self.progressions:
            raise ValueError("gap set must be non-empty")
        self._sporadic_set = frozenset(self.sporadic)

    def contains(self, n):
        if n < 0:
            return False
        if n in self._sporadic_set:
            return True
        return any(n >= a and (n - a) % d == 0 for a, d in self.progressions)

    def elements_upto(self, N):
        hits = set(e for e in self.sporadic if e <= N)
        for a, d in self.progressions:
            hits.update(range(a, N + 1, d))
        return sorted(hits)

    @property
    def is_finite(self):
        return not self.progressions

    @property
    def max_element(self):
        if self.progressions:
            raise ValueError("infinite gap set has no maximum")
        return self.sporadic[-1]

    @property
    def min_element(self):
        return min(list(self.sporadic[:1]) + [a for a, _ in self.progressions])

    def canonical_form(self) -> tuple[int, int, tuple[int, ...]]:
        """Return ``(threshold, period, residues)``.

        For every n >= threshold, n is in S iff ``(n - threshold) % period`` is
        one of ``residues``.  Period is 1 and residues empty for a finite set.
        """
        threshold = max([e + 1 for e in self.sporadic] + [a for a, _ in self.progressions] + [0])
        if not self.progressions:
            return threshold, 1, ()
        period = reduce(_lcm, (d for _, d in self.progressions))
        residues = tuple(r for r in range(period) if self.contains(threshold + r))
        return threshold, period, residues

    def __eq__(self, other):
        return (isinstance(other, EventuallyPeriodicGapSet)
                and self.sporadic == other.sporadic and self.progressions == other.progressions)

    def __hash__(self):
        return hash(("ep", self.sporadic, self.progressions))

    def __repr__(self):
        return f"EventuallyPeriodicGapSet({set(self.sporadic) or '{}'}, {list(self.progressions)})"


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


NAMED_PREDICATES: dict[str, Callable[[int], bool]] = {
    "primes": _is_prime,
    "powers-of-2": _is_power_of_two,
    "squares": _is_square,
}


class PredicateGapSet(GapSet):
    """Gap set given by a membership test, trusted only up to ``enumeration_bound``.

    ``infinite`` declares whether S has elements past the bound.  A predicate
    declared finite is taken to have all its elements at or below the bound.
    """

    kind = "predicate"

    def __init__(self, membership: Callable[[int], bool], enumeration_bound: int, name: str,
                 infinite: bool = True):
        if enumeration_bound < 1:
            raise ValueError("enumeration_bound must be positive")
        self.membership = membership
        self.enumeration_bound = int(enumeration_bound)
        self.name = name
        self.infinite = bool(infinite)
        self._known: list[int] = []
        self._scanned = -1
        self._lock = threading.Lock()
        if self._first_at_least(0) is None:
            raise ValueError(f"predicate {name!r} has no elements up to {enumeration_bound}")

    @classmethod
    def named(cls, name: str, enumeration_bound: int = 10**6, infinite: bool = True):
        try:
            fn = NAMED_PREDICATES[name]
        except KeyError:
            raise ValueError(f"unknown predicate {name!r}; known: {sorted(NAMED_PREDICATES)}") from None
        return cls(fn, enumeration_bound, name, infinite)

    def _check(self, n):
        if n > self.enumeration_bound:
            raise QueryBeyondBound(n, self.enumeration_bound)

    def _scan_to(self, N):
        with self._lock:
            if N <= self._scanned:
                return
            for n in range(self._scanned + 1, N + 1):
                if self.membership(n):
                    self._known.append(n)
            self._scanned = N

    def _first_at_least(self, length):
        # grow the scanned window geometrically
        hi = max(length, 16)
        while True:
            hi = min(hi, self.enumeration_bound)
            self._scan_to(hi)
            i = bisect.bisect_left(self._known, length)
            if i < len(self._known):
                return self._known[i]
            if hi == self.enumeration_bound:
                return None
            hi *= 2

    def contains(self, n):
        if n < 0:
            return False
        self._check(n)
        if n <= self._scanned:
            i = bisect.bisect_left(self._known, n)
            return i < len(self._known) and self._known[i] == n
        return bool(self.membership(n))

    def elements_upto(self, N):
        self._check(N)
        self._scan_to(N)
        return self._known[:bisect.bisect_right(self._known, N)]

    @property
    def is_finite(self):
        return not self.infinite

    @property
    def max_element(self):
        if self.infinite:
            raise ValueError("infinite gap set has no maximum")
        return self.elements_upto(self.enumeration_bound)[-1]

    @property
    def min_element(self):
        return self._first_at_least(0)

    def has_element_at_least(self, length):
        if length <= 0 or self.infinite:
            return True
        return self._first_at_least(length) is not None

    def least_element_at_least(self, length):
        found = self._first_at_least(max(length, 0))
        if found is None and self.infinite:
            raise QueryBeyondBound(length, self.enumeration_bound)
        return found

    def __repr__(self):
        return (f"PredicateGapSet({self.name!r}, bound={self.enumeration_bound}, "
                f"infinite={self.infinite})")


def gapset_contains(S: GapSet, n: int) -> bool:
    return S.contains(n)


def gapset_elements_upto(S: GapSet, N: int) -> list[int]:
    return S.elements_upto(N)
