"""Factor languages of the bi-infinite word w over the letters 1..k.

Words are Python strings over :data:`SYMBOLS`; symbol ``i`` is ``SYMBOLS[i]``
and ``"0"`` is reserved for the gap marker of the shift.  Only the factor
language of w is ever represented, never w itself.
"""

from __future__ import annotations

import threading
from typing import Mapping

from ..errors import NotAFactor, NotPrimitive

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_ALPHABET = len(SYMBOLS) - 1


def letters_of(k: int) -> str:
    if not 1 <= k <= MAX_ALPHABET:
        raise ValueError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {k}")
    return SYMBOLS[1:k + 1]


class FactorSource:
    kind = "abstract"

    def __init__(self, alphabet_size: int):
        self.alphabet_size = int(alphabet_size)
        self.letters = letters_of(self.alphabet_size)
        self._letter_set = frozenset(self.letters)
        self._sets: dict[int, frozenset[str]] = {}
        self._sorted: dict[int, tuple[str, ...]] = {}
        self._lock = threading.Lock()

    # subclasses implement this; results are cached below
    def _compute_factors(self, n: int) -> frozenset[str]:
        raise NotImplementedError

    def factor_set(self, n: int) -> frozenset[str]:
        """B_n(w), the length-n factors of w."""
        if n < 0:
            raise ValueError("n must be non-negative")
        found = self._sets.get(n)
        if found is None:
            found = self._compute_factors(n)
            with self._lock:
                self._sets.setdefault(n, found)
        return found

    def sorted_factors(self, n: int) -> tuple[str, ...]:
        found = self._sorted.get(n)
        if found is None:
            found = tuple(sorted(self.factor_set(n)))
            with self._lock:
                self._sorted.setdefault(n, found)
        return found

    def complexity(self, n: int) -> int:
        """phi_w(n), the number of distinct length-n factors."""
        return len(self.factor_set(n))

    def is_factor(self, word: str) -> bool:
        return word in self.factor_set(len(word))

    def extend_right(self, f: str, target_len: int) -> str:
        """Lexicographically least factor of length ``target_len`` with prefix ``f``.

        Greedy choice is exact: every factor of a bi-infinite word has a
        right extension, so no branch dead-ends.
        """
        if not self.is_factor(f):
            raise NotAFactor(f"{f!r} is not a factor of w")
        if target_len < len(f):
            raise ValueError("target_len shorter than the word")
        g = f
        while len(g) < target_len:
            for c in self.letters:
                if self.is_factor(g + c):
                    g += c
                    break
            else:  # pragma: no cover - impossible for a factorial, extendable language
                raise AssertionError(f"factor {g!r} has no right extension")
        return g

    def extend_left(self, f: str, target_len: int) -> str:
        """Left-extension counterpart of :meth:`extend_right` (least letter prepended first)."""
        if not self.is_factor(f):
            raise NotAFactor(f"{f!r} is not a factor of w")
        if target_len < len(f):
            raise ValueError("target_len shorter than the word")
        g = f
        while len(g) < target_len:
            for c in self.letters:
                if self.is_factor(c + g):
                    g = c + g
                    break
            else:  # pragma: no cover
                raise AssertionError(f"factor {g!r} has no left extension")
        return g

    def random_factor(self, n: int, rng) -> str:
        """A uniformly random element of B_n(w), drawn with a numpy Generator."""
        pool = self.sorted_factors(n)
        return pool[int(rng.integers(len(pool)))]


class Periodic(FactorSource):
    """w = u^infinity; ``u`` is reduced to its minimal period on construction."""

    kind = "periodic"

    def __init__(self, word: str, alphabet_size: int | None = None):
        if not word:
            raise ValueError("periodic word must be non-empty")
        if alphabet_size is None:
            alphabet_size = max(SYMBOLS.index(c) for c in word)
        super().__init__(alphabet_size)
        bad = set(word) - self._letter_set
        if bad:
            raise ValueError(f"letters {sorted(bad)} not in 1..{alphabet_size}")
        self.word = _primitive_root(word)
        self.minimal_period = len(self.word)

    def _compute_factors(self, n):
        p = self.minimal_period
        text = self.word * (n // p + 2)
        return frozenset(text[i:i + n] for i in range(p))

    def complexity(self, n):
        if n >= 1 and n >= self.minimal_period - 1:
            return self.minimal_period
        return super().complexity(n)

    def is_factor(self, word):
        if not set(word) <= self._letter_set:
            return False
        return word in self.word * (len(word) // self.minimal_period + 2)

    def __eq__(self, other):
        return (isinstance(other, Periodic) and self.word == other.word
                and self.alphabet_size == other.alphabet_size)

    def __hash__(self):
        return hash(("periodic", self.word, self.alphabet_size))

    def __repr__(self):
        return f"Periodic({self.word!r}, k={self.alphabet_size})"


def _primitive_root(word: str) -> str:
    p = len(word)
    for d in range(1, p + 1):
        if p % d == 0 and word[:d] * (p // d) == word:
            return word[:d]
    return word  # pragma: no cover


class FullShift(FactorSource):
    """Every word over 1..k is a factor, so phi(n) = k**n."""

    kind = "full_shift"

    def _compute_factors(self, n):
        words = [""]
        for _ in range(n):
            words = [u + c for u in words for c in self.letters]
        return frozenset(words)

    def complexity(self, n):
        return self.alphabet_size ** n

    def is_factor(self, word):
        return set(word) <= self._letter_set

    def random_factor(self, n, rng):
        idx = rng.integers(self.alphabet_size, size=n)
        return "".join(self.letters[i] for i in idx)

    def __eq__(self, other):
        return isinstance(other, FullShift) and self.alphabet_size == other.alphabet_size

    def __hash__(self):
        return hash(("full", self.alphabet_size))

    def __repr__(self):
        return f"FullShift(k={self.alphabet_size})"


class Substitution(FactorSource):
    """Factor language of a primitive substitution.

    ``rules`` maps each letter to a non-empty image word.  The ``primitive``
    flag is the caller's assertion; it is verified on construction and
    factor queries refuse to run without it.
    """

    kind = "substitution"

    def __init__(self, rules: Mapping[str, str], seed: str | None = None, primitive: bool = True,
                 alphabet_size: int | None = None):
        rules = {str(a): str(b) for a, b in rules.items()}
        if alphabet_size is None:
            alphabet_size = len(rules)
        super().__init__(alphabet_size)
        if set(rules) != self._letter_set:
            raise ValueError(f"rules must cover exactly the letters {self.letters!r}")
        for a, img in rules.items():
            if not img:
                raise ValueError(f"image of {a!r} is empty")
            if not set(img) <= self._letter_set:
                raise ValueError(f"image of {a!r} uses letters outside 1..{alphabet_size}")
        self.rules = dict(sorted(rules.items()))
        self.seed = seed if seed is not None else self.letters[0]
        if self.seed not in self._letter_set:
            raise ValueError(f"seed {self.seed!r} is not a letter")
        self.primitive = bool(primitive)
        if self.primitive and not is_primitive(self.rules):
            raise NotPrimitive(f"substitution {self.rules} is not primitive")
        self._pairs: frozenset[str] | None = None
        self._counts: list[int] = []

    def apply(self, word: str, times: int = 1) -> str:
        for _ in range(times):
            word = "".join(self.rules[c] for c in word)
        return word

    def two_factors(self) -> frozenset[str]:
        """All length-2 factors: the closure of in-image pairs under straddling images."""
        if self._pairs is None:
            pairs = set()
            for img in self.rules.values():
                pairs.update(img[i:i + 2] for i in range(len(img) - 1))
            frontier = list(pairs)
            while frontier:
                cd = frontier.pop()
                img = self.rules[cd[0]] + self.rules[cd[1]]
                for i in range(len(img) - 1):
                    pair = img[i:i + 2]
                    if pair not in pairs:
                        pairs.add(pair)
                        frontier.append(pair)
            self._pairs = frozenset(pairs)
        return self._pairs

    def _constant(self) -> bool:
        # only k = 1 with 1 -> 1 is primitive among length-preserving rules
        return all(len(img) == 1 for img in self.rules.values())

    def _covering_texts(self, n):
        """Words sigma^j(c) sigma^j(d), cd in L_2, with every block of length >= n.

        A length-n window of any long iterate then sits inside one of them.
        """
        blocks = {c: c for c in self.letters}
        while min(len(b) for b in blocks.values()) < n:
            blocks = {c: self.apply(b) for c, b in blocks.items()}
        return [blocks[cd[0]] + blocks[cd[1]] for cd in sorted(self.two_factors())]

    def _compute_factors(self, n):
        if not self.primitive:
            raise NotPrimitive("factor queries need a verified primitive substitution")
        if n == 0:
            return frozenset({""})
        if self._constant():
            return frozenset({self.letters[0] * n})
        out = set()
        for text in self._covering_texts(n):
            out.update(text[i:i + n] for i in range(len(text) - n + 1))
        return frozenset(out)

    def complexity(self, n):
        # long factors are counted without being stored
        if n <= 32 or self._constant():
            return super().complexity(n)
        if not self.primitive:
            raise NotPrimitive("factor queries need a verified primitive substitution")
        if n >= len(self._counts):
            bound = 64
            while bound <= n:
                bound *= 2
            counts = distinct_window_counts(self._covering_texts(bound), bound)
            with self._lock:
                if len(counts) > len(self._counts):
                    self._counts = counts
        return self._counts[n]

    def __repr__(self):
        return f"Substitution({self.rules}, seed={self.seed!r})"


def distinct_window_counts(texts, bound: int) -> list[int]:
    """c[n] = number of distinct length-n substrings over all ``texts``, n <= bound.

    Uses a generalized suffix automaton: each state stands for the substrings
    with lengths in (len(link), len], so the counts follow from a difference
    array over those intervals.
    """
    nxt: list[dict] = [{}]
    length = [0]
    link = [-1]

    def new_state(ln, trans, lk):
        nxt.append(trans)
        length.append(ln)
        link.append(lk)
        return len(nxt) - 1

    def split(p, q, c):
        clone = new_state(length[p] + 1, dict(nxt[q]), link[q])
        while p != -1 and nxt[p].get(c) == q:
            nxt[p][c] = clone
            p = link[p]
        link[q] = clone
        return clone

    for text in texts:
        last = 0
        for c in text:
            q = nxt[last].get(c)
            if q is not None:
                last = q if length[last] + 1 == length[q] else split(last, q, c)
                continue
            cur = new_state(length[last] + 1, {}, 0)
            p = last
            while p != -1 and c not in nxt[p]:
                nxt[p][c] = cur
                p = link[p]
            if p != -1:
                q = nxt[p][c]
                link[cur] = q if length[p] + 1 == length[q] else split(p, q, c)
            last = cur

    diff = [0] * (bound + 2)
    for v in range(1, len(nxt)):
        lo = length[link[v]] + 1
        if lo <= bound:
            diff[lo] += 1
            diff[min(length[v], bound) + 1] -= 1
    counts, running = [1], 0
    for n in range(1, bound + 1):
        running += diff[n]
        counts.append(running)
    return counts


def is_primitive(rules: Mapping[str, str]) -> bool:
    """Some power of the substitution sends every letter to a word containing every letter."""
    letters = sorted(rules)
    step = {a: frozenset(rules[a]) for a in letters}
    reach = dict(step)
    full = frozenset(letters)
    seen = set()
    while True:
        if all(reach[a] == full for a in letters):
            return True
        key = tuple(reach[a] for a in letters)
        if key in seen:
            return False
        seen.add(key)
        reach = {a: frozenset().union(*(step[b] for b in reach[a])) for a in letters}


def factor_set(w: FactorSource, n: int) -> frozenset[str]:
    return w.factor_set(n)


def complexity(w: FactorSource, n: int) -> int:
    return w.complexity(n)


def extend_right(w: FactorSource, f: str, target_len: int) -> str:
    return w.extend_right(f, target_len)
