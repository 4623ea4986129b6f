"""The language B(X_w(S)): membership, enumeration, counting, gap decomposition, bridges.

A word b over {0..k} is split at its markers into head, internal gaps and
tail.  It is allowed iff every internal gap is a factor of w whose length
lies in S, and the head and tail (or the whole word, if it has no marker)
are factors of w that fit inside some gap of admissible length.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import SYMBOLS, ShiftSpec
from .errors import BudgetExceeded, NotInLanguage

DEFAULT_BUDGET = 3 ** 14


@dataclass(frozen=True)
class GapDecomposition:
    head: str
    internal_gaps: tuple[str, ...]
    tail: Optional[str]
    zero_count: int

    def reassemble(self) -> str:
        if self.tail is None:
            return self.head
        return "0".join((self.head, *self.internal_gaps, self.tail))


@dataclass(frozen=True)
class GeneratorWord:
    """A generator u0 of the coded system, with u a factor of w and |u| in S."""

    content: str

    @property
    def gap(self) -> str:
        return self.content[:-1]


def _check_symbols(spec: ShiftSpec, b: str) -> bool:
    """False if b uses a letter above k; ValueError on characters outside the symbol table."""
    indices = [SYMBOLS.find(c) for c in set(b)]
    if min(indices, default=0) < 0:
        bad = sorted(c for c in set(b) if c not in SYMBOLS)
        raise ValueError(f"symbols {bad!r} are not part of any alphabet")
    return max(indices, default=0) <= spec.k


def is_allowed(spec: ShiftSpec, b: str) -> bool:
    """Whether ``b`` belongs to B(X_w(S))."""
    if not _check_symbols(spec, b):
        return False
    S, w = spec.gap_set, spec.factor_source
    parts = b.split("0")
    if len(parts) == 1:
        return w.is_factor(b) and S.has_element_at_least(len(b))
    for gap in parts[1:-1]:
        if not (S.contains(len(gap)) and w.is_factor(gap)):
            return False
    for end in (parts[0], parts[-1]):
        if not (w.is_factor(end) and S.has_element_at_least(len(end))):
            return False
    return True


def enumerate_words(spec: ShiftSpec, n: int, budget: int = DEFAULT_BUDGET,
                    prune: bool = True) -> list[str]:
    """All allowed words of length n, in lexicographic order.

    With ``prune`` the search extends only allowed prefixes, which is exact
    because the language is factorial; without it every word of
    {0..k}^n is tested.
    """
    if n < 1:
        raise ValueError("n must be positive")
    alphabet = spec.alphabet
    if len(alphabet) ** n > budget:
        raise BudgetExceeded(f"(k+1)^n = {len(alphabet)}^{n} exceeds budget {budget}")
    if not prune:
        return [b for b in map("".join, product(alphabet, repeat=n)) if is_allowed(spec, b)]
    level = [""]
    for _ in range(n):
        level = [u + c for u in level for c in alphabet if is_allowed(spec, u + c)]
    return level


def _weights(spec: ShiftSpec, n: int):
    """Internal-gap weights g(l) = phi(l)[l in S] and boundary weights h(l)."""
    S, w = spec.gap_set, spec.factor_source
    g = [w.complexity(l) if S.contains(l) else 0 for l in range(n + 1)]
    h = [w.complexity(l) if S.has_element_at_least(l) else 0 for l in range(n + 1)]
    return g, h


def count_words(spec: ShiftSpec, n: int) -> int:
    """|B_n(X_w(S))| by convolution over head . 0 . (gap 0)* . tail, exact integers."""
    if n < 1:
        raise ValueError("n must be positive")
    g, h = _weights(spec, n)
    # chains[m]: words of length m made of blocks "gap 0"
    chains = [1] + [0] * n
    for m in range(1, n + 1):
        chains[m] = sum(g[l] * chains[m - l - 1] for l in range(m))
    head_chain = [sum(h[i] * chains[m - i] for i in range(m + 1)) for m in range(n)]
    return h[n] + sum(head_chain[n - 1 - j] * h[j] for j in range(n))


def concatenation_counts(spec: ShiftSpec, n_max: int, j_max: int) -> list[list[int]]:
    """Table ``A[j][n] = |A_n^j|`` for 0 <= j <= j_max, 0 <= n <= n_max.

    A_n^j is the set of length-n words that are concatenations of exactly j
    generators u0; A_0^0 = {empty word}.
    """
    g, _ = _weights(spec, n_max)
    table = [[0] * (n_max + 1) for _ in range(j_max + 1)]
    table[0][0] = 1
    for j in range(1, j_max + 1):
        prev, row = table[j - 1], table[j]
        for n in range(1, n_max + 1):
            row[n] = sum(g[l] * prev[n - l - 1] for l in range(n))
    return table


def count_exact_concatenations(spec: ShiftSpec, n: int, j: int) -> int:
    if n < 0 or j < 0:
        raise ValueError("n and j must be non-negative")
    return concatenation_counts(spec, n, j)[j][n]


def generator_words(spec: ShiftSpec, max_gap: int) -> list[GeneratorWord]:
    S, w = spec.gap_set, spec.factor_source
    return [GeneratorWord(u + "0") for n in S.elements_upto(max_gap) for u in w.sorted_factors(n)]


def decompose(spec: ShiftSpec, b: str) -> GapDecomposition:
    if not is_allowed(spec, b):
        raise NotInLanguage(f"{b!r} is not in the language")
    parts = b.split("0")
    if len(parts) == 1:
        return GapDecomposition(b, (), None, 0)
    return GapDecomposition(parts[0], tuple(parts[1:-1]), parts[-1], len(parts) - 1)


def bridge(spec: ShiftSpec, u: str, v: str) -> tuple[str, str]:
    """Words (t, s) with u t 0 s v allowed.

    t completes the marker-free suffix of u to a full gap of admissible
    length (or is a whole shortest gap when u ends in a marker); s does the
    same on the left of v.  Marker 0 is synchronizing, so the two halves
    glue.
    """
    for x in (u, v):
        if not is_allowed(spec, x):
            raise NotInLanguage(f"{x!r} is not in the language")
    S, w = spec.gap_set, spec.factor_source
    shortest = w.sorted_factors(S.min_element)[0]

    if not u:
        t = ""
    elif u.endswith("0"):
        t = shortest
    else:
        suffix = u.rsplit("0", 1)[-1]
        n = S.least_element_at_least(len(suffix))
        t = w.extend_right(suffix, n)[len(suffix):]

    if not v:
        s = ""
    elif v.startswith("0"):
        s = shortest
    else:
        prefix = v.split("0", 1)[0]
        n = S.least_element_at_least(len(prefix))
        s = w.extend_left(prefix, n)[:n - len(prefix)]

    joined = u + t + "0" + s + v
    if not is_allowed(spec, joined):  # pragma: no cover - would falsify irreducibility
        raise AssertionError(f"bridge produced a forbidden word {joined!r}")
    return t, s


def random_allowed_word(spec: ShiftSpec, length: int, rng, start: str = "",
                        side: str = "right") -> str:
    """Grow ``start`` to ``length`` symbols by random allowed one-symbol extensions."""
    word = start
    alphabet = spec.alphabet
    while len(word) < length:
        if side == "right":
            options = [word + c for c in alphabet if is_allowed(spec, word + c)]
        else:
            options = [c + word for c in alphabet if is_allowed(spec, c + word)]
        if not options:  # pragma: no cover - languages of shift spaces are extendable
            raise AssertionError(f"{word!r} cannot be extended")
        word = options[int(rng.integers(len(options)))]
    return word
