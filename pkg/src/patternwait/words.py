"""Alphabets, letter distributions, words, borders and the pattern automaton.

A word is a plain tuple of letter indices ``0..r-1``; the empty tuple is the
empty word.  Display symbols only matter at the edges (see :class:`Alphabet`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


class WordError(ValueError):
    """Raised for malformed words or words violating an operation's length rule."""


class DistributionError(ValueError):
    """Raised when letter probabilities are not a valid distribution."""


@dataclass(frozen=True)
class Alphabet:
    """Display symbols for the letters ``0..r-1``."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(symbols) < 2:
            raise WordError(f"an alphabet needs at least 2 letters, got {len(symbols)}")
        if len(set(symbols)) != len(symbols):
            raise WordError(f"alphabet symbols must be distinct: {list(symbols)}")
        if any(not s for s in symbols):
            raise WordError("alphabet symbols must be nonempty strings")

    @classmethod
    def digits(cls, r: int) -> "Alphabet":
        return cls(tuple(str(i) for i in range(r)))

    @property
    def r(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise WordError(f"unknown symbol {symbol!r}; alphabet is {list(self.symbols)}") from None

    def parse(self, text: str) -> Word:
        """Turn display text into a word.

        Single-character alphabets are read character by character ("HTTH").
        Otherwise symbols must be separated by commas or whitespace.
        """
        text = text.strip()
        if not text:
            return EMPTY
        if all(len(s) == 1 for s in self.symbols) and not any(c in text for c in ", \t"):
            tokens = list(text)
        else:
            tokens = [t for t in text.replace(",", " ").split() if t]
        return tuple(self.index(t) for t in tokens)

    def format(self, word: Sequence[int]) -> str:
        sep = "" if all(len(s) == 1 for s in self.symbols) else " "
        return sep.join(self.symbols[x] for x in word)


def parse_probability(value) -> Fraction:
    """Exact conversion of ``"a/b"``, ``"0.25"``, ints and Fractions.

    Binary floats are refused since they would smuggle in rounding error.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise DistributionError(f"probability {value!r} must be given exactly (as 'a/b' or a decimal string)")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DistributionError(f"cannot parse probability {value!r}") from None
    raise DistributionError(f"unsupported probability value {value!r}")


@dataclass(frozen=True)
class Distribution:
    """Strictly positive exact letter probabilities summing to one."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(parse_probability(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) < 2:
            raise DistributionError(f"need at least 2 letters, got {len(probs)}")
        for x, p in enumerate(probs):
            if p <= 0:
                raise DistributionError(f"p({x}) = {p} is not positive")
        total = sum(probs, Fraction(0))
        if total != 1:
            raise DistributionError(f"probabilities sum to {total}, not 1")

    @classmethod
    def uniform(cls, r: int) -> "Distribution":
        return cls(tuple(Fraction(1, r) for _ in range(r)))

    @classmethod
    def of(cls, *probs) -> "Distribution":
        return cls(tuple(probs))

    @property
    def r(self) -> int:
        return len(self.probs)

    def __getitem__(self, x: int) -> Fraction:
        return self.probs[x]

    def permuted(self, perm: Sequence[int]) -> "Distribution":
        """Distribution after relabelling letter ``x`` as ``perm[x]``."""
        out = [Fraction(0)] * self.r
        for x, p in enumerate(self.probs):
            out[perm[x]] = p
        return Distribution(tuple(out))


def as_word(letters: Iterable[int], r: int | None = None) -> Word:
    word = tuple(int(x) for x in letters)
    if r is not None:
        for x in word:
            if not 0 <= x < r:
                raise WordError(f"letter {x} outside alphabet 0..{r - 1}")
    return word


def failure_function(w: Sequence[int]) -> list[int]:
    """``fail[i]`` is the length of the longest bifix of ``w[:i+1]``."""
    n = len(w)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k > 0 and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def longest_bifix(w: Sequence[int]) -> Word:
    """Longest word other than ``w`` that is both a prefix and a suffix of ``w``."""
    w = tuple(w)
    if not w:
        raise WordError("the empty word has no bifix")
    return w[: failure_function(w)[-1]]


def border_chain(w: Sequence[int]) -> list[Word]:
    """``[w, bifix(w), bifix(bifix(w)), ..., ()]``."""
    w = tuple(w)
    if not w:
        return [EMPTY]
    fail = failure_function(w)
    chain = [w]
    k = len(w)
    while k > 0:
        k = fail[k - 1]
        chain.append(w[:k])
    return chain


def max_bifix_extension(w: Sequence[int], r: int) -> tuple[int, int]:
    """Letter ``x`` maximising the longest-bifix length of ``w[:-1] + (x,)``.

    Returns ``(x, n_x)``; ties go to the smallest letter.
    """
    w = tuple(w)
    if len(w) < 2:
        raise WordError(f"need a word of length >= 2, got length {len(w)}")
    head = w[:-1]
    best_x, best_n = 0, -1
    for y in range(r):
        n_y = len(longest_bifix(head + (y,)))
        if n_y > best_n:
            best_x, best_n = y, n_y
    return best_x, best_n


@dataclass(frozen=True)
class PatternAutomaton:
    """Failure automaton of one pattern.

    State ``i`` is the length of the longest suffix of the stream read so far
    that is a prefix of the pattern.  State ``len(pattern)`` is absorbing.
    """

    pattern: Word
    r: int
    transition: tuple[tuple[int, ...], ...]
    failure: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.pattern)

    def step(self, state: int, letter: int) -> int:
        return self.transition[state][letter]

    def first_occurrence(self, stream: Iterable[int]) -> int | None:
        """1-based time at which the pattern first completes, or None."""
        state = 0
        for t, y in enumerate(stream, start=1):
            state = self.transition[state][y]
            if state == self.n:
                return t
        return None

    def state_after(self, stream: Iterable[int]) -> int:
        state = 0
        for y in stream:
            state = self.transition[state][y]
        return state


def build_automaton(w: Sequence[int], r: int) -> PatternAutomaton:
    w = as_word(w, r)
    n = len(w)
    if n == 0:
        raise WordError("cannot build an automaton for the empty pattern")
    fail = failure_function(w)
    rows: list[tuple[int, ...]] = []
    for i in range(n):
        if i == 0:
            row = [0] * r
        else:
            row = list(rows[fail[i - 1]])
        row[w[i]] = i + 1
        rows.append(tuple(row))
    rows.append(tuple([n] * r))
    return PatternAutomaton(pattern=w, r=r, transition=tuple(rows), failure=tuple(fail))
