"""Exhaustive checks of the exact identities satisfied by E(w).

Every comparison is between exact rationals; nothing passes by tolerance.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .waiting import conditional_expected, expectation, sibling_relation_rhs, word_probability
from .words import EMPTY, Distribution, Word, as_word, longest_bifix, max_bifix_extension

DEFAULT_BUDGET = 1 << 20

ExpectationFn = Callable[[Sequence[int], Distribution], Fraction]


class Identity(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    S_RECURRENCE = "S_RECURRENCE"
    LEMMA1 = "LEMMA1"
    LEMMA2 = "LEMMA2"
    LEMMA3 = "LEMMA3"
    LEMMA4 = "LEMMA4"


class BudgetExceeded(RuntimeError):
    """The requested enumeration would visit more words than allowed."""


@dataclass(frozen=True)
class IdentityCheckResult:
    identity: Identity
    r: int
    distribution: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction
    word: Word | None = None
    n: int | None = None
    visited: int | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def counterexample(self) -> Word | None:
        if self.holds:
            return None
        return self.word if self.word is not None else EMPTY


def _result(identity, d, lhs, rhs, **kw) -> IdentityCheckResult:
    return IdentityCheckResult(identity, d.r, d.probs, Fraction(lhs), Fraction(rhs), **kw)


def _guard(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceeded(f"enumeration of {count} words exceeds budget {budget}")


def words_up_to(r: int, max_len: int, min_len: int = 0) -> Iterator[Word]:
    for n in range(min_len, max_len + 1):
        yield from itertools.product(range(r), repeat=n)


def check_F1(w: Sequence[int], d: Distribution, E: ExpectationFn = expectation) -> IdentityCheckResult:
    """sum_y p(y) E(wy)  vs  E(w) + 1 + (r-1)/p(w)."""
    w = as_word(w, d.r)
    lhs = sum((d[y] * E(w + (y,), d) for y in range(d.r)), Fraction(0))
    rhs = E(w, d) + 1 + (d.r - 1) / word_probability(w, d)
    return _result(Identity.F1, d, lhs, rhs, word=w)


def weighted_sum(n: int, d: Distribution, budget: int = DEFAULT_BUDGET) -> tuple[Fraction, int]:
    """``sum_{|w|=n} p(w) E(w)`` and the number of words visited.

    Walks the prefix tree depth first, extending the failure function and
    E(prefix) one letter at a time, so each word costs O(1) amortised work
    instead of a fresh border computation.
    """
    r = d.r
    _guard(r**n, budget)
    if n == 0:
        return Fraction(0), 1

    word = [0] * n
    fail = [0] * n
    exp = [Fraction(0)] * (n + 1)  # exp[k] = E(word[:k])
    inv_p = [Fraction(1)] * (n + 1)  # inv_p[k] = 1 / p(word[:k])
    total = Fraction(0)
    visited = 0

    def descend(k: int) -> None:
        nonlocal total, visited
        for y in range(r):
            word[k] = y
            if k == 0:
                b = 0
            else:
                b = fail[k - 1]
                while b > 0 and word[b] != y:
                    b = fail[b - 1]
                if word[b] == y:
                    b += 1
            fail[k] = b
            inv_p[k + 1] = inv_p[k] / d[y]
            exp[k + 1] = exp[b] + inv_p[k + 1]
            if k + 1 == n:
                total += exp[n] / inv_p[n]
                visited += 1
            else:
                descend(k + 1)

    descend(0)
    return total, visited


def check_F2(n: int, d: Distribution, budget: int = DEFAULT_BUDGET) -> IdentityCheckResult:
    """sum_{|w|=n} p(w) E(w)  vs  r^n + n - 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    lhs, visited = weighted_sum(n, d, budget)
    return _result(Identity.F2, d, lhs, d.r**n + n - 1, n=n, visited=visited)


def check_S_recurrence(n: int, d: Distribution, budget: int = DEFAULT_BUDGET) -> IdentityCheckResult:
    """S(n+1) - S(n)  vs  1 + (r-1) r^n, both sums enumerated."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _guard(d.r ** (n + 1), budget)
    s_n, _ = weighted_sum(n, d, budget)
    s_next, visited = weighted_sum(n + 1, d, budget)
    return _result(Identity.S_RECURRENCE, d, s_next - s_n, 1 + (d.r - 1) * d.r**n, n=n, visited=visited)


def lemma1_checks(w: Sequence[int], d: Distribution, E: ExpectationFn = expectation) -> list[IdentityCheckResult]:
    """E(w) = E(w | w1) + E(w1) for every proper prefix w1."""
    w = as_word(w, d.r)
    target = E(w, d)
    out = []
    for k in range(len(w)):
        w1 = w[:k]
        lhs = conditional_expected(w, w1, d) + E(w1, d)
        out.append(_result(Identity.LEMMA1, d, lhs, target, word=w, detail=f"split at {k}"))
    return out


def lemma2_check(w: Sequence[int], d: Distribution, E: ExpectationFn = expectation) -> IdentityCheckResult:
    """E(w) = E(w[:-1]) + 1 + sum_{y != last} p(y) E(w | w[:-1] y)."""
    w = as_word(w, d.r)
    head = w[:-1]
    rhs = E(head, d) + 1
    for y in range(d.r):
        if y != w[-1]:
            rhs += d[y] * conditional_expected(w, head + (y,), d)
    return _result(Identity.LEMMA2, d, E(w, d), rhs, word=w)


def lemma3_check(w: Sequence[int], x: int, d: Distribution, E: ExpectationFn = expectation) -> IdentityCheckResult:
    w = as_word(w, d.r)
    lhs = d[x] * E(w[:-1] + (x,), d)
    return _result(Identity.LEMMA3, d, lhs, sibling_relation_rhs(w, x, d), word=w, detail=f"x={x}")


def lemma4_checks(w: Sequence[int], r: int, d: Distribution) -> list[IdentityCheckResult]:
    """Parts (i)-(iii) for one word; lhs/rhs are 1/0 flags when a part fails."""
    w = as_word(w, r)
    head = w[:-1]
    x, n_x = max_bifix_extension(w, r)
    out = [
        _result(Identity.LEMMA4, d, int(n_x >= 1), 1, word=w, detail=f"(i) n_x={n_x}"),
        _result(
            Identity.LEMMA4, d,
            int(w[: n_x - 1] == longest_bifix(head)), 1,
            word=w, detail="(ii)",
        ),
    ]
    for y in range(r):
        if y != x:
            same = longest_bifix(head + (y,)) == longest_bifix(w[: n_x - 1] + (y,))
            out.append(_result(Identity.LEMMA4, d, int(same), 1, word=w, detail=f"(iii) y={y}"))
    return out


def sweep_F1(max_len: int, d: Distribution, budget: int = DEFAULT_BUDGET, E: ExpectationFn = expectation) -> list[IdentityCheckResult]:
    """F1 for every word of length <= max_len (the empty word included)."""
    _guard(sum(d.r**k for k in range(max_len + 1)), budget)
    return [check_F1(w, d, E) for w in words_up_to(d.r, max_len)]


def sweep_lemma_checks(
    max_len: int,
    d: Distribution,
    budget: int = DEFAULT_BUDGET,
    *,
    include_lemma12: bool = True,
    E: ExpectationFn = expectation,
) -> list[IdentityCheckResult]:
    """Run every lemma instance up to ``max_len`` and return only the failures.

    Lemma 3 runs for all ``(w, x)`` with ``1 <= |w|``; Lemma 4 needs
    ``|w| >= 2``.  ``E`` may be swapped to test that failures are caught.
    """
    _guard(sum(d.r**k for k in range(1, max_len + 1)), budget)
    failures = []
    for w in words_up_to(d.r, max_len, min_len=1):
        checks = [lemma3_check(w, x, d, E) for x in range(d.r)]
        if include_lemma12:
            checks += lemma1_checks(w, d, E)
            checks.append(lemma2_check(w, d, E))
        if len(w) >= 2:
            checks += lemma4_checks(w, d.r, d)
        failures.extend(c for c in checks if not c.holds)
    return failures


def count_lemma_checks(max_len: int, r: int, include_lemma12: bool = True) -> int:
    """How many individual instances :func:`sweep_lemma_checks` evaluates."""
    total = 0
    for n in range(1, max_len + 1):
        per = r
        if include_lemma12:
            per += n + 1
        if n >= 2:
            per += 2 + (r - 1)
        total += per * r**n
    return total
