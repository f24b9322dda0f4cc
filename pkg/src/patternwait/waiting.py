"""Exact expected waiting times for a pattern in an i.i.d. letter stream."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Sequence

from .words import (
    EMPTY,
    Distribution,
    Word,
    WordError,
    as_word,
    border_chain,
    build_automaton,
    longest_bifix,
)

_DISPLAY = Context(prec=12, rounding=ROUND_HALF_EVEN)


def decimal_hint(value: Fraction) -> str:
    """12 significant digits, round-half-even.  For display only."""
    q = _DISPLAY.divide(Decimal(value.numerator), Decimal(value.denominator))
    return format(q, "f") if abs(q.adjusted()) < 12 else str(q)


def word_probability(w: Sequence[int], d: Distribution) -> Fraction:
    """Product of the letter probabilities; 1 for the empty word."""
    p = Fraction(1)
    for x in w:
        p *= d[x]
    return p


@dataclass(frozen=True)
class WaitingTimeReport:
    word: Word
    p_w: Fraction
    expectation: Fraction
    # (v, 1/p(v)) for each nonempty word v of the border chain, longest first
    chain: tuple[tuple[Word, Fraction], ...] = field(default=())

    @property
    def decimal_hint(self) -> str:
        return decimal_hint(self.expectation)


def expected_waiting_time(w: Sequence[int], d: Distribution) -> WaitingTimeReport:
    """E(w) as the sum of ``1/p(v)`` over the nonempty words of the border chain."""
    w = as_word(w, d.r)
    terms = tuple((v, 1 / word_probability(v, d)) for v in border_chain(w) if v)
    return WaitingTimeReport(
        word=w,
        p_w=word_probability(w, d),
        expectation=sum((t for _, t in terms), Fraction(0)),
        chain=terms,
    )


def expectation(w: Sequence[int], d: Distribution) -> Fraction:
    return expected_waiting_time(w, d).expectation


def expectation_recursive(w: Sequence[int], d: Distribution) -> Fraction:
    """Same value as :func:`expectation`, evaluated one bifix step at a time."""
    w = tuple(w)
    if not w:
        return Fraction(0)
    return expectation_recursive(longest_bifix(w), d) + 1 / word_probability(w, d)


@dataclass(frozen=True)
class ConditionalResult:
    value: Fraction
    state: int
    # True when the pattern already occurs inside the history
    occurred: bool


def conditional(w: Sequence[int], history: Sequence[int], d: Distribution) -> ConditionalResult:
    w = as_word(w, d.r)
    history = as_word(history, d.r)
    if not w:
        raise WordError("conditional waiting time needs a nonempty pattern")
    auto = build_automaton(w, d.r)
    hit = auto.first_occurrence(history)
    if hit is not None:
        return ConditionalResult(Fraction(hit - len(history)), auto.n, True)
    state = auto.state_after(history)
    value = expectation(w, d) - expectation(w[:state], d)
    return ConditionalResult(value, state, False)


def conditional_expected(w: Sequence[int], history: Sequence[int], d: Distribution) -> Fraction:
    """Expected value of ``T_w(history + X) - len(history)``.

    If ``w`` already occurs inside ``history`` the answer is deterministic and
    at most zero.
    """
    return conditional(w, history, d).value


def sibling_relation_rhs(w: Sequence[int], x: int, d: Distribution) -> Fraction:
    """``E(w[:-1]) + 1 - sum_{y != x} p(y) E(bifix(w[:-1] + y))``.

    Should equal ``p(x) * E(w[:-1] + x)``.
    """
    w = as_word(w, d.r)
    if not w:
        raise WordError("sibling relation needs a nonempty word")
    if not 0 <= x < d.r:
        raise WordError(f"letter {x} outside alphabet 0..{d.r - 1}")
    head = w[:-1]
    total = expectation(head, d) + 1
    for y in range(d.r):
        if y != x:
            total -= d[y] * expectation(longest_bifix(head + (y,)), d)
    return total


__all__ = [
    "EMPTY",
    "ConditionalResult",
    "WaitingTimeReport",
    "conditional",
    "conditional_expected",
    "decimal_hint",
    "expectation",
    "expectation_recursive",
    "expected_waiting_time",
    "sibling_relation_rhs",
    "word_probability",
]
