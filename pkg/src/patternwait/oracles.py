"""Independent checks on the waiting-time formula.

``hitting_times`` solves the absorbing Markov chain of the pattern automaton
exactly; ``monte_carlo`` simulates it with a counter-based generator so the
result depends only on the seed and the trial indices.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .words import Distribution, PatternAutomaton, WordError, as_word, build_automaton


class SingularSystemError(ArithmeticError):
    """The linear system has no unique solution.  Never expected for a pattern chain."""


@dataclass(frozen=True)
class LinearSystem:
    """``matrix @ t = rhs`` over the transient states 0..n-1."""

    dimension: int
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]


def absorbing_system(auto: PatternAutomaton, d: Distribution) -> LinearSystem:
    """``(I - Q) t = 1`` where ``Q`` is the transient block of the letter chain."""
    n = auto.n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] += 1
        for y in range(auto.r):
            j = auto.step(i, y)
            if j < n:
                row[j] -= d[y]
        rows.append(tuple(row))
    return LinearSystem(n, tuple(rows), tuple(Fraction(1) for _ in range(n)))


def bareiss_solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Exact solve by fraction-free elimination.

    Each row is first scaled to integers; elimination then keeps every entry
    an integer (each step divides exactly by the previous pivot).
    """
    n = len(matrix)
    aug: list[list[int]] = []
    for row, b in zip(matrix, rhs):
        if len(row) != n:
            raise ValueError("matrix must be square")
        entries = [Fraction(v) for v in row] + [Fraction(b)]
        scale = math.lcm(*(e.denominator for e in entries))
        aug.append([int(e * scale) for e in entries])

    prev = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot_row is None:
            raise SingularSystemError(f"zero pivot in column {k}")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pk = aug[k][k]
        for i in range(k + 1, n):
            aik = aug[i][k]
            row_i, row_k = aug[i], aug[k]
            for j in range(k + 1, n + 1):
                num = row_i[j] * pk - aik * row_k[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
            row_i[k] = 0
        prev = pk

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def hitting_times(w: Sequence[int], d: Distribution) -> list[Fraction]:
    """Expected steps to absorption from every automaton state 0..n (the last is 0)."""
    auto = build_automaton(w, d.r)
    system = absorbing_system(auto, d)
    return bareiss_solve(system.matrix, system.rhs) + [Fraction(0)]


def hitting_time_oracle(w: Sequence[int], d: Distribution) -> Fraction:
    return hitting_times(w, d)[0]


# -- counter-based generator -------------------------------------------------
#
# Philox4x64-10 (Salmon et al., SC'11), identical to numpy.random.Philox's
# block function, vectorised over independent counters.

_M0 = np.uint64(0xD2E7470EE14C6C93)
_M1 = np.uint64(0xCA5A826395121157)
_W0 = np.uint64(0x9E3779B97F4A7C15)
_W1 = np.uint64(0xBB67AE8584CAA73B)
_LO32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)


def _mulhilo(a: np.uint64, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a_lo, a_hi = a & _LO32, a >> _S32
    b_lo, b_hi = b & _LO32, b >> _S32
    ll = a_lo * b_lo
    lh = a_lo * b_hi
    hl = a_hi * b_lo
    hh = a_hi * b_hi
    mid = (ll >> _S32) + (lh & _LO32) + (hl & _LO32)
    hi = hh + (lh >> _S32) + (hl >> _S32) + (mid >> _S32)
    return hi, a * b


def philox4x64(counter: Sequence[np.ndarray], key: tuple[int, int]) -> tuple[np.ndarray, ...]:
    """Ten Philox rounds on arrays of 4-word counters; returns four uint64 arrays."""
    x0, x1, x2, x3 = (np.asarray(c, dtype=np.uint64) for c in counter)
    k0, k1 = np.uint64(key[0]), np.uint64(key[1])
    with np.errstate(over="ignore"):
        for rnd in range(10):
            if rnd:
                k0 = k0 + _W0
                k1 = k1 + _W1
            hi0, lo0 = _mulhilo(_M0, x0)
            hi1, lo1 = _mulhilo(_M1, x2)
            x0, x1, x2, x3 = hi1 ^ x1 ^ k0, lo1, hi0 ^ x3 ^ k1, lo0
    return x0, x1, x2, x3


def letter_thresholds(d: Distribution) -> np.ndarray:
    """Integer cut points for mapping a uniform 64-bit draw ``u`` to a letter.

    Letter ``x`` is chosen when ``cum[x] <= u / 2**64 < cum[x+1]``; for an
    integer ``u`` this is ``ceil(cum * 2**64)`` compared exactly.
    """
    cuts = []
    cum = Fraction(0)
    for p in d.probs[:-1]:
        cum += p
        t = -((-cum.numerator << 64) // cum.denominator)
        if t < 1 << 64:
            cuts.append(t)
    return np.array(cuts, dtype=np.uint64)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int
    truncated_count: int
    max_steps: int


def default_max_steps(w: Sequence[int], d: Distribution) -> int:
    from .waiting import expectation

    if not w:
        return 10**7
    return 1000 * math.ceil(expectation(w, d))


def _simulate_block(
    table: np.ndarray,
    cuts: np.ndarray,
    key: tuple[int, int],
    start: int,
    stop: int,
    max_steps: int,
) -> tuple[int, int, int]:
    """Run trials ``start..stop-1``; return (sum of steps, sum of squares, truncated)."""
    n = table.shape[0] - 1
    trial = np.arange(start, stop, dtype=np.uint64)
    state = np.zeros(trial.shape, dtype=np.int64)
    zero = np.zeros(trial.shape, dtype=np.uint64)
    total = 0
    total_sq = 0
    step = 0
    words: tuple[np.ndarray, ...] = ()
    while trial.size and step < max_steps:
        lane = step % 4
        if lane == 0:
            block = np.full(trial.shape, step // 4, dtype=np.uint64)
            words = philox4x64((block, zero[: trial.size], trial, zero[: trial.size]), key)
        letters = np.searchsorted(cuts, words[lane], side="right")
        state = table[state, letters]
        step += 1
        done = state == n
        if done.any():
            k = int(done.sum())
            total += k * step
            total_sq += k * step * step
            keep = ~done
            trial, state = trial[keep], state[keep]
            words = tuple(wd[keep] for wd in words)
    truncated = int(trial.size)
    total += truncated * max_steps
    total_sq += truncated * max_steps * max_steps
    return total, total_sq, truncated


def monte_carlo(
    w: Sequence[int],
    d: Distribution,
    trials: int,
    seed: int,
    max_steps: int | None = None,
    *,
    workers: int = 1,
    block_size: int = 1 << 16,
) -> McEstimate:
    """Estimate E(w) from ``trials`` simulated streams.

    Trial ``t`` reads its letters from Philox with key ``(seed, 0)`` and
    counter ``(step // 4, 0, t, 0)``, so the outcome does not depend on
    ``workers`` or ``block_size``.  Streams still running after ``max_steps``
    letters count as ``max_steps`` and are reported in ``truncated_count``.
    """
    w = as_word(w, d.r)
    if not w:
        raise WordError("cannot simulate the empty pattern")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must fit in 64 unsigned bits")
    if max_steps is None:
        max_steps = default_max_steps(w, d)
    if max_steps < len(w):
        raise ValueError(f"max_steps={max_steps} is shorter than the pattern")

    auto = build_automaton(w, d.r)
    table = np.array(auto.transition, dtype=np.int64)
    cuts = letter_thresholds(d)
    key = (seed, 0)
    bounds = [(s, min(s + block_size, trials)) for s in range(0, trials, block_size)]

    def run(b):
        return _simulate_block(table, cuts, key, b[0], b[1], max_steps)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]

    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    truncated = sum(p[2] for p in parts)
    mean = Fraction(s1, trials)
    if trials > 1:
        var = Fraction(trials * s2 - s1 * s1, trials * (trials - 1))
        std_error = math.sqrt(var / trials)
    else:
        std_error = 0.0
    return McEstimate(
        mean=float(mean),
        std_error=std_error,
        trials=trials,
        seed=seed,
        truncated_count=truncated,
        max_steps=max_steps,
    )
