from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from conftest import FAIR, THREE
from patternwait import Distribution, WordError, expectation, hitting_time_oracle, hitting_times, monte_carlo
from patternwait.oracles import (
    SingularSystemError,
    absorbing_system,
    bareiss_solve,
    letter_thresholds,
    philox4x64,
)
from patternwait.words import build_automaton


def gauss_jordan(matrix, rhs):
    """Textbook elimination over Fractions, for cross-checking Bareiss."""
    n = len(matrix)
    a = [[F(v) for v in row] + [F(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        a[c] = [v / a[c][c] for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return [row[n] for row in a]


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(fractions, min_size=n, max_size=n),
)))
def test_bareiss_matches_gauss_jordan(system):
    matrix, rhs = system
    try:
        expected = gauss_jordan(matrix, rhs)
    except StopIteration:
        with pytest.raises(SingularSystemError):
            bareiss_solve(matrix, rhs)
        return
    got = bareiss_solve(matrix, rhs)
    assert got == expected
    assert all(isinstance(v, F) for v in got)


def test_bareiss_pivots_and_singular():
    assert bareiss_solve([[0, 1], [1, 0]], [3, 4]) == [4, 3]
    with pytest.raises(SingularSystemError):
        bareiss_solve([[1, 2], [2, 4]], [1, 1])


@pytest.mark.parametrize(
    "w, d, expected",
    [
        ((0,), FAIR, F(2)),
        ((0, 0), FAIR, F(6)),
        ((0, 1), Distribution.of(F(1, 3), F(2, 3)), F(9, 2)),
    ],
)
def test_hitting_time_examples(w, d, expected):
    assert hitting_time_oracle(w, d) == expected


def test_hitting_time_hand_solved_system():
    # t0 = 1 + t0/2 + t1/2, t1 = 1 + t0/2
    system = absorbing_system(build_automaton((0, 0), 2), FAIR)
    assert system.matrix == ((F(1, 2), F(-1, 2)), (F(-1, 2), F(1)))
    assert hitting_times((0, 0), FAIR) == [6, 4, 0]


def test_hitting_time_rejects_empty():
    with pytest.raises(WordError):
        hitting_time_oracle((), FAIR)


@pytest.mark.parametrize("d, max_len", [(FAIR, 7), (THREE, 4)])
def test_state_vector_is_consistent(d, max_len):
    for w in brute.all_words(d.r, max_len, min_len=1):
        t = hitting_times(w, d)
        e = expectation(w, d)
        for s in range(len(w) + 1):
            assert t[s] == e - expectation(w[:s], d)


# -- Philox -----------------------------------------------------------------


@pytest.mark.parametrize(
    "key, counter",
    [
        ((0, 0), (0, 0, 0, 0)),
        ((1234, 0), (41, 0, 7, 0)),
        ((2**64 - 1, 2**63), (2**64 - 2, 5, 2**40, 2**64 - 1)),
    ],
)
def test_philox_matches_numpy(key, counter):
    gen = np.random.Philox(key=np.array(key, dtype=np.uint64), counter=np.array(counter, dtype=np.uint64))
    raw = [int(v) for v in gen.random_raw(4)]
    # numpy bumps the counter before producing the first block
    c = list(counter)
    c[0] = (c[0] + 1) % 2**64
    if c[0] == 0:
        c[1] += 1
    mine = philox4x64([np.array([v], dtype=np.uint64) for v in c], key)
    assert [int(v[0]) for v in mine] == raw


def test_letter_thresholds_exact():
    cuts = letter_thresholds(Distribution.of(F(1, 3), F(2, 3)))
    # ceil(2**64 / 3)
    assert [int(c) for c in cuts] == [-(-(2**64) // 3)]
    assert [int(c) for c in letter_thresholds(FAIR)] == [2**63]
    # u = 2**63 - 1 is below 1/2, u = 2**63 is not (half-open intervals)
    u = np.array([2**63 - 1, 2**63], dtype=np.uint64)
    assert np.searchsorted(letter_thresholds(FAIR), u, side="right").tolist() == [0, 1]


# -- Monte Carlo ------------------------------------------------------------


def test_monte_carlo_reproducible_and_chunking_free():
    a = monte_carlo((0, 1, 1), FAIR, 5000, seed=99)
    b = monte_carlo((0, 1, 1), FAIR, 5000, seed=99)
    c = monte_carlo((0, 1, 1), FAIR, 5000, seed=99, workers=3, block_size=777)
    assert a == b == c
    assert monte_carlo((0, 1, 1), FAIR, 5000, seed=100) != a


def test_monte_carlo_single_trial_is_at_least_length():
    for seed in range(20):
        est = monte_carlo((1, 0, 1), THREE, 1, seed)
        assert est.mean >= 3
        assert est.std_error == 0.0


def test_monte_carlo_close_to_exact():
    est = monte_carlo((0, 2), THREE, 200_000, seed=5)
    assert abs(est.mean - float(expectation((0, 2), THREE))) < 4 * est.std_error
    assert est.truncated_count == 0


def test_monte_carlo_truncation_is_surfaced():
    est = monte_carlo((0,) * 8, FAIR, 500, seed=1, max_steps=8)
    assert est.truncated_count > 400
    assert est.mean == 8.0


@pytest.mark.parametrize("kw", [dict(trials=0), dict(max_steps=1), dict(seed=-1), dict(seed=2**64)])
def test_monte_carlo_rejects(kw):
    args = dict(trials=10, seed=1, max_steps=None) | kw
    with pytest.raises(ValueError):
        monte_carlo((0, 1), FAIR, **args)
