"""Exit criteria.  One line per criterion is printed in the terminal summary."""

import io
import json
from fractions import Fraction as F

import pytest

import brute
from conftest import BIASED, FAIR, THREE
from patternwait import (
    Distribution,
    check_F1,
    check_F2,
    expectation,
    expected_waiting_time,
    hitting_time_oracle,
    monte_carlo,
    sweep_lemma_checks,
)
from patternwait.cli import main

MC_SEED = 20261017
FAIR_CONFIG = '{"alphabet": ["H", "T"], "probabilities": ["1/2", "1/2"]}'

criterion = pytest.mark.criterion


def cli(*argv, stdin=FAIR_CONFIG):
    out = io.StringIO()
    code = main(list(argv), stdout=out, stdin=io.StringIO(stdin))
    return code, out.getvalue()


@criterion(1, "formula equals exact hitting-time oracle")
@pytest.mark.parametrize("d, max_len", [(FAIR, 10), (BIASED, 10), (THREE, 6)], ids=["fair-10", "biased-10", "three-6"])
def test_theorem_matches_oracle(d, max_len):
    mismatches = [
        w for w in brute.all_words(d.r, max_len, min_len=1)
        if expected_waiting_time(w, d).expectation != hitting_time_oracle(w, d)
    ]
    assert mismatches == []


@criterion(2, "classical fair-coin values 6, 4, 18")
@pytest.mark.parametrize("w, value", [((0, 0), 6), ((0, 1), 4), ((0, 1, 1, 0), 18)])
def test_classical_values(w, value):
    assert expectation(w, FAIR) == value
    assert hitting_time_oracle(w, FAIR) == value


@criterion(3, "F2 enumerated sum equals r^n + n - 1")
@pytest.mark.parametrize(
    "d, max_n",
    [
        (FAIR, 12),
        (BIASED, 12),
        (Distribution.uniform(3), 8),
        (THREE, 8),
    ],
    ids=["r2-uniform", "r2-biased", "r3-uniform", "r3-skewed"],
)
def test_F2(d, max_n):
    for n in range(max_n + 1):
        res = check_F2(n, d)
        assert res.visited == (d.r**n if n else 1)
        assert res.lhs == d.r**n + n - 1, n
        assert res.holds


@criterion(4, "F1 holds for every short word")
@pytest.mark.parametrize(
    "d, max_len",
    [(FAIR, 8), (BIASED, 8), (Distribution.uniform(3), 5), (THREE, 5)],
    ids=["r2-uniform", "r2-biased", "r3-uniform", "r3-skewed"],
)
def test_F1(d, max_len):
    failures = [w for w in brute.all_words(d.r, max_len) if not check_F1(w, d).holds]
    assert failures == []


@criterion(5, "Lemmas 1-4 hold for all binary words up to length 8")
@pytest.mark.parametrize("d", [FAIR, BIASED], ids=["fair", "biased"])
def test_lemma_sweeps(d):
    assert sweep_lemma_checks(8, d) == []


@criterion(6, "Monte Carlo within 4 standard errors, no truncation")
@pytest.mark.parametrize("w, value", [((0, 0), 6), ((0, 1, 1, 0), 18)])
def test_monte_carlo(w, value):
    est = monte_carlo(w, FAIR, 10**6, MC_SEED)
    assert est.trials == 10**6
    assert est.truncated_count == 0
    assert abs(est.mean - value) < 4 * est.std_error


@criterion(7, "simulate JSON is byte-identical across runs and worker counts")
def test_simulate_determinism():
    argv = ["simulate", "--config", "-", "--pattern", "HH", "--pattern", "HTTH", "--trials", "1000000", "--seed", str(MC_SEED)]
    runs = [cli(*argv), cli(*argv), cli(*argv, "--workers", "4")]
    assert all(code == 0 for code, _ in runs)
    assert runs[0][1] == runs[1][1] == runs[2][1]
    assert json.loads(runs[0][1])["results"][0]["seed"] == MC_SEED


@criterion(8, "CLI golden output and stable exit codes")
def test_cli_golden():
    code, text = cli("expect", "--config", "-", "--pattern", "HH", "--json")
    res = json.loads(text)["results"][0]
    assert code == 0
    assert res["expectation"] == "6/1"
    assert [F(t) for t in res["chain_terms"]] == [4, 2]

    code, text = cli("expect", "--config", "-", "--pattern", "", "--json")
    assert code == 0
    assert json.loads(text)["results"][0]["expectation"] == "0/1"

    code, text = cli("expect", "--config", "-", "--pattern", "HH", "--verify")
    assert code == 0 and "chain terms  [4, 2]" in text


@criterion(8, "CLI golden output and stable exit codes")
def test_cli_exit_codes(monkeypatch):
    import patternwait.cli as cli_mod
    from patternwait import identities

    assert cli("identities", "--config", "-", "--max-len", "2", "--n", "2")[0] == 0
    assert cli("expect", "--config", "-", "--pattern", "HZ")[0] == 2
    assert cli("expect", "--config", "-", "--pattern", "H", stdin='{"alphabet": ["H", "T"], "probabilities": ["1/2", "1/4"]}')[0] == 2

    monkeypatch.setattr(cli_mod, "hitting_time_oracle", lambda w, d: F(-1))
    assert cli("expect", "--config", "-", "--pattern", "HH", "--verify")[0] == 3

    real = identities.sibling_relation_rhs
    monkeypatch.setattr(identities, "sibling_relation_rhs", lambda w, x, d: real(w, x, d) + 1)
    assert cli("identities", "--config", "-", "--max-len", "2", "--n", "2")[0] == 4
