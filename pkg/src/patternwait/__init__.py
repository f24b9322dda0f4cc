"""Exact expected waiting times until a pattern first occurs in i.i.d. data."""

from .identities import (
    BudgetExceeded,
    Identity,
    IdentityCheckResult,
    check_F1,
    check_F2,
    check_S_recurrence,
    sweep_F1,
    sweep_lemma_checks,
)
from .oracles import McEstimate, hitting_time_oracle, hitting_times, monte_carlo
from .waiting import (
    WaitingTimeReport,
    conditional_expected,
    expectation,
    expected_waiting_time,
    sibling_relation_rhs,
    word_probability,
)
from .words import (
    EMPTY,
    Alphabet,
    Distribution,
    DistributionError,
    PatternAutomaton,
    Word,
    WordError,
    border_chain,
    build_automaton,
    longest_bifix,
    max_bifix_extension,
)

__version__ = "0.1.0"
