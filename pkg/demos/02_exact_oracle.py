"""
Checking the formula against an absorbing Markov chain
======================================================

Reading a stream through the pattern's failure automaton is a Markov chain
whose last state absorbs.  Solving its hitting-time equations exactly gives
an answer that never looks at borders.
"""

from patternwait import Distribution, build_automaton, expectation, hitting_time_oracle, hitting_times
from patternwait.oracles import absorbing_system

d = Distribution.of("1/2", "1/3", "1/6")
w = (0, 1, 0, 2, 0, 1)

auto = build_automaton(w, d.r)
for state, row in enumerate(auto.transition):
    print(state, row)

# %%
# The linear system (I - Q) t = 1 over the transient states.
system = absorbing_system(auto, d)
print(system.dimension, "unknowns")

# %%
# Expected remaining time from every state, and agreement with the chain sum.
t = hitting_times(w, d)
print([str(v) for v in t])
print(hitting_time_oracle(w, d) == expectation(w, d))

# %%
# The value from state s equals E(w) - E(w[:s]).
print(all(t[s] == expectation(w, d) - expectation(w[:s], d) for s in range(len(w) + 1)))
