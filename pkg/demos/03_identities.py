"""
Exact identities over all words of a given length
=================================================

Averaging E(w) against p(w) over every word of length n gives r**n + n - 1
no matter what the letter probabilities are.  Extending a word by one random
letter adds 1 + (r - 1)/p(w) on average.
"""

from patternwait import Distribution, check_F1, check_F2, check_S_recurrence, sweep_lemma_checks

skewed = Distribution.of("1/2", "1/3", "1/6")

# %%
for n in range(6):
    res = check_F2(n, skewed)
    print(n, res.lhs, res.rhs, res.holds, f"{res.visited} words")

# %%
res = check_F1((0, 2, 0), skewed)
print(res.lhs, "==", res.rhs)
print(check_S_recurrence(4, skewed))

# %%
# Lemma sweeps return failures only; an empty list means every instance held.
print(sweep_lemma_checks(4, skewed))
