"""
Expected waiting time for a pattern
===================================

How long, on average, until ``HTTH`` shows up in a run of fair coin flips?
The answer depends on how the pattern overlaps itself, not just on its
probability.
"""

from fractions import Fraction

from patternwait import Alphabet, Distribution, border_chain, expected_waiting_time

coin = Alphabet(("H", "T"))
fair = Distribution.uniform(2)

# %%
# Every pattern of length 4 has probability 1/16, but the waiting times differ.
for text in ["HTTT", "HTTH", "HTHT", "HHHH"]:
    rep = expected_waiting_time(coin.parse(text), fair)
    print(f"{text}: E = {rep.expectation}")

# %%
# The extra time comes from the border chain: each word that is both a prefix
# and a suffix contributes the reciprocal of its probability.
w = coin.parse("HTHT")
print([coin.format(v) or "(empty)" for v in border_chain(w)])
for v, term in expected_waiting_time(w, fair).chain:
    print(f"  1/p({coin.format(v)}) = {term}")

# %%
# Biased coins work the same way; everything stays an exact fraction.
biased = Distribution.of(Fraction(1, 3), Fraction(2, 3))
rep = expected_waiting_time(coin.parse("HTH"), biased)
print(rep.expectation, "~", rep.decimal_hint)
