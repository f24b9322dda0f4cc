"""
Simulating waiting times
========================

A seeded simulation gives the same numbers on every machine and for any
number of worker threads, because each trial draws from its own Philox
counter stream.
"""

from patternwait import Distribution, expectation, monte_carlo

fair = Distribution.uniform(2)

# %%
for w in [(0, 0), (0, 1), (0, 1, 1, 0), (0, 0, 0, 0, 0)]:
    est = monte_carlo(w, fair, trials=200_000, seed=12345)
    exact = expectation(w, fair)
    z = (est.mean - float(exact)) / est.std_error
    print(w, f"exact={exact}", f"mean={est.mean:.4f}", f"se={est.std_error:.4f}", f"z={z:+.2f}")

# %%
a = monte_carlo((0, 1, 1, 0), fair, trials=50_000, seed=7)
b = monte_carlo((0, 1, 1, 0), fair, trials=50_000, seed=7, workers=4, block_size=1000)
print(a == b)
