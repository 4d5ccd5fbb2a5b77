"""Permanents three ways, and why unitaries keep them inside the unit disk."""

import time

import numpy as np

from permnet import haar_random_unitary, per_glynn, per_naive, per_ryser

rng = np.random.default_rng(1)

# The three evaluators agree on a random complex matrix.
m = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
for fn in (per_naive, per_ryser, per_glynn):
    t0 = time.perf_counter()
    value = fn(m)
    print(f"{fn.__name__:10s} {value:.10f}  ({1e3 * (time.perf_counter() - t0):.1f} ms)")

# Ryser and Glynn scale as n 2^n, the naive sum as n!.
for n in (12, 16, 20):
    a = rng.standard_normal((n, n))
    t0 = time.perf_counter()
    per_glynn(a)
    print(f"n={n}: glynn {time.perf_counter() - t0:.3f} s")

# |per U| <= 1 for every unitary U.
worst = max(abs(per_ryser(haar_random_unitary(n, s))) for n in range(2, 7) for s in range(200))
print(f"largest |per U| over 1000 Haar unitaries: {worst:.4f}")
