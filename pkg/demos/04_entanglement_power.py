"""Average entanglement a beam splitter generates from random product states."""

import numpy as np

from permnet import BeamSplitter, entanglement_power_mc, qubit_power_analytic

print(" per    Monte Carlo            closed form")
for per in np.linspace(0.0, 1.0, 6):
    u = BeamSplitter.from_permanent(per).matrix
    est = entanglement_power_mc(u, 1, 200_000, seed=4)
    print(f"{per:4.1f}   {est.mean:.4f} +- {est.std_error:.4f}   {qubit_power_analytic(per):.4f}")

# Larger input cutoffs have no closed form here; sample them.
for N in (2, 3):
    est = entanglement_power_mc(BeamSplitter.balanced().matrix, N, 100_000, seed=4)
    print(f"N={N}, balanced: {est.mean:.4f} +- {est.std_error:.4f}")
