"""Photons through a linear network: matrix elements are permanents."""

import numpy as np

from permnet import BeamSplitter, build_submatrix, matrix_element, transform_state

# Hong-Ou-Mandel: one photon in each port of a 50:50 splitter never exits one per port.
bs = BeamSplitter.balanced()
print("<1,1|U|1,1> =", matrix_element(bs.matrix, (1, 1), (1, 1)))
print(transform_state(bs.matrix, (1, 1)))

# Rows are repeated by the output occupation, columns by the input occupation.
u = np.arange(1, 10).reshape(3, 3)
print(build_submatrix(u, (2, 0, 1), (1, 1, 1)))

# A generic splitter on two photons in one port.
bs = BeamSplitter.from_permanent(0.3, t_phase=0.4, r_phase=-1.1)
out = transform_state(bs.matrix, (2, 0))
for occ, amp in out.items():
    print(occ, f"{amp:.6f}", f"p={abs(amp) ** 2:.6f}")
print("norm^2 =", out.norm2())
