"""
Reproducing from a single slice
===============================

The second-kind kernel K(q, r) = (1/pi) sum (n+1) q^n conj(r)^n extends the
disk kernel off the slice, so an integral over one disk recovers f anywhere
in the ball.
"""

# %%
import numpy as np

from qsb import (
    Frame,
    SliceSeries,
    build_disk_rule,
    second_kind_components,
    second_kind_eval,
    slice_reproduce,
)

frame = Frame.standard()
rule = build_disk_rule(32, 64, frame)
F = SliceSeries(np.array([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 1, 0.0]]))  # q^2 (1 + e2)
q = np.array([0.3, 0.4 / np.sqrt(2), 0.4 / np.sqrt(2), 0])
print("reproduced:", slice_reproduce(F, q, frame, rule))
print("direct:    ", F(q))

# %%
print("K(q, 0) =", second_kind_eval(q, 0), " 1/pi =", 1 / np.pi)
for ell, K in enumerate(second_kind_components(q, np.array([0.2, 0.1, 0, 0]), frame)):
    print(f"K{ell} =", K)
