"""
From one slice to the whole ball
================================

A slice regular function is fixed by its values on a single plane C(i).
The representation formula rebuilds it everywhere, and every such function
splits into four intrinsic pieces.
"""

# %%
import numpy as np

from qsb import (
    E2,
    Frame,
    HoloSeries,
    SliceSeries,
    extend_P,
    extend_series,
    fourfold_decompose,
    is_intrinsic,
    restrict_Q,
)

frame = Frame.standard()
f = HoloSeries.from_complex([1, 0, 1j], frame, radius=2.0)  # 1 + z^2 i
q = 0.2 + 0.5 * E2
print("P[f](q) =", extend_P(f, q))
print("series  =", extend_series(f)(q))

# %%
# restricting the extension gives back f on the slice
back = restrict_Q(extend_series(f), frame)
print("Q P f == f:", back.allclose(f))

# %%
# F = F0 + F1 i + F2 j + F3 ij with each F_l real-coefficient (intrinsic)
F = SliceSeries(np.array([[0, 0, 0, 0], [1, 1, 1, 0], [0, 0, 0, 2.0]]))
for ell, P in enumerate(fourfold_decompose(F, frame)):
    print(f"F{ell}:", P.coeffs[:, 0], is_intrinsic(P).value)
print("F itself:", is_intrinsic(F).value)
