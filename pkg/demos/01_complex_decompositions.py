"""
Holomorphic series and their C-property parts
=============================================

A slice-valued series on the unit disk of C(e1) splits two ways: as
f1 + i f2 with real coefficients, and as a C-property part plus an anti-C part.
"""

# %%
import numpy as np

from qsb import Frame, HoloSeries, c_anti_decompose, c_pair_decompose, classify

frame = Frame.standard()
f = HoloSeries.from_complex([0, 1j, 1], frame)  # z^2 + i z
print("class of f:", classify(f).value)

# %%
# f1 carries the real parts of the coefficients, f2 the imaginary parts
f1, f2 = c_pair_decompose(f)
print("f1:", f1.complex_coeffs().real)
print("f2:", f2.complex_coeffs().real)

# %%
# the C part satisfies f(conj z) = conj f(z); the anti-C part flips the sign
fc, fa = c_anti_decompose(f)
z = 0.3 + 0.4j
for name, g in (("fc", fc), ("fa", fa)):
    a = g.eval_complex(np.array([np.conj(z)]))[0]
    b = np.conj(g.eval_complex(np.array([z]))[0])
    print(name, classify(g).value, a, b)
