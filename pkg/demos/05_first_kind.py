"""
Volume kernel and the M_i operator
==================================

On polynomials of degree <= N the volume-measure kernel comes from the
inverse Gram matrix of the monomials over the ball. M_i turns a function
into the density whose second-kind volume integral gives the function back.
"""

# %%
import numpy as np

from qsb import (
    Frame,
    SliceSeries,
    build_ball_rule,
    build_disk_rule,
    first_kind_eval,
    gram_build,
    m_i_apply,
    mi_adjoint_identity,
    two_stage_reproduce,
)

kernel = gram_build(2, build_ball_rule(4, 8))
print("Gram, times 1/pi^2:\n", np.round(kernel.gram / np.pi**2, 12))
print("B(0,0) =", first_kind_eval(kernel, 0, 0).real, " 18/(7 pi^2) =", 18 / (7 * np.pi**2))

# %%
frame = Frame.standard()
one = SliceSeries(np.array([[1.0, 0, 0, 0]]))
print("M_i[1] coefficients * 7 pi:", m_i_apply(kernel, one, frame).coeffs[:, 0] * 7 * np.pi)

# %%
big = gram_build(5, build_ball_rule(7, 14))
F = SliceSeries(np.array([[0, 0, 0, 0], [0] * 4, [0] * 4, [1, 0, 0, 1.0]]))  # q^3 (1 + e3)
q = np.array([0, 0.5, 0, 0])
print("two-stage:", two_stage_reproduce(F, q, big, frame, None, big.rule), " direct:", F(q))

# %%
g = SliceSeries(np.array([[0, 0, 0, 0], [1.0, 0, 0, 0]]))
lhs, rhs = mi_adjoint_identity(g, g, big, frame, build_disk_rule(8, 16), big.rule)
print("<M_i q, q> =", lhs, " slice norm =", rhs, " pi/2 =", np.pi / 2)
