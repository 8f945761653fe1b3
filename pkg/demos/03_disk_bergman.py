"""
The Bergman kernel of the disk and its R/I split
================================================

Quadrature on the disk reproduces polynomials against the closed-form
kernel; splitting the kernel into R and I pieces separates real and
imaginary parts of the C-property component.
"""

# %%
import numpy as np

from qsb import (
    HoloSeries,
    build_disk_rule,
    disk_kernel_eval,
    kernel_RI_split,
    numeric_kernel_build,
    re_im_apply,
    re_im_closed_form,
)
from qsb.cbergman import disk_kernel_series

rule = build_disk_rule(32, 64)
print("rule exact to degree", rule.exact_degree, "with", rule.nodes.size, "nodes")

# %%
f = HoloSeries.from_complex([0.5, 1 + 1j, 0, -2j])
z = 0.2 - 0.3j
print("quadrature:", re_im_apply(f, z, rule))
print("closed form:", re_im_closed_form(f, z))

# %%
R, I = kernel_RI_split(z, 0.4j)
print("R + iI =", R + 1j * I, " K =", disk_kernel_eval(z, 0.4j))

# %%
# a Gram-built kernel on polynomials of degree <= 10 is the truncated series;
# the closed form differs by the tail
k = numeric_kernel_build(rule, 10)
zz, ww = 0.7 * np.exp(0.3j), 0.7 * np.exp(-0.2j)
print("numeric - series:", abs(k(zz, ww) - disk_kernel_series(zz, ww, 10)))
print("numeric - closed:", abs(k(zz, ww) - disk_kernel_eval(zz, ww)))
