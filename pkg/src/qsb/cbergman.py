"""Complex Bergman kernels on conjugation-invariant planar domains.

Convention: ``K(z, zeta)`` is holomorphic in ``z`` and anti-holomorphic in
``zeta``, ``K(z, zeta) = sum_n (n+1)/pi z^n conj(zeta)^n`` on the unit disk,
so that ``f(z) = int K(z, zeta) f(zeta) dsigma``.  Writing the coefficient
of ``conj(zeta)^m`` as ``b_m(z)``, the intrinsic components are

    R(z, zeta) = sum Re(b_m(z)) conj(zeta)^m,
    I(z, zeta) = sum Im(b_m(z)) conj(zeta)^m,

and ``K = R + i I``.  Everything here works with complex coordinates on a
single plane C(i); quaternions only appear at the public boundary.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import IllConditioned, NearBoundary, OutOfDomain
from .holo import HoloSeries, c_anti_decompose
from .qalg import Quaternion
from .quad import PlanarRule, integrate_values
from .sums import combine

DEFAULT_DEGREE = 64
TRUNCATION_TOL = 1e-12
MAX_PRODUCT = 0.9
MAX_CONDITION = 1e12


def series_tail_bound(t: float, degree: int) -> float:
    """Bound on ``sum_{n > degree} (n+1) t^n / pi`` for ``0 <= t < 1``."""
    return (degree + 2) * t ** (degree + 1) / (math.pi * (1.0 - t) ** 2)


def truncation_degree(t: float, base: int = DEFAULT_DEGREE, tol: float = TRUNCATION_TOL) -> int:
    """Smallest degree ``>= base`` whose tail bound at ``|z||zeta| = t`` is below ``tol``."""
    if t > MAX_PRODUCT:
        raise NearBoundary(f"|z||zeta| = {t:.3g} exceeds {MAX_PRODUCT}")
    n = base
    while series_tail_bound(t, n) > tol:
        n += 16
    return n


def _check_disk(*pts):
    for p in pts:
        if np.any(np.abs(p) >= 1.0):
            raise OutOfDomain("points must lie in the open unit disk")


def disk_kernel_eval(z, zeta):
    """``1 / (pi (1 - z conj(zeta))^2)``; broadcasts over arrays."""
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    _check_disk(z, zeta)
    out = 1.0 / (np.pi * (1.0 - z * np.conj(zeta)) ** 2)
    return out[()] if out.ndim == 0 else out


def disk_kernel_series(z, zeta, degree: int):
    """Degree-``degree`` partial sum of the disk kernel."""
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    n = np.arange(degree + 1)
    terms = (n + 1) / np.pi * (z[..., None] ** n) * (np.conj(zeta)[..., None] ** n)
    out = terms[..., 0]
    for k in range(1, degree + 1):
        out = out + terms[..., k]
    return out[()] if np.ndim(out) == 0 else out


def _ri_from_powers(zpow, zetabar_pow, n):
    c = (n + 1) / np.pi
    r = np.zeros(np.broadcast_shapes(zpow.shape[:-1], zetabar_pow.shape[:-1]), dtype=complex)
    i = np.zeros_like(r)
    for k in range(n.size):
        r = r + c[k] * zpow[..., k].real * zetabar_pow[..., k]
        i = i + c[k] * zpow[..., k].imag * zetabar_pow[..., k]
    return r, i


def kernel_RI_truncated(z, zeta, degree: int):
    """``(R, I)`` of the disk kernel truncated at ``degree`` (no domain checks)."""
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    n = np.arange(degree + 1)
    return _ri_from_powers(z[..., None] ** n, np.conj(zeta)[..., None] ** n, n)


def kernel_RI_split(z, zeta, degree: int = DEFAULT_DEGREE):
    """Intrinsic components ``(R(z, zeta), I(z, zeta))`` of the disk kernel.

    The series is truncated at ``degree`` or higher so that the tail stays
    below 1e-12; ``|z||zeta| > 0.9`` raises :class:`NearBoundary`.
    """
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    _check_disk(z, zeta)
    t = float(np.max(np.abs(z) * np.abs(zeta), initial=0.0))
    n = truncation_degree(t, degree)
    r, i = kernel_RI_truncated(z, zeta, n)
    if r.ndim == 0:
        return r[()], i[()]
    return r, i


class KernelKind(str, Enum):
    DISK_CLOSED_FORM = "DiskClosedForm"
    NUMERIC_GRAM = "NumericGram"


@dataclass(frozen=True, eq=False)
class ComplexKernel:
    kind: KernelKind
    coeff: np.ndarray | None = None
    gram: np.ndarray | None = None
    rule: PlanarRule | None = None

    @classmethod
    def disk(cls) -> ComplexKernel:
        return cls(KernelKind.DISK_CLOSED_FORM)

    @property
    def degree(self) -> int | None:
        return None if self.coeff is None else self.coeff.shape[0] - 1

    def coefficient_matrix(self, degree: int | None = None) -> np.ndarray:
        """``C`` with ``K(z, zeta) = sum z^n C_nm conj(zeta)^m``."""
        if self.kind is KernelKind.NUMERIC_GRAM:
            return self.coeff
        if degree is None:
            raise ValueError("closed-form kernel needs an explicit degree")
        return np.diag((np.arange(degree + 1) + 1.0) / np.pi).astype(complex)

    def __call__(self, z, zeta):
        if self.kind is KernelKind.DISK_CLOSED_FORM:
            return disk_kernel_eval(z, zeta)
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        n = np.arange(self.degree + 1)
        b = combine(z[..., None] ** n, self.coeff)
        out = np.zeros(np.broadcast_shapes(z.shape, zeta.shape), dtype=complex)
        zb = np.conj(zeta)[..., None] ** n
        for m in range(n.size):
            out = out + b[..., m] * zb[..., m]
        return out[()] if out.ndim == 0 else out

    def ri_split(self, z, zeta, degree: int = DEFAULT_DEGREE):
        if self.kind is KernelKind.DISK_CLOSED_FORM:
            return kernel_RI_split(z, zeta, degree)
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        n = np.arange(self.degree + 1)
        b = combine(z[..., None] ** n, self.coeff)
        zb = np.conj(zeta)[..., None] ** n
        r = np.zeros(np.broadcast_shapes(z.shape, zeta.shape), dtype=complex)
        i = np.zeros_like(r)
        for m in range(n.size):
            r = r + b[..., m].real * zb[..., m]
            i = i + b[..., m].imag * zb[..., m]
        return (r[()], i[()]) if r.ndim == 0 else (r, i)

    def to_csv(self, path) -> None:
        c = self.coefficient_matrix()
        if np.abs(c.imag).max(initial=0.0) > 0:
            raise ValueError("CSV export needs a real coefficient matrix")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            for row in c.real:
                w.writerow([repr(float(v)) for v in row])


def monomial_moments(values, rule: PlanarRule, degree: int) -> np.ndarray:
    """``mu_m = int conj(zeta)^m g(zeta) dsigma`` for complex node values ``g``."""
    zb = np.conj(rule.nodes)[:, None] ** np.arange(degree + 1)
    return integrate_values(zb * np.asarray(values, dtype=complex)[:, None], rule.weights)


@dataclass(frozen=True, eq=False)
class BergmanProjection:
    """Projection ``B[g] = R[g] + i I[g]`` as a series ``sum c_n z^n``."""

    series: HoloSeries
    coeffs: np.ndarray

    @property
    def real_coeffs(self) -> np.ndarray:
        return self.coeffs.real

    @property
    def imag_coeffs(self) -> np.ndarray:
        return self.coeffs.imag

    def _zpow(self, z):
        z = np.asarray(z, dtype=complex)
        return z[..., None] ** np.arange(self.coeffs.size)

    def r_part(self, z):
        """``R[g](z) = sum Re(z^n) c_n``."""
        return combine(self._zpow(z).real, self.coeffs)

    def i_part(self, z):
        """``I[g](z) = sum Im(z^n) c_n``."""
        return combine(self._zpow(z).imag, self.coeffs)


def bergman_project(g, rule: PlanarRule, kernel: ComplexKernel | None = None, degree: int | None = None) -> BergmanProjection:
    """Bergman projection of ``g`` (a callable on complex node arrays).

    The monomial moments of ``g`` are taken with ``rule`` and mapped through
    the kernel's coefficient matrix.
    """
    kernel = kernel or ComplexKernel.disk()
    if kernel.kind is KernelKind.NUMERIC_GRAM:
        C = kernel.coefficient_matrix()
        degree = C.shape[0] - 1
    else:
        degree = rule.exact_degree // 2 if degree is None else degree
        C = kernel.coefficient_matrix(degree)
    vals = np.asarray(g(rule.nodes), dtype=complex)
    mu = monomial_moments(vals, rule, degree)
    c = combine(C, mu)
    scale = max(float(np.abs(c).max(initial=0.0)), 1.0)
    c = np.where(np.abs(c) <= 1e-14 * scale, 0.0, c)
    return BergmanProjection(HoloSeries.from_complex(c, rule.frame), c)


def re_im_apply(f: HoloSeries, z, rule: PlanarRule) -> tuple[Quaternion, Quaternion]:
    """``(int R(z, .) f dsigma, int I(z, .) f dsigma)`` with quadrature.

    The kernel is truncated at ``rule.exact_degree - deg f``; terms beyond
    ``deg f`` then integrate to zero exactly.
    """
    zc = complex(z) if not isinstance(z, Quaternion) else complex(f.frame.to_complex(z.to_array(), tol=1e-12))
    _check_disk(np.array(zc))
    fc = f.complex_coeffs()
    T = rule.exact_degree - f.degree
    if T < f.degree:
        raise ValueError("rule is not exact to twice the degree of f")
    r, i = kernel_RI_truncated(np.array(zc), rule.nodes, T)
    fv = HoloSeries.from_complex(fc, f.frame).eval_complex(rule.nodes)
    r_out = complex(integrate_values(r * fv, rule.weights))
    i_out = complex(integrate_values(i * fv, rule.weights))
    return (
        Quaternion.from_array(f.frame.embed(r_out)),
        Quaternion.from_array(f.frame.embed(i_out)),
    )


def re_im_closed_form(f: HoloSeries, z) -> tuple[Quaternion, Quaternion]:
    """Expected ``(Re f1 + i Im f2, Im f1 - i Re f2)`` at ``z`` for ``f = f1 + f2``.

    ``f1`` is the C-property part and ``f2`` the anti-C part.
    """
    zc = complex(z) if not isinstance(z, Quaternion) else complex(f.frame.to_complex(z.to_array(), tol=1e-12))
    f1, f2 = c_anti_decompose(f)
    v1 = complex(f1.eval_complex(np.array([zc]))[0])
    v2 = complex(f2.eval_complex(np.array([zc]))[0])
    r = complex(v1.real, v2.imag)
    i = complex(v1.imag, -v2.real)
    return Quaternion.from_array(f.frame.embed(r)), Quaternion.from_array(f.frame.embed(i))


def gram_matrix(rule: PlanarRule, N: int) -> np.ndarray:
    """``G_nm = int conj(zeta)^n zeta^m dsigma`` over the rule."""
    p = rule.nodes[:, None] ** np.arange(N + 1)
    G = np.empty((N + 1, N + 1), dtype=complex)
    for n in range(N + 1):
        G[n] = integrate_values(np.conj(p[:, n])[:, None] * p, rule.weights)
    return G


def numeric_kernel_build(rule: PlanarRule, N: int) -> ComplexKernel:
    """Bergman kernel of the rule's domain on polynomials of degree <= N."""
    if rule.exact_degree < 2 * N:
        raise ValueError(f"rule exact to degree {rule.exact_degree} < 2N = {2 * N}")
    G = gram_matrix(rule, N)
    G = 0.5 * (G + G.conj().T)
    if np.abs(G.imag).max() <= 1e-14 * np.abs(G).max():
        G = G.real.astype(complex)
    cond = np.linalg.cond(G)
    if cond > MAX_CONDITION:
        raise IllConditioned(f"Gram condition number {cond:.3g} > {MAX_CONDITION:g}")
    factor = scipy.linalg.cho_factor(G)
    C = scipy.linalg.cho_solve(factor, np.eye(N + 1, dtype=complex))
    C = 0.5 * (C + C.conj().T)
    C.setflags(write=False)
    G.setflags(write=False)
    return ComplexKernel(KernelKind.NUMERIC_GRAM, C, G, rule)
