"""Slice regular Bergman kernels on the unit ball of the quaternions.

Second kind: ``K(q, r) = sum_n (n+1)/pi q^n conj(r)^n``, the slice regular
extension of the disk kernel.  First kind: ``B(q, r) = sum q^n C_nm conj(r)^m``
with ``C`` the inverse of the volume Gram matrix of the monomials
``q^0 .. q^N``.  Both are truncated models; identities between them hold
exactly at matched truncation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .cbergman import MAX_CONDITION, truncation_degree
from .errors import DegreeTooHigh, GramNotReal, IllConditioned, NearBoundary, OutOfDomain
from .qalg import Frame, Quaternion, qconj, qmul, qpowers
from .quad import BallRule, PlanarRule, integrate_values
from .slicefn import SliceSeries, restrict_Q
from .sums import combine

MIN_SECOND_KIND_N = 32
GRAM_IMAG_TOL = 1e-10


def _as_qarray(q) -> tuple[np.ndarray, bool]:
    if isinstance(q, np.ndarray) and q.ndim >= 1 and q.shape[-1] == 4:
        return q.astype(float), False
    return Quaternion.coerce(q).to_array(), True


def _coefficients(N: int) -> np.ndarray:
    return (np.arange(N + 1) + 1.0) / np.pi


def second_kind_truncated(q, r, N: int) -> np.ndarray:
    """Partial sum of the second-kind kernel up to degree ``N`` (arrays, broadcasting)."""
    q = np.asarray(q, dtype=float)
    r = np.asarray(r, dtype=float)
    qp = qpowers(q, N)
    rp = qpowers(qconj(r), N)
    c = _coefficients(N)
    out = np.zeros(np.broadcast_shapes(q.shape, r.shape))
    for n in range(N + 1):
        out = out + c[n] * qmul(qp[..., n, :], rp[..., n, :])
    return out


def second_kind_eval(q, r, N: int = MIN_SECOND_KIND_N):
    """Second-kind kernel with truncation control.

    ``N`` is raised as needed so that the series tail stays below 1e-12;
    ``|q||r| > 0.9`` raises :class:`NearBoundary`.
    """
    if N < MIN_SECOND_KIND_N:
        raise ValueError(f"truncation must be >= {MIN_SECOND_KIND_N}")
    qa, q_scalar = _as_qarray(q)
    ra, r_scalar = _as_qarray(r)
    t = float(np.max(np.linalg.norm(qa, axis=-1) * np.linalg.norm(ra, axis=-1), initial=0.0))
    out = second_kind_truncated(qa, ra, truncation_degree(t, N))
    return Quaternion.from_array(out) if q_scalar and r_scalar else out


def _frame_coefficients(r, frame: Frame, N: int) -> np.ndarray:
    """``(n+1)/pi`` times frame coordinates of ``conj(r)^n``: shape ``(..., N+1, 4)``."""
    rp = qpowers(qconj(np.asarray(r, dtype=float)), N)
    return _coefficients(N)[:, None] * frame.coords(rp)


def component_series(r, frame: Frame, N: int) -> tuple[SliceSeries, ...]:
    """The four intrinsic components of ``K(., r)`` as real-coefficient series in ``q``."""
    c = _frame_coefficients(Quaternion.coerce(r).to_array(), frame, N)
    return tuple(SliceSeries.from_real(c[:, ell]) for ell in range(4))


def second_kind_components(q, r, frame: Frame, N: int = MIN_SECOND_KIND_N):
    """``(K0, K1, K2, K3)`` with ``K = K0 + K1 i + K2 j + K3 ij``."""
    qa, q_scalar = _as_qarray(q)
    ra, r_scalar = _as_qarray(r)
    t = float(np.max(np.linalg.norm(qa, axis=-1) * np.linalg.norm(ra, axis=-1), initial=0.0))
    N = truncation_degree(t, N)
    c = _frame_coefficients(ra, frame, N)
    qp = qpowers(qa, N)
    parts = []
    for ell in range(4):
        v = np.zeros(np.broadcast_shapes(qa.shape, ra.shape))
        for n in range(N + 1):
            v = v + c[..., n, ell, None] * qp[..., n, :]
        parts.append(Quaternion.from_array(v) if q_scalar and r_scalar else v)
    return tuple(parts)


def _slice_kernel_values(q: np.ndarray, rule: PlanarRule, N: int) -> np.ndarray:
    """``K_N(q, zeta_k)`` at the nodes of a planar rule, ``(M, 4)``."""
    qp = _coefficients(N)[:, None] * qpowers(q, N)
    qpi = qmul(qp, rule.frame.i.to_array())
    zb = np.conj(rule.nodes)[:, None] ** np.arange(N + 1)
    return combine(zb.real, qp) + combine(zb.imag, qpi)


def _check_unit(q, what="q"):
    if np.any(np.linalg.norm(np.asarray(q, dtype=float), axis=-1) >= 1.0):
        raise OutOfDomain(f"{what} must lie in the open unit ball")


def slice_reproduce(f: SliceSeries, q, frame: Frame, rule: PlanarRule, N: int = MIN_SECOND_KIND_N) -> Quaternion:
    """``int_{B_i} K_N(q, zeta) Q_i[f](zeta) dsigma``; equals ``f(q)`` off the slice too."""
    qa = Quaternion.coerce(q).to_array()
    _check_unit(qa)
    if f.degree > N:
        raise DegreeTooHigh(f"degree {f.degree} > truncation {N}")
    if rule.exact_degree < f.degree + N:
        raise ValueError("planar rule not exact to deg f + N")
    if rule.frame != frame:
        rule = PlanarRule(frame, rule.nodes, rule.weights, rule.exact_degree, rule.domain, rule.extent)
    kv = _slice_kernel_values(qa, rule, N)
    fv = restrict_Q(f, frame).eval_array(rule.nodes)
    return Quaternion.from_array(integrate_values(qmul(kv, fv), rule.weights))


def component_reproduce(f: SliceSeries, q, frame: Frame, rule: PlanarRule, N: int = MIN_SECOND_KIND_N) -> np.ndarray:
    """``int K^l(q, zeta) f(zeta) dsigma`` for ``l = 0..3``, as a ``(4, 4)`` array."""
    qa = Quaternion.coerce(q).to_array()
    _check_unit(qa)
    if rule.frame != frame:
        rule = PlanarRule(frame, rule.nodes, rule.weights, rule.exact_degree, rule.domain, rule.extent)
    c = _frame_coefficients(rule.quaternion_nodes, frame, N)
    qp = qpowers(qa, N)
    fv = restrict_Q(f, frame).eval_array(rule.nodes)
    out = np.zeros((4, 4))
    for ell in range(4):
        kv = combine(c[:, :, ell], qp)
        out[ell] = integrate_values(qmul(kv, fv), rule.weights)
    return out


def component_sum_reproduce(f: SliceSeries, q, frame: Frame, rule: PlanarRule, N: int = MIN_SECOND_KIND_N) -> Quaternion:
    """``sum_l int K^l(q, zeta) e_l f(zeta) dsigma``, which rebuilds ``f(q)``."""
    qa = Quaternion.coerce(q).to_array()
    _check_unit(qa)
    if rule.frame != frame:
        rule = PlanarRule(frame, rule.nodes, rule.weights, rule.exact_degree, rule.domain, rule.extent)
    c = _frame_coefficients(rule.quaternion_nodes, frame, N)
    qp = qpowers(qa, N)
    fv = restrict_Q(f, frame).eval_array(rule.nodes)
    total = np.zeros(4)
    for ell in range(4):
        kv = qmul(combine(c[:, :, ell], qp), frame.basis[ell])
        total = total + integrate_values(qmul(kv, fv), rule.weights)
    return Quaternion.from_array(total)


@dataclass(frozen=True, eq=False)
class FirstKindKernel:
    N: int
    gram: np.ndarray
    coeff: np.ndarray
    rule: BallRule | None = None

    def to_json(self) -> dict:
        return {"N": self.N, "gram": self.gram.tolist(), "coeff": self.coeff.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> FirstKindKernel:
        gram = np.asarray(data["gram"], dtype=float)
        coeff = np.asarray(data["coeff"], dtype=float)
        N = int(data["N"])
        if gram.shape != (N + 1, N + 1) or coeff.shape != (N + 1, N + 1):
            raise ValueError("gram/coeff shape does not match N")
        return cls(N, gram, coeff)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __call__(self, q, r):
        return first_kind_eval(self, q, r)


def gram_build(N: int, rule: BallRule) -> FirstKindKernel:
    """Volume Gram matrix ``G_nm = int conj(q)^n q^m dmu`` and ``C = G^-1``."""
    if rule.exact_degree < 2 * N:
        raise ValueError(f"ball rule exact to degree {rule.exact_degree} < 2N = {2 * N}")
    P = qpowers(rule.nodes, N)
    Pc = qconj(P)
    G4 = np.empty((N + 1, N + 1, 4))
    for n in range(N + 1):
        for m in range(N + 1):
            G4[n, m] = integrate_values(qmul(Pc[:, n], P[:, m]), rule.weights)
    imag = float(np.abs(G4[..., 1:]).max())
    if imag > GRAM_IMAG_TOL:
        raise GramNotReal(f"Gram vector parts reach {imag:.3g}; rule is not conjugation symmetric")
    G = G4[..., 0]
    G = 0.5 * (G + G.T)
    cond = np.linalg.cond(G)
    if cond > MAX_CONDITION:
        raise IllConditioned(f"Gram condition number {cond:.3g} > {MAX_CONDITION:g}")
    C = scipy.linalg.cho_solve(scipy.linalg.cho_factor(G), np.eye(N + 1))
    C = 0.5 * (C + C.T)
    G.setflags(write=False)
    C.setflags(write=False)
    return FirstKindKernel(N, G, C, rule)


def first_kind_eval(kernel: FirstKindKernel, q, r):
    """``B(q, r) = sum q^n C_nm conj(r)^m``."""
    qa, q_scalar = _as_qarray(q)
    ra, r_scalar = _as_qarray(r)
    _check_unit(qa)
    _check_unit(ra, "r")
    out = _first_kind_values(kernel, qa, ra)
    return Quaternion.from_array(out) if q_scalar and r_scalar else out


def _first_kind_values(kernel: FirstKindKernel, qa, ra) -> np.ndarray:
    N = kernel.N
    qp = qpowers(qa, N)
    rp = qpowers(qconj(ra), N)
    out = np.zeros(np.broadcast_shapes(qa.shape, ra.shape))
    for n in range(N + 1):
        u = np.zeros(rp.shape[:-2] + (4,))
        for m in range(N + 1):
            u = u + kernel.coeff[n, m] * rp[..., m, :]
        out = out + qmul(qp[..., n, :], u)
    return out


def kernel_consistency(kernel: FirstKindKernel, N: int, rule: BallRule, zeta, q) -> float:
    """``|K_N(zeta, q) - int B(zeta, r) K_N(r, q) dmu_r|``; zero at ``N == kernel.N``."""
    za = Quaternion.coerce(zeta).to_array()
    qa = Quaternion.coerce(q).to_array()
    if np.linalg.norm(za) > 0.7 or np.linalg.norm(qa) > 0.7:
        raise NearBoundary("kernel consistency is checked for |zeta|, |q| <= 0.7")
    if rule.exact_degree < kernel.N + N:
        raise ValueError("ball rule not exact to kernel.N + N")
    lhs = second_kind_truncated(za, qa, N)
    b = _first_kind_values(kernel, za, rule.nodes)
    k = second_kind_truncated(rule.nodes, qa, N)
    rhs = integrate_values(qmul(b, k), rule.weights)
    return float(np.linalg.norm(lhs - rhs))


def slice_moments(N: int) -> np.ndarray:
    """``D_m = int_{unit disk} |zeta|^{2m} dsigma = pi/(m+1)``."""
    return np.pi / (np.arange(N + 1) + 1.0)


def m_i_apply(
    kernel: FirstKindKernel,
    f: SliceSeries,
    frame: Frame,
    rule: PlanarRule | None = None,
    method: str = "exact",
) -> SliceSeries:
    """``M_i[f](q) = int_{B_i} B(q, zeta) Q_i[f](zeta) dsigma`` as a series.

    ``method="exact"`` uses the coefficient identity ``m = C D a`` with the
    slice moments ``D``; ``method="quadrature"`` computes the moments
    ``int conj(zeta)^m Q_i[f](zeta) dsigma`` with ``rule``.
    """
    N = kernel.N
    if f.degree > N:
        raise DegreeTooHigh(f"degree {f.degree} > kernel truncation {N}")
    a = f.padded(N)
    if method == "exact":
        mu = slice_moments(N)[:, None] * a
    elif method == "quadrature":
        if rule is None:
            raise ValueError("quadrature path needs a planar rule")
        if rule.exact_degree < f.degree + N:
            raise ValueError("planar rule not exact to deg f + N")
        zb = frame.embed(np.conj(rule.nodes)[:, None] ** np.arange(N + 1))
        fv = restrict_Q(f, frame).eval_array(rule.nodes)
        mu = integrate_values(qmul(zb, fv[:, None, :]), rule.weights)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SliceSeries(combine(kernel.coeff, mu), f.radius)


def m_i_eval(kernel: FirstKindKernel, f: SliceSeries, q, frame: Frame, rule: PlanarRule) -> Quaternion:
    """``M_i[f](q)`` straight from the integral definition with ``rule``."""
    qa = Quaternion.coerce(q).to_array()
    _check_unit(qa)
    b = _first_kind_values(kernel, qa, frame.embed(rule.nodes))
    fv = restrict_Q(f, frame).eval_array(rule.nodes)
    return Quaternion.from_array(integrate_values(qmul(b, fv), rule.weights))


def two_stage_reproduce(
    f: SliceSeries,
    q,
    kernel: FirstKindKernel,
    frame: Frame,
    prule: PlanarRule | None,
    brule: BallRule,
    method: str = "exact",
) -> Quaternion:
    """``int_B K_N(q, r) M_i[f](r) dmu_r`` with ``N = kernel.N``; returns ``f(q)``."""
    qa = Quaternion.coerce(q).to_array()
    _check_unit(qa)
    if brule.exact_degree < 2 * kernel.N:
        raise ValueError("ball rule not exact to 2N")
    m = m_i_apply(kernel, f, frame, prule, method)
    k = second_kind_truncated(qa, brule.nodes, kernel.N)
    mv = m.eval_array(brule.nodes)
    return Quaternion.from_array(integrate_values(qmul(k, mv), brule.weights))


def mi_adjoint_identity(
    f: SliceSeries,
    g: SliceSeries,
    kernel: FirstKindKernel,
    frame: Frame,
    prule: PlanarRule,
    brule: BallRule,
    method: str = "exact",
) -> tuple[Quaternion, Quaternion]:
    """``(int_B conj(M_i f) g dmu, int_{B_i} conj(Q_i f) Q_i g dsigma)``."""
    if g.degree > kernel.N:
        raise DegreeTooHigh(f"degree {g.degree} > kernel truncation {kernel.N}")
    if brule.exact_degree < 2 * kernel.N:
        raise ValueError("ball rule not exact to 2N")
    m = m_i_apply(kernel, f, frame, prule, method)
    lhs = integrate_values(qmul(qconj(m.eval_array(brule.nodes)), g.eval_array(brule.nodes)), brule.weights)
    fv = restrict_Q(f, frame).eval_array(prule.nodes)
    gv = restrict_Q(g, frame).eval_array(prule.nodes)
    rhs = integrate_values(qmul(qconj(fv), gv), prule.weights)
    return Quaternion.from_array(lhs), Quaternion.from_array(rhs)


def anti_slice_residual(kernel: FirstKindKernel, q, x: float, y: float, frame: Frame, h: float = 1e-5) -> float:
    """Central-difference ``|d_x F - (d_y F) i|`` for ``F(r) = B(q, x + y i)``."""
    qa = Quaternion.coerce(q).to_array()
    i = frame.i.to_array()

    def F(xx, yy):
        return _first_kind_values(kernel, qa, frame.embed(complex(xx, yy)))

    dx = (F(x + h, y) - F(x - h, y)) / (2 * h)
    dy = (F(x, y + h) - F(x, y - h)) / (2 * h)
    return float(np.linalg.norm(dx - qmul(dy, i)))
