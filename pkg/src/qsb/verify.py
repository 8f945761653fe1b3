"""Identity suite driven by ``qsb verify``.

Each identity returns its maximal residual; records are assembled in a
fixed order so the report is byte-stable regardless of how many worker
threads evaluated them.
"""

from __future__ import annotations

import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import cbergman as cb
from . import sbergman as sb
from .holo import HoloClass, HoloSeries, c_anti_decompose, c_pair_decompose, classify, conj_reflect
from .qalg import Frame, ImaginaryUnit, complete_frame, qconj, qmul
from .quad import build_ball_rule, build_disk_rule, build_rectangle_rule, integrate_values
from .slicefn import (
    IntrinsicClass,
    SliceSeries,
    alpha_beta_of,
    c_part,
    conjugation_defect,
    cr_residual,
    extend_P_array,
    extend_series,
    fourfold_decompose,
    is_intrinsic,
    recompose,
    refined_split,
    restrict_Q,
)

TOLERANCES = {"exact": 1e-11, "quadrature": 1e-9, "fd": 1e-6}
SUITES = ("complex", "slice", "bergman")


@dataclass
class Context:
    degree: int
    seed: int = 0
    mismatch: bool = False
    _cache: dict = field(default_factory=dict)
    _lock: threading.RLock = field(default_factory=threading.RLock)

    def cached(self, key, build: Callable):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    @property
    def N(self) -> int:
        return max(self.degree, 1)

    def disk_rule(self, degree_needed: int, frame: Frame | None = None):
        n_ang = max(16, degree_needed + 2 + (degree_needed % 2))
        n_rad = max(8, degree_needed // 4 + 2)
        frame = frame or Frame.standard()
        return self.cached(("disk", n_rad, n_ang, tuple(frame.i.vector)), lambda: build_disk_rule(n_rad, n_ang, frame))

    def ball_rule(self, degree_needed: int):
        n_rad = max(4, (degree_needed + 5) // 2)
        n_ang = degree_needed + 3 + ((degree_needed + 3) % 2)
        return self.cached(("ball", n_rad, n_ang), lambda: build_ball_rule(n_rad, n_ang, 6))

    def first_kind(self, N: int):
        return self.cached(("first", N), lambda: sb.gram_build(N, self.ball_rule(2 * N)))


@dataclass(frozen=True)
class Identity:
    id: str
    suite: str
    statement: str
    kind: str
    run: Callable[[Context, np.random.Generator], tuple[float, dict]]


# -- random inputs ---------------------------------------------------------

def _rand_complex(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _rand_holo(rng, degree, frame=None, kind="general"):
    c = _rand_complex(rng, degree + 1)
    if kind == "C":
        c = c.real.astype(complex)
    elif kind == "antiC":
        c = 1j * c.imag
    return HoloSeries.from_complex(c, frame or Frame.standard())


def _rand_slice(rng, degree, intrinsic=False):
    c = rng.normal(size=(degree + 1, 4))
    if intrinsic:
        c[:, 1:] = 0.0
    return SliceSeries(c)


def _rand_frame(rng):
    return complete_frame(ImaginaryUnit.from_vector(rng.normal(size=3)))


def _disk_points(rng, n, rmax=0.9):
    r = rmax * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def _ball_points(rng, n, rmax=0.9):
    v = rng.normal(size=(n, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * (rmax * rng.uniform(size=n) ** 0.25)[:, None]


def _fail_if(cond):
    return math.inf if cond else 0.0


# -- complex suite ---------------------------------------------------------

def _c_pair(ctx, rng):
    worst = 0.0
    for _ in range(20):
        f = _rand_holo(rng, ctx.degree)
        f1, f2 = c_pair_decompose(f)
        rec = f1 + f2.left_mul(f.frame.i.value)
        worst = max(worst, float(np.abs(rec.coeffs - f.coeffs).max()))
        worst = max(worst, _fail_if(classify(f1) is not HoloClass.C or classify(f2) is not HoloClass.C))
    return worst, {"samples": 20}


def _c_anti(ctx, rng):
    worst = 0.0
    for _ in range(20):
        f = _rand_holo(rng, ctx.degree)
        fc, fa = c_anti_decompose(f)
        worst = max(worst, float(np.abs((fc + fa).coeffs - f.coeffs).max()))
        bad = classify(fc) is not HoloClass.C or (
            np.abs(fa.coeffs).max() > 0 and classify(fa) is not HoloClass.ANTI_C
        )
        worst = max(worst, _fail_if(bad))
    return worst, {"samples": 20}


def _c_pointwise(ctx, rng):
    f = _rand_holo(rng, ctx.degree, kind="C")
    z = _disk_points(rng, 100)
    g = _rand_holo(rng, ctx.degree)
    lhs = f.eval_array(np.conj(z))
    rhs = qconj(f.eval_array(z))
    twice = conj_reflect(conj_reflect(g))
    return max(float(np.abs(lhs - rhs).max()), float(np.abs(twice.coeffs - g.coeffs).max())), {"points": 100}


def _i_iso(ctx, rng):
    f = _rand_holo(rng, ctx.degree, kind="C")
    h = f.left_mul(f.frame.i.value)
    back = h.left_mul(-f.frame.i.value)
    bad = classify(h) is not HoloClass.ANTI_C and np.abs(h.coeffs).max() > 0
    return max(float(np.abs(back.coeffs - f.coeffs).max()), _fail_if(bad)), {}


def _norm_preserved(ctx, rng):
    rule = ctx.disk_rule(2 * ctx.degree)
    f = _rand_holo(rng, ctx.degree)
    a = integrate_values(np.abs(f.eval_complex(rule.nodes)) ** 2, rule.weights)
    b = integrate_values(np.abs(conj_reflect(f).eval_complex(rule.nodes)) ** 2, rule.weights)
    return abs(float(a - b)), {"rule_exact_degree": rule.exact_degree}


def _integral_props(ctx, rng):
    rule = ctx.disk_rule(2 * ctx.degree)
    f = _rand_holo(rng, ctx.degree)
    f1, f2 = c_pair_decompose(f)
    fv = f.eval_complex(rule.nodes)
    v1 = f1.eval_complex(rule.nodes)
    v2 = f2.eval_complex(rule.nodes)
    I1 = complex(integrate_values(v1, rule.weights))
    I2 = complex(integrate_values(v2, rule.weights))
    r = [
        abs(I1.imag),
        abs(I1 - complex(integrate_values(fv.real, rule.weights))),
        abs(I2 - complex(integrate_values(fv.imag, rule.weights))),
    ]
    nf = math.sqrt(float(integrate_values(np.abs(fv) ** 2, rule.weights)))
    n1 = math.sqrt(float(integrate_values(np.abs(v1) ** 2, rule.weights)))
    n2 = math.sqrt(float(integrate_values(np.abs(v2) ** 2, rule.weights)))
    r.append(max(0.0, n1 - nf, n2 - nf, nf - n1 - n2))
    g = _rand_holo(rng, ctx.degree, kind="C")
    h = _rand_holo(rng, ctx.degree, kind="antiC")
    gv = g.eval_complex(rule.nodes)
    hv = h.eval_complex(rule.nodes)
    r.append(abs(complex(integrate_values(np.conj(gv) * v1, rule.weights)).imag))
    r.append(abs(complex(integrate_values(np.conj(hv) * v1, rule.weights)).real))
    return max(r), {"rule_exact_degree": rule.exact_degree}


def _re_im(kind):
    def run(ctx, rng):
        rule = ctx.disk_rule(2 * ctx.degree + 2)
        worst = 0.0
        for _ in range(5):
            f = _rand_holo(rng, ctx.degree, kind=kind)
            for z in _disk_points(rng, 4):
                got = cb.re_im_apply(f, z, rule)
                want = cb.re_im_closed_form(f, z)
                for a, b in zip(got, want):
                    worst = max(worst, float(np.abs(a.to_array() - b.to_array()).max()))
        return worst, {"rule_exact_degree": rule.exact_degree}

    return run


def _ri_symmetry(ctx, rng):
    z = _disk_points(rng, 100, 0.9)
    w = _disk_points(rng, 100, 0.9)
    R, I = cb.kernel_RI_split(z, w)
    Rc, Ic = cb.kernel_RI_split(np.conj(z), w)
    Rw, Iw = cb.kernel_RI_split(z, np.conj(w))
    Rcc, Icc = cb.kernel_RI_split(np.conj(z), np.conj(w))
    r = [
        np.abs(R - np.conj(Rw)).max(),
        np.abs(I - np.conj(Iw)).max(),
        np.abs(Rc - R).max(),
        np.abs(Ic + I).max(),
        np.abs(Rcc - np.conj(R)).max(),
        np.abs(Icc + np.conj(I)).max(),
    ]
    Rd, Id = cb.kernel_RI_split(z, z)
    Rb, Ib = cb.kernel_RI_split(z, np.conj(z))
    r.append(np.abs((Rb - 1j * Id) - (Rd + 1j * Ib)).max())
    return float(max(r)), {"pairs": 100}


def _ri_norm_identity(ctx, rng):
    rule = ctx.disk_rule(63)
    T = rule.exact_degree // 2
    worst = 0.0
    for z in _disk_points(rng, 5, 0.5):
        Rb, _ = cb.kernel_RI_split(z, np.conj(z))
        _, Id = cb.kernel_RI_split(z, z)
        R, I = cb.kernel_RI_truncated(np.array(z), rule.nodes, T)
        rhs = complex(integrate_values(np.abs(R) ** 2 - np.abs(I) ** 2, rule.weights))
        worst = max(worst, abs((Rb - 1j * Id) - rhs))
    return float(worst), {"series_degree": T, "max_abs_z": 0.5}


def _numeric_disk(ctx, rng):
    N = max(ctx.degree, 2)
    k = ctx.cached(("cdisk", N), lambda: cb.numeric_kernel_build(ctx.disk_rule(2 * N), N))
    z = _disk_points(rng, 100, 0.7)
    w = _disk_points(rng, 100, 0.7)
    return float(np.abs(k(z, w) - cb.disk_kernel_series(z, w, N)).max()), {"N": N}


def _rectangle(ctx, rng):
    N = max(ctx.degree, 3)
    rule = ctx.cached(("rect", N), lambda: build_rectangle_rule(N + 2, N + 2))
    k = ctx.cached(("crect", N), lambda: cb.numeric_kernel_build(rule, N))
    z = 0.8 * (rng.uniform(-1, 1, 50) + 0.5j * rng.uniform(-1, 1, 50))
    w = 0.8 * (rng.uniform(-1, 1, 50) + 0.5j * rng.uniform(-1, 1, 50))
    herm = float(np.abs(k(z, w) - np.conj(k(w, z))).max())
    f = HoloSeries.from_complex(_rand_complex(rng, N + 1), radius=2.0)
    fv = f.eval_complex(rule.nodes)
    worst = 0.0
    for zz in z[:10]:
        got = complex(integrate_values(k(np.array(zz), rule.nodes) * fv, rule.weights))
        worst = max(worst, abs(got - complex(f.eval_complex(np.array([zz]))[0])))
    return max(herm, worst), {"N": N}


def _projection(ctx, rng):
    rule = ctx.disk_rule(2 * ctx.degree + 2)
    f = _rand_holo(rng, ctx.degree)
    p = cb.bergman_project(f.eval_complex, rule, degree=ctx.degree + 1)
    r = [float(np.abs(p.coeffs[: ctx.degree + 1] - f.complex_coeffs()).max()), float(abs(p.coeffs[ctx.degree + 1]))]
    p0 = cb.bergman_project(np.conj, rule, degree=ctx.degree + 1)
    r.append(float(np.abs(p0.coeffs).max()))
    z = _disk_points(rng, 20)
    r.append(float(np.abs(p.r_part(z) + 1j * p.i_part(z) - f.eval_complex(z)).max()))
    return max(r), {}


# -- slice suite -----------------------------------------------------------

def _pq(ctx, rng):
    worst = 0.0
    for _ in range(5):
        F = _rand_slice(rng, ctx.degree)
        frame = _rand_frame(rng)
        q = _ball_points(rng, 50)
        f = restrict_Q(F, frame)
        worst = max(worst, float(np.abs(extend_P_array(f, q) - F.eval_array(q)).max()))
        worst = max(worst, float(np.abs(extend_series(f).coeffs - F.coeffs).max()))
    return worst, {"frames": 5, "points": 50}


def _extension_closed_forms(ctx, rng):
    frame = _rand_frame(rng)
    i = frame.i.to_array()
    q = _ball_points(rng, 100)
    x = q[:, 0]
    y = np.linalg.norm(q[:, 1:], axis=1)
    I = q.copy()
    I[:, 0] = 0
    I /= y[:, None]
    z = x + 1j * y
    worst = 0.0
    f = _rand_holo(rng, ctx.degree, frame, "C")
    v = f.eval_complex(z)
    want = v.real[:, None] * np.array([1.0, 0, 0, 0]) + v.imag[:, None] * I
    worst = max(worst, float(np.abs(extend_P_array(f, q) - want).max()))
    h = _rand_holo(rng, ctx.degree, frame, "antiC")
    v = h.eval_complex(z)
    inner = v.imag[:, None] * np.array([1.0, 0, 0, 0]) - v.real[:, None] * I
    want = qmul(inner, i)
    worst = max(worst, float(np.abs(extend_P_array(h, q) - want).max()))
    g = _rand_holo(rng, ctx.degree, frame)
    _, g2 = c_anti_decompose(g)
    v = g.eval_complex(z)
    one = np.array([1.0, 0, 0, 0])
    want = v.real[:, None] * one + v.imag[:, None] * I + qmul(one + qmul(I, i), g2.eval_array(np.conj(z)))
    worst = max(worst, float(np.abs(extend_P_array(g, q) - want).max()))
    return worst, {"points": 100}


def _intrinsic_extension(ctx, rng):
    frame = _rand_frame(rng)
    bad = False
    f = _rand_holo(rng, ctx.degree, frame, "C")
    bad |= is_intrinsic(extend_series(f)) is not IntrinsicClass.INTRINSIC
    h = _rand_holo(rng, ctx.degree, frame, "antiC")
    bad |= is_intrinsic(extend_series(h)) is not IntrinsicClass.ANTI_INTRINSIC
    F = _rand_slice(rng, ctx.degree, intrinsic=True)
    G = extend_series(c_part(restrict_Q(F, frame)))
    return max(float(np.abs(G.coeffs - F.coeffs).max()), _fail_if(bad)), {}


def _splitting(ctx, rng):
    worst = 0.0
    for _ in range(5):
        F = _rand_slice(rng, ctx.degree)
        frame = _rand_frame(rng)
        hs = refined_split(F, frame)
        rec = sum((h.right_mul(e).coeffs for h, e in zip(hs, frame.basis)), np.zeros_like(F.coeffs))
        worst = max(worst, float(np.abs(rec - F.coeffs).max()))
        parts = fourfold_decompose(F, frame)
        worst = max(worst, float(np.abs(recompose(parts, frame).coeffs - F.coeffs).max()))
        for ell, P in enumerate(parts):
            if is_intrinsic(P) is not IntrinsicClass.INTRINSIC and np.abs(P.coeffs).max() > 0:
                worst = math.inf
            again = fourfold_decompose(P.right_mul(frame.basis[ell]), frame)
            for m, A in enumerate(again):
                target = P.coeffs if m == ell else 0.0
                worst = max(worst, float(np.abs(A.coeffs - target).max()))
    return worst, {"frames": 5}


def _commute(ctx, rng):
    F = _rand_slice(rng, ctx.degree, True)
    G = _rand_slice(rng, ctx.degree, True)
    q = _ball_points(rng, 100)
    a = F.eval_array(q)
    b = G.eval_array(q)
    return float(np.abs(qmul(a, b) - qmul(b, a)).max()), {"points": 100}


def _alpha_beta(ctx, rng):
    r = []
    xy = _disk_points(rng, 100, 0.9)
    x, y = xy.real, xy.imag
    for intrinsic in (True, False):
        F = _rand_slice(rng, ctx.degree, intrinsic)
        ab = alpha_beta_of(F)
        a, b = ab.alpha(x, y), ab.beta(x, y)
        vec = max(float(np.abs(a[:, 1:]).max()), float(np.abs(b[:, 1:]).max()))
        real = vec <= 1e-12 * max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))
        claim = is_intrinsic(F) is IntrinsicClass.INTRINSIC
        if ctx.degree == 0 and not intrinsic:
            claim = real = (np.abs(F.coeffs[:, 1:]).max() == 0)
        r.append(_fail_if(real != claim))
        r.append(float(np.abs(ab.alpha(x, -y) - a).max()))
        r.append(float(np.abs(ab.beta(x, -y) + b).max()))
        q = _ball_points(rng, 50)
        r.append(float(np.abs(ab.compose(q) - F.eval_array(q)).max()))
        if intrinsic:
            r.append(float(np.abs(conjugation_defect(F, q)).max()))
    return max(r), {"points": 100}


def _cr(ctx, rng):
    F = _rand_slice(rng, ctx.degree)
    ab = alpha_beta_of(F)
    worst = 0.0
    for p in _disk_points(rng, 10, 0.3):
        r1, r2 = cr_residual(ab, p.real, p.imag)
        worst = max(worst, r1.norm(), r2.norm())
    return worst, {"step": 1e-5, "max_radius": 0.3}


# -- bergman suite ---------------------------------------------------------

def _second_restriction(ctx, rng):
    frame = _rand_frame(rng)
    z = _disk_points(rng, 100, 0.7)
    w = _disk_points(rng, 100, 0.7)
    K = sb.second_kind_eval(frame.embed(z), frame.embed(w))
    want = frame.embed(cb.disk_kernel_eval(z, w))
    q = _ball_points(rng, 100, 0.9)
    r = _ball_points(rng, 100, 0.9)
    Kqr = sb.second_kind_eval(q, r)
    Krq = sb.second_kind_eval(r, q)
    return max(float(np.abs(K - want).max()), float(np.abs(Kqr - qconj(Krq)).max())), {"pairs": 100}


def _slice_reproduction(ctx, rng):
    N = max(32, ctx.degree)
    worst = 0.0
    for _ in range(5):
        frame = _rand_frame(rng)
        rule = ctx.disk_rule(ctx.degree + N, frame)
        F = _rand_slice(rng, ctx.degree)
        for q in _ball_points(rng, 4):
            got = sb.slice_reproduce(F, q, frame, rule, N)
            worst = max(worst, float(np.abs(got.to_array() - F.eval_array(q)).max()))
    return worst, {"N": N}


def _components(ctx, rng):
    frame = _rand_frame(rng)
    N = max(32, ctx.degree)
    worst = 0.0
    for q, r in zip(_ball_points(rng, 10, 0.8), _ball_points(rng, 10, 0.8)):
        parts = sb.second_kind_components(q, r, frame, N)
        total = sum(qmul(np.asarray(p), e) for p, e in zip(parts, frame.basis))
        worst = max(worst, float(np.abs(total - np.asarray(sb.second_kind_eval(q, r, N))).max()))
        for S in sb.component_series(r, frame, N):
            if is_intrinsic(S) is not IntrinsicClass.INTRINSIC and np.abs(S.coeffs).max() > 0:
                worst = math.inf
    rule = ctx.disk_rule(ctx.degree + N, frame)
    F = _rand_slice(rng, ctx.degree)
    q = _ball_points(rng, 1)[0]
    got = sb.component_sum_reproduce(F, q, frame, rule, N)
    worst = max(worst, float(np.abs(got.to_array() - F.eval_array(q)).max()))
    comp = sb.component_reproduce(F, q, frame, rule, N)
    literal = float(np.abs(comp[:, 0] - frame.coords(F.eval_array(q))).max())
    return worst, {"N": N, "component_literal_residual": literal}


def _gram(ctx, rng):
    N = max(ctx.N, 2)
    k = ctx.first_kind(N)
    G = k.gram
    p2 = math.pi ** 2
    r = [abs(G[0, 0] - p2 / 2), abs(G[1, 1] - p2 / 3), abs(G[0, 2] - (-p2 / 6)), abs(G[2, 2] - p2 / 4)]
    n = np.arange(N + 1)
    band = np.abs(n[:, None] - n[None, :])
    off = np.where((band != 0) & (band != 2), np.abs(G), 0.0)
    r.append(float(off.max()))
    return float(max(r)), {"N": N}


def _first_kind(ctx, rng):
    N = ctx.N
    k = ctx.first_kind(N)
    rule = k.rule
    F = _rand_slice(rng, N)
    fv = F.eval_array(rule.nodes)
    worst = 0.0
    for q in _ball_points(rng, 5):
        b = sb.first_kind_eval(k, q, rule.nodes)
        got = integrate_values(qmul(b, fv), rule.weights)
        worst = max(worst, float(np.abs(got - F.eval_array(q)).max()))
    q = _ball_points(rng, 50)
    r = _ball_points(rng, 50)
    herm = float(np.abs(sb.first_kind_eval(k, q, r) - qconj(sb.first_kind_eval(k, r, q))).max())
    return max(worst, herm), {"N": N}


def _anti_slice(ctx, rng):
    N = ctx.N
    k = ctx.first_kind(N)
    frame = _rand_frame(rng)
    worst = 0.0
    for q, p in zip(_ball_points(rng, 5, 0.3), _disk_points(rng, 5, 0.3)):
        worst = max(worst, sb.anti_slice_residual(k, q, p.real, p.imag, frame))
    return worst, {"N": N, "step": 1e-5}


def _consistency(ctx, rng):
    N = ctx.N
    if ctx.mismatch:
        kN, KN = 2, max(N, 8)
        pts = [(np.array([0.5, 0, 0, 0]), np.array([0.5, 0, 0, 0]))]
    else:
        kN, KN = N, N
        pts = list(zip(_ball_points(rng, 20, 0.5), _ball_points(rng, 20, 0.5)))
    k = ctx.first_kind(kN)
    rule = ctx.ball_rule(kN + KN)
    worst = max(sb.kernel_consistency(k, KN, rule, z, q) for z, q in pts)
    return worst, {"kernel_N": kN, "second_kind_N": KN}


def _mi_hand(ctx, rng):
    k = ctx.first_kind(2)
    m = sb.m_i_apply(k, SliceSeries.from_real([1.0]), Frame.standard())
    want = np.array([18.0, 0.0, 12.0]) / (7 * math.pi)
    r = float(np.abs(m.coeffs[:, 0] - want).max())
    r = max(r, float(np.abs(m.coeffs[:, 1:]).max()))
    return r, {"N": 2}


def _mi_paths(ctx, rng):
    N = ctx.N
    k = ctx.first_kind(N)
    frame = _rand_frame(rng)
    prule = ctx.disk_rule(2 * N, frame)
    F = _rand_slice(rng, N)
    a = sb.m_i_apply(k, F, frame)
    b = sb.m_i_apply(k, F, frame, prule, "quadrature")
    r = [float(np.abs(a.coeffs - b.coeffs).max())]
    for q in _ball_points(rng, 3):
        r.append(float(np.abs(sb.m_i_eval(k, F, q, frame, prule).to_array() - a.eval_array(q)).max()))
    return max(r), {"N": N}


def _two_stage(ctx, rng):
    N = ctx.N
    k = ctx.first_kind(N)
    worst = 0.0
    for _ in range(3):
        frame = _rand_frame(rng)
        prule = ctx.disk_rule(2 * N, frame)
        F = _rand_slice(rng, ctx.degree)
        for q in _ball_points(rng, 3):
            got = sb.two_stage_reproduce(F, q, k, frame, prule, k.rule, method="quadrature")
            worst = max(worst, float(np.abs(got.to_array() - F.eval_array(q)).max()))
    return worst, {"N": N}


def _adjoint(ctx, rng):
    N = ctx.N
    k = ctx.first_kind(N)
    frame = _rand_frame(rng)
    prule = ctx.disk_rule(2 * N, frame)
    worst = 0.0
    for a in range(ctx.degree + 1):
        for b in range(ctx.degree + 1):
            f = SliceSeries.monomial(a, rng.normal(size=4))
            g = SliceSeries.monomial(b, rng.normal(size=4))
            lhs, rhs = sb.mi_adjoint_identity(f, g, k, frame, prule, k.rule)
            worst = max(worst, float(np.abs(lhs.to_array() - rhs.to_array()).max()))
    g = _rand_slice(rng, ctx.degree)
    lhs, rhs = sb.mi_adjoint_identity(g, g, k, frame, prule, k.rule)
    worst = max(worst, float(np.abs(lhs.vector).max()), float(np.abs(lhs.to_array() - rhs.to_array()).max()))
    worst = max(worst, _fail_if(lhs.real < 0))
    F = _rand_slice(rng, ctx.degree, True)
    G = _rand_slice(rng, ctx.degree, True)
    ip = integrate_values(
        qmul(qconj(restrict_Q(F, frame).eval_array(prule.nodes)), restrict_Q(G, frame).eval_array(prule.nodes)),
        prule.weights,
    )
    worst = max(worst, float(np.abs(ip[1:]).max()))
    return worst, {"N": N}


IDENTITIES: tuple[Identity, ...] = (
    Identity("c_pair_decomposition", "complex", "f = f1 + i f2 with f1, f2 real-coefficient, unique", "exact", _c_pair),
    Identity("c_anti_decomposition", "complex", "f = fc + fa, fc C-property, fa anti-C-property", "exact", _c_anti),
    Identity("c_property_pointwise", "complex", "real coefficients <=> f(conj z) = conj f(z); Z f Z involutive", "exact", _c_pointwise),
    Identity("multiplication_by_i", "complex", "f -> i f maps Hol_c onto Hol_anti-c", "exact", _i_iso),
    Identity("conjugation_norm", "complex", "int |f|^2 = int |Z f Z|^2", "quadrature", _norm_preserved),
    Identity("c_property_integrals", "complex", "integrals, norm bounds and inner products of C-property functions", "quadrature", _integral_props),
    Identity("re_im_intrinsic", "complex", "int R(z,.) f = Re f(z), int I(z,.) f = Im f(z) for f with C-property", "quadrature", _re_im("C")),
    Identity("re_im_anti", "complex", "int R(z,.) f = i Im f(z), int I(z,.) f = -i Re f(z) for anti-C f", "quadrature", _re_im("antiC")),
    Identity("re_im_general", "complex", "int R(z,.) f = Re f1 + i Im f2, int I(z,.) f = Im f1 - i Re f2", "quadrature", _re_im("general")),
    Identity("ri_symmetries", "complex", "conjugation symmetries of R and I; R(z,conj z) - i I(z,z) = R(z,z) + i I(z,conj z)", "exact", _ri_symmetry),
    Identity("ri_norm_identity", "complex", "R(z,conj z) - i I(z,z) = int |R(z,.)|^2 - |I(z,.)|^2", "quadrature", _ri_norm_identity),
    Identity("numeric_disk_kernel", "complex", "Gram-built disk kernel equals the closed-form series at matched degree", "quadrature", _numeric_disk),
    Identity("rectangle_kernel", "complex", "rectangle Gram kernel is hermitian and reproduces polynomials", "quadrature", _rectangle),
    Identity("bergman_projection", "complex", "B = R + i I; projection fixes polynomials and kills conj(z)", "quadrature", _projection),
    Identity("representation_formula", "slice", "P_i Q_i = I and Q_i P_i = I (pointwise and on coefficients)", "exact", _pq),
    Identity("extension_closed_forms", "slice", "P_i[f] in terms of Re f, Im f for C, anti-C and general f", "exact", _extension_closed_forms),
    Identity("intrinsic_extension", "slice", "P_i maps Hol_c onto SR_c and Hol_anti-c into SR_anti-c", "exact", _intrinsic_extension),
    Identity("fourfold_decomposition", "slice", "refined splitting and SR = SR_c + SR_c i + SR_c j + SR_c ij (direct)", "exact", _splitting),
    Identity("intrinsic_commute", "slice", "f g = g f for intrinsic f, g", "exact", _commute),
    Identity("alpha_beta", "slice", "alpha, beta real <=> intrinsic; parity in y; f = alpha + I beta", "exact", _alpha_beta),
    Identity("cauchy_riemann", "slice", "d_x alpha = d_y beta, d_y alpha = -d_x beta", "fd", _cr),
    Identity("second_kind_restriction", "bergman", "second-kind kernel restricts to the disk kernel and is hermitian", "exact", _second_restriction),
    Identity("slice_reproduction", "bergman", "f(q) = int_{B_i} K(q, z) Q_i f(z) dsigma for q off the slice", "quadrature", _slice_reproduction),
    Identity("kernel_components", "bergman", "K = K0 + K1 i + K2 j + K3 ij with intrinsic components", "quadrature", _components),
    Identity("gram_moments", "bergman", "G00 = pi^2/2, G11 = pi^2/3, G02 = -pi^2/6, G22 = pi^2/4; band |n-m| in {0,2}", "quadrature", _gram),
    Identity("first_kind_reproduction", "bergman", "int_B B(q,r) f(r) dmu = f(q); B hermitian", "quadrature", _first_kind),
    Identity("first_kind_anti_slice", "bergman", "r -> B(q,r) is anti-slice regular on the right", "fd", _anti_slice),
    Identity("kernel_consistency", "bergman", "K(zeta,q) = int_B B(zeta,r) K(r,q) dmu_r", "quadrature", _consistency),
    Identity("m_i_hand_value", "bergman", "M_i[1] = (18 + 12 q^2)/(7 pi) at N = 2", "exact", _mi_hand),
    Identity("m_i_paths", "bergman", "M_i by coefficient algebra, quadrature moments and the integral definition agree", "quadrature", _mi_paths),
    Identity("two_stage_reproduction", "bergman", "f(q) = int_B K(q,r) M_i[f](r) dmu_r", "quadrature", _two_stage),
    Identity("m_i_adjoint", "bergman", "int_B conj(M_i f) g dmu = int_{B_i} conj(Q_i f) Q_i g dsigma", "quadrature", _adjoint),
)


def select(suite: str) -> list[Identity]:
    if suite == "all":
        return list(IDENTITIES)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [idt for idt in IDENTITIES if idt.suite == suite]


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("QSB_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(idt: Identity, index: int, ctx: Context, tol: float | None) -> dict:
    rng = np.random.default_rng([ctx.seed, index])
    tolerance = TOLERANCES[idt.kind] if tol is None else tol
    record = {"identity": idt.id, "suite": idt.suite, "statement": idt.statement}
    try:
        residual, params = idt.run(ctx, rng)
        residual = float(residual)
        ok = math.isfinite(residual) and residual <= tolerance
        record.update(parameters=params, max_residual=residual, tolerance=tolerance, **{"pass": ok})
    except Exception as exc:  # failures are report entries
        record.update(
            parameters={},
            max_residual=None,
            tolerance=tolerance,
            **{"pass": False},
            error=f"{type(exc).__name__}: {exc}",
        )
    return record


def run_suite(
    suite: str = "all",
    degree: int = 5,
    tol: float | None = None,
    seed: int = 0,
    mismatch: bool = False,
    threads: int | None = None,
    timing: bool = False,
) -> dict:
    """Run a suite and return the report as an ordered dict."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    ctx = Context(degree, seed, mismatch)
    chosen = select(suite)
    index = {idt.id: n for n, idt in enumerate(IDENTITIES)}
    threads = thread_count() if threads is None else max(1, threads)
    start = time.perf_counter()
    if threads == 1:
        records = [_run_one(idt, index[idt.id], ctx, tol) for idt in chosen]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_one, idt, index[idt.id], ctx, tol) for idt in chosen]
            records = [f.result() for f in futures]
    report = {
        "suite": suite,
        "parameters": {"degree": degree, "seed": seed, "tol": tol, "mismatch": mismatch},
        "records": records,
        "pass": all(r["pass"] for r in records),
    }
    if timing:
        report["wall_time"] = time.perf_counter() - start
    return report
