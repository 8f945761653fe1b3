"""One test per acceptance criterion, each printing a single PASS/FAIL line."""

import os
import subprocess
import sys
from functools import lru_cache

import numpy as np
import pytest

from qsb import (
    HoloClass,
    HoloSeries,
    IntrinsicClass,
    SliceSeries,
    alpha_beta_of,
    build_ball_rule,
    build_disk_rule,
    c_anti_decompose,
    c_pair_decompose,
    classify,
    disk_kernel_eval,
    extend_series,
    fourfold_decompose,
    gram_build,
    is_intrinsic,
    kernel_consistency,
    kernel_RI_split,
    m_i_apply,
    mi_adjoint_identity,
    numeric_kernel_build,
    re_im_apply,
    re_im_closed_form,
    refined_split,
    restrict_Q,
    slice_reproduce,
    split_basis,
    two_stage_reproduce,
)
from qsb.cbergman import disk_kernel_series
from qsb.qalg import qmul
from qsb.slicefn import conjugation_defect, extend_P_array, recompose, slice_coords_array
from strategies import rand_ball, rand_disk, rand_frame, standard

PI = np.pi
RULE_32_64 = build_disk_rule(32, 64)


def ball_rule_for(degree):
    return build_ball_rule(max(4, (degree + 5) // 2), degree + 3 + (degree + 3) % 2)


@lru_cache(maxsize=None)
def first_kind(N):
    return gram_build(N, ball_rule_for(2 * N))


def rand_holo(rng, degree, frame, kind="general"):
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    if kind == "C":
        c = c.real + 0j
    elif kind == "antiC":
        c = 1j * c.imag
    return HoloSeries.from_complex(c, frame)


def rand_slice(rng, degree, intrinsic=False):
    c = rng.normal(size=(degree + 1, 4))
    if intrinsic:
        c[:, 1:] = 0.0
    return SliceSeries(c)


def test_criterion_01_c_decompositions(criterion):
    rng = np.random.default_rng(101)
    worst, classes_ok = 0.0, True
    for _ in range(200):
        f = rand_holo(rng, int(rng.integers(0, 13)), rand_frame(rng))
        c = f.complex_coeffs()
        f1, f2 = c_pair_decompose(f)
        worst = max(worst, np.abs(f1.complex_coeffs() + 1j * f2.complex_coeffs() - c).max())
        fc, fa = c_anti_decompose(f)
        worst = max(worst, np.abs(fc.complex_coeffs() + fa.complex_coeffs() - c).max())
        classes_ok &= classify(f1) is HoloClass.C and classify(f2) is HoloClass.C
        classes_ok &= classify(fc) is HoloClass.C and classify(fa) is HoloClass.ANTI_C
        # uniqueness: decomposing a part returns it unchanged
        for part, want in ((c_pair_decompose(f1), (f1, None)), (c_anti_decompose(fc), (fc, None)), (c_anti_decompose(fa), (None, fa))):
            for got, w in zip(part, want):
                ref = 0.0 if w is None else w.complex_coeffs()
                worst = max(worst, np.abs(got.complex_coeffs() - ref).max())
        g1, g2 = c_pair_decompose(f2.left_mul(f.frame.i.value))
        worst = max(worst, np.abs(g1.complex_coeffs()).max(), np.abs(g2.complex_coeffs() - f2.complex_coeffs()).max())
    ok = worst <= 1e-13 and classes_ok
    criterion(1, ok, f"200 series deg<=12: max residual {worst:.2e} (tol 1e-13), classes {'ok' if classes_ok else 'wrong'}")
    assert ok


def test_criterion_02_representation_and_splitting(criterion):
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(10):
        frame = rand_frame(rng)
        for _ in range(20):
            F = rand_slice(rng, int(rng.integers(0, 13)))
            f = restrict_Q(F, frame)
            worst = max(worst, np.abs(extend_series(f).coeffs - F.coeffs).max())
            worst = max(worst, np.abs(restrict_Q(extend_series(f), frame).coeffs - f.coeffs).max())
            f1, f2 = split_basis(F, frame)
            worst = max(worst, np.abs((f1 + f2.right_mul(frame.j.value)).coeffs - f.coeffs).max())
            hs = refined_split(F, frame)
            total = sum(h.right_mul(e).coeffs for h, e in zip(hs, frame.basis))
            worst = max(worst, np.abs(total - F.coeffs).max())
            worst = max(worst, max(np.abs(h.frame_coords()[:, 1:]).max() for h in hs))
            parts = fourfold_decompose(F, frame)
            worst = max(worst, np.abs(recompose(parts, frame).coeffs - F.coeffs).max())
            worst = max(worst, max(np.abs(P.coeffs[:, 1:]).max() for P in parts))
    ok = worst <= 1e-13
    criterion(2, ok, f"200 series x 10 frames: max coefficient residual {worst:.2e} (tol 1e-13)")
    assert ok


def test_criterion_03_extension_closed_forms(criterion):
    rng = np.random.default_rng(103)
    worst = 0.0
    one = np.array([1.0, 0, 0, 0])
    for kind in ("C", "antiC", "general"):
        for _ in range(10):
            f = rand_holo(rng, int(rng.integers(0, 9)), rand_frame(rng), kind)
            q = rand_ball(rng, 100)
            x, y, I = slice_coords_array(q)
            z = x + 1j * y
            i = f.frame.i.to_array()
            fc, fa = c_anti_decompose(f)
            vc = fc.eval_complex(z)
            va = fa.eval_complex(z)
            # C part -> Re + I Im; anti-C part -> (Im - I Re) i
            want = vc.real[:, None] * one + vc.imag[:, None] * I
            want = want + qmul(va.imag[:, None] * one - va.real[:, None] * I, i)
            worst = max(worst, np.abs(extend_P_array(f, q) - want).max())
    ok = worst <= 1e-12
    criterion(3, ok, f"30 series x 100 points: max residual {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_04_intrinsic_characterizations(criterion):
    rng = np.random.default_rng(104)
    agree, worst = True, 0.0
    for n in range(60):
        F = rand_slice(rng, int(rng.integers(0, 9)), intrinsic=(n % 3 == 0))
        if n % 3 == 1:
            F = SliceSeries(np.concatenate([np.zeros((F.coeffs.shape[0], 1)), F.coeffs[:, 1:]], axis=1))
        q = rand_ball(rng, 100)
        flag = is_intrinsic(F) is IntrinsicClass.INTRINSIC
        sym = np.abs(conjugation_defect(F, q)).max() <= 1e-12
        x, y, _ = slice_coords_array(q)
        ab = alpha_beta_of(F)
        real_ab = max(np.abs(ab.alpha(x, y)[:, 1:]).max(), np.abs(ab.beta(x, y)[:, 1:]).max()) <= 1e-12
        agree &= flag == sym == real_ab
    for _ in range(20):
        F, G = rand_slice(rng, 8, True), rand_slice(rng, 8, True)
        q = rand_ball(rng, 100)
        a, b = F.eval_array(q), G.eval_array(q)
        worst = max(worst, np.abs(qmul(a, b) - qmul(b, a)).max())
    ok = agree and worst <= 1e-12
    criterion(4, ok, f"three characterizations {'agree' if agree else 'disagree'} on 60 series; commutator {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_05_complex_bergman(criterion):
    rng = np.random.default_rng(105)
    frame = standard()
    worst = 0.0
    for _ in range(20):
        f = rand_holo(rng, int(rng.integers(0, 11)), frame)
        for z in rand_disk(rng, 5):
            for a, b in zip(re_im_apply(f, z, RULE_32_64), re_im_closed_form(f, z)):
                worst = max(worst, np.abs(a.to_array() - b.to_array()).max())
    z, w = rand_disk(rng, 100), rand_disk(rng, 100)
    R, I = kernel_RI_split(z, w)
    Rc, Ic = kernel_RI_split(np.conj(z), w)
    Rw, Iw = kernel_RI_split(z, np.conj(w))
    Rcc, Icc = kernel_RI_split(np.conj(z), np.conj(w))
    Rd, Id = kernel_RI_split(z, z)
    Rb, Ib = kernel_RI_split(z, np.conj(z))
    sym = max(
        np.abs(R + 1j * I - disk_kernel_eval(z, w)).max(),
        np.abs(Rc - R).max(),
        np.abs(Ic + I).max(),
        np.abs(R - np.conj(Rw)).max(),
        np.abs(I - np.conj(Iw)).max(),
        np.abs(Rcc - np.conj(R)).max(),
        np.abs(Icc + np.conj(I)).max(),
        np.abs((Rb - 1j * Id) - (Rd + 1j * Ib)).max(),
    )
    ok = worst <= 1e-10 and sym <= 1e-12
    criterion(5, ok, f"re/im vs closed forms {worst:.2e} (tol 1e-10); kernel symmetries {sym:.2e} (tol 1e-12)")
    assert ok


def _criterion_6_points():
    rng = np.random.default_rng(106)
    return rand_disk(rng, 200, 0.7), rand_disk(rng, 200, 0.7)


def test_criterion_06_numeric_disk_kernel(criterion):
    """Numeric N = 10 kernel against the closed-form coefficients truncated at the same N."""
    k = numeric_kernel_build(RULE_32_64, 10)
    z, w = _criterion_6_points()
    res = float(np.abs(k(z, w) - disk_kernel_series(z, w, 10)).max())
    tail = float(np.abs(disk_kernel_series(z, w, 10) - disk_kernel_eval(z, w)).max())
    ok = res <= 1e-8
    criterion(6, ok, f"N=10, |z|,|zeta|<=0.7: vs matched truncation {res:.2e} (tol 1e-8); truncation tail to closed form {tail:.2e}")
    assert ok


@pytest.mark.xfail(strict=True, reason="degree-10 polynomial kernel cannot match the untruncated closed form at |z zeta| ~ 0.49")
def test_criterion_06_literal_closed_form(criterion):
    k = numeric_kernel_build(RULE_32_64, 10)
    z, w = _criterion_6_points()
    res = float(np.abs(k(z, w) - disk_kernel_eval(z, w)).max())
    criterion("6*", res <= 1e-8, f"literal reading, N=10 vs closed form: {res:.2e} (tol 1e-8)")
    assert res <= 1e-8


def test_criterion_07_gram_moments(criterion):
    G = first_kind(8).gram
    hand = {(0, 0): PI**2 / 2, (1, 1): PI**2 / 3, (0, 2): -PI**2 / 6, (2, 2): PI**2 / 4}
    moment = max(abs(G[nm] - v) for nm, v in hand.items())
    n = np.arange(G.shape[0])
    off = np.abs(n[:, None] - n[None, :])
    band = float(np.abs(G[(off != 0) & (off != 2)]).max())
    ok = moment <= 1e-9 and band < 1e-10
    criterion(7, ok, f"moments {moment:.2e} (tol 1e-9); off-band {band:.2e} (tol 1e-10)")
    assert ok


def test_criterion_08_slice_reproduction(criterion):
    rng = np.random.default_rng(108)
    worst = 0.0
    for _ in range(50):
        F = rand_slice(rng, int(rng.integers(0, 9)))
        q = rand_ball(rng, 1)[0]
        got = slice_reproduce(F, q, rand_frame(rng), RULE_32_64, N=32)
        worst = max(worst, np.abs(got.to_array() - F.eval_array(q)).max())
    ok = worst <= 1e-9
    criterion(8, ok, f"50 pairs deg<=8, N=32, rule (32,64): max error {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_09_two_stage(criterion):
    rng = np.random.default_rng(109)
    k = first_kind(8)
    worst = 0.0
    for _ in range(50):
        F = rand_slice(rng, int(rng.integers(0, 9)))
        q = rand_ball(rng, 1)[0]
        got = two_stage_reproduce(F, q, k, rand_frame(rng), None, k.rule)
        worst = max(worst, np.abs(got.to_array() - F.eval_array(q)).max())
    m = m_i_apply(first_kind(2), SliceSeries(np.array([[1.0, 0, 0, 0]])), standard())
    want = np.zeros((3, 4))
    want[0, 0], want[2, 0] = 18 / (7 * PI), 12 / (7 * PI)
    hand = float(np.abs(m.coeffs - want).max())
    ok = worst <= 1e-8 and hand <= 1e-12
    criterion(9, ok, f"50 pairs at N=8: max error {worst:.2e} (tol 1e-8); M_i[1] at N=2 {hand:.2e} (tol 1e-12)")
    assert ok


def test_criterion_10_kernel_consistency(criterion):
    rng = np.random.default_rng(110)
    k = first_kind(8)
    rule = ball_rule_for(16)
    zeta, q = rand_ball(rng, 20, 0.5), rand_ball(rng, 20, 0.5)
    worst = max(kernel_consistency(k, 8, rule, a, b) for a, b in zip(zeta, q))
    half = np.array([0.5, 0, 0, 0])
    control = kernel_consistency(first_kind(2), 8, ball_rule_for(10), half, half)
    ok = worst <= 1e-9 and control >= 1e-3
    criterion(10, ok, f"20 pairs |.|<=0.5 at N=8: {worst:.2e} (tol 1e-9); mismatched control {control:.2e} (>= 1e-3)")
    assert ok


def test_criterion_11_m_i_inner_products(criterion):
    k = first_kind(6)
    frame = rand_frame(np.random.default_rng(111))
    prule = build_disk_rule(8, 16, frame)
    units = np.eye(4)
    worst, diag_ok = 0.0, True
    for a in range(7):
        for b in range(7):
            for u in units:
                for v in units:
                    lhs, rhs = mi_adjoint_identity(SliceSeries.monomial(a, u), SliceSeries.monomial(b, v), k, frame, prule, k.rule)
                    worst = max(worst, np.abs(lhs.to_array() - rhs.to_array()).max())
                    if a == b and np.array_equal(u, v):
                        diag_ok &= lhs.real > 0 and np.abs(lhs.vector).max() <= 1e-9
    ok = worst <= 1e-9 and diag_ok
    criterion(11, ok, f"all monomial pairs deg<=6 (16 unit pairs each): {worst:.2e} (tol 1e-9); f=g nonnegative real: {diag_ok}")
    assert ok


def _verify_bytes(threads):
    env = dict(os.environ, QSB_THREADS=str(threads))
    res = subprocess.run(
        [sys.executable, "-m", "qsb", "verify", "--suite", "all", "--degree", "5"],
        capture_output=True, env=env, check=False,
    )
    return res.returncode, res.stdout


def test_criterion_12_determinism(criterion):
    runs = [_verify_bytes(1), _verify_bytes(1), _verify_bytes(4), _verify_bytes(4)]
    same = all(r == runs[0] for r in runs)
    ok = same and runs[0][0] == 0 and len(runs[0][1]) > 0
    criterion(12, ok, f"4 runs (QSB_THREADS 1,1,4,4): byte-identical={same}, exit {runs[0][0]}")
    assert ok
