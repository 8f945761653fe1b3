import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsb import (
    E1,
    E2,
    E3,
    AlphaBeta,
    Frame,
    HoloSeries,
    IntrinsicClass,
    OutOfDomain,
    Quaternion,
    SliceSeries,
    alpha_beta_of,
    c_anti_decompose,
    cr_residual,
    extend_P,
    extend_series,
    fourfold_decompose,
    is_intrinsic,
    refined_split,
    restrict_Q,
    split_basis,
)
from qsb.qalg import qconj, qmul, slice_coords_array
from qsb.slicefn import conjugation_defect, extend_P_array, recompose
from strategies import ball_points, frames, holo_series, rand_ball, slice_series

STD = Frame.standard()
ONE = Quaternion(1, 0, 0, 0)


def ss(*rows):
    return SliceSeries(np.array(rows, dtype=float))


def hs(*c, frame=STD, radius=1.0):
    return HoloSeries.from_complex(list(c), frame, radius)


Z = [0, 0, 0, 0]
R1 = [1, 0, 0, 0]


def test_extend_P_examples():
    # e2 sits on the unit sphere, so these use a series on a larger ball
    assert extend_P(hs(0, 1, radius=2.0), E2).isclose(E2)
    assert extend_P(hs(0, 0, 1, radius=2.0), E2).isclose(Quaternion(-1, 0, 0, 0))
    for q in (Quaternion(0.1, 0.2, -0.3, 0.4), Quaternion(0.5, 0, 0, 0)):
        assert extend_P(hs(1j), q).isclose(E1)


def test_extend_P_real_point_is_direct_evaluation():
    f = hs(1, 2j, 3)
    assert extend_P(f, Quaternion(0.4, 0, 0, 0)).isclose(f(0.4))


def test_extend_P_outside():
    with pytest.raises(OutOfDomain):
        extend_P(hs(1), Quaternion(0, 1, 0, 0))


def test_restrict_examples():
    f = restrict_Q(ss(Z, Z, R1), STD)
    assert f.allclose(hs(0, 0, 1))
    f = restrict_Q(ss(Z, [0, 0, 1, 0]), STD)
    assert f(0.5).isclose(0.5 * E2)


def test_split_basis_examples():
    f1, f2 = split_basis(ss(Z, [0, 0, 1, 0]), STD)
    assert f1.allclose(hs(0)) and f2.allclose(hs(0, 1))
    f1, f2 = split_basis(ss(Z, R1), STD)
    assert f1.allclose(hs(0, 1)) and f2.allclose(hs(0))
    f1, f2 = split_basis(ss(Z, [0, 1, 0, 0]), STD)
    assert f1.allclose(hs(0, 1j)) and f2.allclose(hs(0))


def test_refined_split_examples():
    names = [hs(0, 1) if k else hs(0) for k in (0, 1, 0, 0)]
    for h, want in zip(refined_split(ss(Z, [0, 1, 0, 0]), STD), names):
        assert h.allclose(want)
    for h, want in zip(refined_split(ss(Z, R1), STD), [hs(0, 1), hs(0), hs(0), hs(0)]):
        assert h.allclose(want)
    for h, want in zip(refined_split(ss(Z, [0, 0, 0, 1]), STD), [hs(0), hs(0), hs(0), hs(0, 1)]):
        assert h.allclose(want)


def test_fourfold_examples():
    q = ss(Z, R1)
    zero = ss(Z)
    parts = fourfold_decompose(ss(Z, [1, 1, 0, 0]), STD)
    for p, want in zip(parts, (q, q, zero, zero)):
        assert p.allclose(want)
    F = ss([2, 0, 0, 0], [0.5, 0, 0, 0])
    for p, want in zip(fourfold_decompose(F, STD), (F, zero, zero, zero)):
        assert p.allclose(want)
    parts = fourfold_decompose(ss(Z, Z, [0, 0, 1, 0]), STD)
    for p, want in zip(parts, (zero, zero, ss(Z, Z, R1), zero)):
        assert p.allclose(want)


@given(slice_series(12), frames())
def test_P_and_Q_are_inverse(F, frame):
    f = restrict_Q(F, frame)
    assert np.array_equal(extend_series(f).coeffs, F.coeffs)
    q = rand_ball(np.random.default_rng(1), 20)
    assert np.allclose(extend_P_array(f, q), F.eval_array(q), atol=1e-12)


@given(holo_series(10))
def test_Q_after_P_on_slice(f):
    z = np.array([0.3 + 0.2j, -0.5j, 0.1])
    back = restrict_Q(extend_series(f), f.frame)
    assert np.allclose(back.eval_array(z), f.eval_array(z), atol=1e-13)


@given(slice_series(12), frames())
def test_refined_split_reconstructs(F, frame):
    hs_ = refined_split(F, frame)
    for h in hs_:
        assert np.allclose(h.frame_coords()[:, 1:], 0, atol=1e-15)
    total = sum(h.right_mul(e).coeffs for h, e in zip(hs_, frame.basis))
    assert np.allclose(total, F.coeffs, atol=1e-13)
    f1, f2 = split_basis(F, frame)
    rebuilt = f1 + f2.right_mul(frame.j.value)
    assert rebuilt.allclose(restrict_Q(F, frame), 1e-13)


@given(slice_series(12), frames())
def test_fourfold_is_a_direct_sum(F, frame):
    parts = fourfold_decompose(F, frame)
    assert np.allclose(recompose(parts, frame).coeffs, F.coeffs, atol=1e-13)
    for ell, P in enumerate(parts):
        assert is_intrinsic(P) is IntrinsicClass.INTRINSIC or np.abs(P.coeffs).max() == 0
        again = fourfold_decompose(P.right_mul(frame.basis[ell]), frame)
        for m, A in enumerate(again):
            target = P.coeffs if m == ell else 0.0
            assert np.allclose(A.coeffs, target, atol=1e-13)


def _closed_forms(f, q):
    x, y, I = slice_coords_array(q)
    z = x + 1j * y
    i = f.frame.i.to_array()
    one = np.array([1.0, 0, 0, 0])
    return z, i, one, I


@given(holo_series(8, "C"))
def test_extension_of_c_property_series(f):
    q = rand_ball(np.random.default_rng(2), 100)
    z, _, one, I = _closed_forms(f, q)
    v = f.eval_complex(z)
    want = v.real[:, None] * one + v.imag[:, None] * I
    assert np.allclose(extend_P_array(f, q), want, atol=1e-12)


@given(holo_series(8, "antiC"))
def test_extension_of_anti_c_series(f):
    q = rand_ball(np.random.default_rng(3), 100)
    z, i, one, I = _closed_forms(f, q)
    v = f.eval_complex(z)
    want = qmul(v.imag[:, None] * one - v.real[:, None] * I, i)
    assert np.allclose(extend_P_array(f, q), want, atol=1e-12)


@given(holo_series(8))
def test_extension_of_general_series(f):
    q = rand_ball(np.random.default_rng(4), 100)
    z, i, one, I = _closed_forms(f, q)
    _, f2 = c_anti_decompose(f)
    v = f.eval_complex(z)
    want = v.real[:, None] * one + v.imag[:, None] * I + qmul(one + qmul(I, i), f2.eval_array(np.conj(z)))
    assert np.allclose(extend_P_array(f, q), want, atol=1e-12)


@given(holo_series(8, "C"), holo_series(8, "antiC"))
def test_extension_preserves_classes(f, g):
    assert is_intrinsic(extend_series(f)) is IntrinsicClass.INTRINSIC
    if np.abs(g.coeffs).max() > 0:
        assert is_intrinsic(extend_series(g)) is IntrinsicClass.ANTI_INTRINSIC


@given(slice_series(8, intrinsic=True), frames())
def test_intrinsic_is_extension_of_its_c_part(F, frame):
    fc, _ = c_anti_decompose(restrict_Q(F, frame))
    assert np.allclose(extend_series(fc).coeffs, F.coeffs, atol=1e-13)


@given(slice_series(8, intrinsic=True), slice_series(8, intrinsic=True))
def test_intrinsic_functions_commute(F, G):
    q = rand_ball(np.random.default_rng(5), 100)
    a, b = F.eval_array(q), G.eval_array(q)
    assert np.allclose(qmul(a, b), qmul(b, a), atol=1e-12)


def test_non_intrinsic_functions_need_not_commute():
    F = ss(Z, [0, 0, 1, 0])
    G = ss(Z, R1)
    q = np.array([[0.1, 0.3, 0, 0]])
    a, b = F.eval_array(q), G.eval_array(q)
    assert not np.allclose(qmul(a, b), qmul(b, a))


def test_is_intrinsic_examples():
    assert is_intrinsic(ss(Z, Z, R1)) is IntrinsicClass.INTRINSIC
    assert is_intrinsic(ss(Z, [0, 1, 0, 0])) is IntrinsicClass.ANTI_INTRINSIC
    assert is_intrinsic(ss([0, 1, 0, 0], R1)) is IntrinsicClass.NEITHER
    assert is_intrinsic(ss([3, 0, 0, 0])) is IntrinsicClass.INTRINSIC


@given(slice_series(8))
def test_intrinsic_iff_conjugation_symmetric(F):
    q = rand_ball(np.random.default_rng(6), 100)
    pointwise = np.abs(conjugation_defect(F, q)).max() <= 1e-12 * np.abs(F.coeffs).max()
    assert pointwise == (is_intrinsic(F) is IntrinsicClass.INTRINSIC)


def test_alpha_beta_examples():
    x, y = np.array([0.3, -0.2]), np.array([0.4, 0.1])
    ab = alpha_beta_of(ss(Z, Z, R1))
    assert np.allclose(ab.alpha(x, y)[:, 0], x**2 - y**2)
    assert np.allclose(ab.beta(x, y)[:, 0], 2 * x * y)
    c = [1, 2, 3, 4]
    ab = alpha_beta_of(ss(c))
    assert np.allclose(ab.alpha(x, y), c) and np.allclose(ab.beta(x, y), 0)
    ab = alpha_beta_of(ss(Z, [0, 0, 1, 0]))
    assert np.allclose(ab.alpha(x, y), x[:, None] * E2.to_array())
    assert np.allclose(ab.beta(x, y), y[:, None] * E2.to_array())
    q = np.array([[0.1, 0.2, 0.3, -0.1]])
    assert np.allclose(ab.compose(q), qmul(q, E2.to_array()))


@given(slice_series(8), st.floats(-0.6, 0.6), st.floats(-0.6, 0.6))
def test_alpha_beta_parity_and_reality(F, x, y):
    ab = alpha_beta_of(F)
    assert np.allclose(ab.alpha(x, -y), ab.alpha(x, y), atol=1e-13)
    assert np.allclose(ab.beta(x, -y), -ab.beta(x, y), atol=1e-13)
    assert np.allclose(ab.beta(x, 0.0), 0.0)
    if is_intrinsic(F) is IntrinsicClass.INTRINSIC:
        assert np.abs(ab.alpha(x, y)[1:]).max() <= 1e-13
        assert np.abs(ab.beta(x, y)[1:]).max() <= 1e-13


@given(slice_series(8), ball_points())
def test_alpha_beta_rebuilds_function(F, q):
    ab = alpha_beta_of(F)
    assert np.allclose(ab.compose(q), F.eval_array(q), atol=1e-12)


def test_cr_examples():
    r1, r2 = cr_residual(alpha_beta_of(ss(Z, Z, R1)), 0.1, 0.4)
    assert r1.norm() < 1e-8 and r2.norm() < 1e-8
    r1, r2 = cr_residual(alpha_beta_of(ss(Z, Z, Z, R1)), 0.2, 0.3)
    assert r1.norm() < 1e-7 and r2.norm() < 1e-7


def test_cr_negative_control():
    ab = alpha_beta_of(ss(Z, Z, R1))
    bad = AlphaBeta(ab.alpha, lambda x, y: -ab.beta(x, y))
    r1, _ = cr_residual(bad, 0.2, 0.3)
    assert abs(r1.real - 2 * 2 * 0.2) < 1e-7


@given(slice_series(8), st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
def test_cr_residual_vanishes(F, x, y):
    r1, r2 = cr_residual(alpha_beta_of(F), x, y)
    assert r1.norm() < 1e-7 and r2.norm() < 1e-7


def test_cr_stencil_outside():
    with pytest.raises(OutOfDomain):
        cr_residual(alpha_beta_of(ss(R1)), 0.99999, 0.0, 1e-3)


def test_slice_series_eval_matches_powers():
    F = ss([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1])
    q = np.array([0.2, 0.1, -0.3, 0.25])
    want = np.array([1.0, 0, 0, 0]) + qmul(q, [0, 1, 0, 0]) + qmul(qmul(q, q), [0, 0, 0, 1])
    assert np.allclose(F.eval_array(q), want)
    assert np.allclose(qconj(F.eval_array(q)), qconj(want))
    assert E3 == Quaternion(0, 0, 0, 1) and ONE.real == 1
