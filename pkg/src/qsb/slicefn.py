"""Slice regular functions on the unit ball as power series ``sum q^n a_n``.

Includes the slice extension/restriction pair, the splitting lemmas, the
four-fold intrinsic decomposition and the ``alpha + I beta`` form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import OutOfDomain
from .holo import CLASSIFY_TOL, HoloSeries, c_anti_decompose
from .qalg import E1, Frame, Quaternion, qconj, qmul, slice_coords_array
from .sums import combine


class IntrinsicClass(str, Enum):
    INTRINSIC = "intrinsic"
    ANTI_INTRINSIC = "anti-intrinsic"
    NEITHER = "neither"


@dataclass(frozen=True, eq=False)
class SliceSeries:
    coeffs: np.ndarray
    radius: float = 1.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float, copy=True)
        if c.ndim != 2 or c.shape[1] != 4 or c.shape[0] == 0:
            raise ValueError("coeffs must have shape (N+1, 4)")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficient")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def from_real(cls, coeffs, radius: float = 1.0) -> SliceSeries:
        c = np.zeros((len(coeffs), 4))
        c[:, 0] = np.asarray(coeffs, dtype=float)
        return cls(c, radius)

    @classmethod
    def monomial(cls, n: int, a=1.0, radius: float = 1.0) -> SliceSeries:
        c = np.zeros((n + 1, 4))
        c[n] = Quaternion.coerce(a).to_array()
        return cls(c, radius)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def padded(self, n: int) -> np.ndarray:
        """Coefficients zero-padded to length ``n + 1``."""
        if n < self.degree:
            raise ValueError("cannot pad below current degree")
        out = np.zeros((n + 1, 4))
        out[: self.degree + 1] = self.coeffs
        return out

    def _pair(self, other: SliceSeries):
        n = max(self.degree, other.degree)
        return self.padded(n), other.padded(n)

    def __add__(self, other: SliceSeries) -> SliceSeries:
        a, b = self._pair(other)
        return SliceSeries(a + b, self.radius)

    def __sub__(self, other: SliceSeries) -> SliceSeries:
        a, b = self._pair(other)
        return SliceSeries(a - b, self.radius)

    def right_mul(self, q) -> SliceSeries:
        return SliceSeries(qmul(self.coeffs, Quaternion.coerce(q).to_array()), self.radius)

    def scale(self, s: float) -> SliceSeries:
        return SliceSeries(self.coeffs * float(s), self.radius)

    def allclose(self, other: SliceSeries, tol: float = 1e-13) -> bool:
        a, b = self._pair(other)
        return float(np.abs(a - b).max(initial=0.0)) <= tol

    def __call__(self, q):
        if isinstance(q, np.ndarray) and q.ndim >= 1 and q.shape[-1] == 4:
            return self.eval_array(q)
        return Quaternion.from_array(self.eval_array(Quaternion.coerce(q).to_array()))

    def eval_array(self, q) -> np.ndarray:
        """Evaluate at ``(..., 4)`` quaternion points.

        With ``q = x + I y`` every power is ``q^n = A_n + I B_n`` where
        ``(x + iy)^n = A_n + i B_n``, so ``F(q) = alpha + I beta``.
        """
        q = np.asarray(q, dtype=float)
        if np.any(np.linalg.norm(q, axis=-1) >= self.radius):
            raise OutOfDomain(f"|q| must be < {self.radius}")
        x, y, I = slice_coords_array(q)
        z = x + 1j * y
        powers = z[..., None] ** np.arange(self.degree + 1)
        alpha = combine(powers.real, self.coeffs)
        beta = combine(powers.imag, self.coeffs)
        return alpha + qmul(I, beta)


def restrict_Q(F: SliceSeries, frame: Frame) -> HoloSeries:
    """Restriction to the plane C(frame.i); coefficient-exact."""
    return HoloSeries(frame, F.coeffs, F.radius)


def extend_series(f: HoloSeries) -> SliceSeries:
    """Slice regular extension of ``f`` as a series (coefficient-exact)."""
    return SliceSeries(f.coeffs, f.radius)


def extend_P_array(f: HoloSeries, q) -> np.ndarray:
    """Representation formula at ``(..., 4)`` points.

    ``P[f](x + I y) = ((1 + I i) f(x - y i) + (1 - I i) f(x + y i)) / 2``;
    real points return ``f(x)``.
    """
    q = np.asarray(q, dtype=float)
    if np.any(np.linalg.norm(q, axis=-1) >= f.radius):
        raise OutOfDomain(f"|q| must be < {f.radius}")
    x, y, I = slice_coords_array(q)
    i = f.frame.i.to_array()
    Ii = qmul(I, i)
    one = np.zeros_like(Ii)
    one[..., 0] = 1.0
    fm = f.eval_array(x - 1j * y)
    fp = f.eval_array(x + 1j * y)
    out = 0.5 * (qmul(one + Ii, fm) + qmul(one - Ii, fp))
    real = y == 0.0
    if np.any(real):
        out = np.where(real[..., None], fp, out)
    return out


def extend_P(f: HoloSeries, at) -> Quaternion:
    return Quaternion.from_array(extend_P_array(f, Quaternion.coerce(at).to_array()))


def split_basis(F: SliceSeries, frame: Frame) -> tuple[HoloSeries, HoloSeries]:
    """Splitting lemma: ``Q_i[F] = f1 + f2 j`` with ``f1, f2`` slice-valued."""
    f1, f2 = restrict_Q(F, frame).split_j()
    return (
        HoloSeries.from_complex(f1, frame, F.radius),
        HoloSeries.from_complex(f2, frame, F.radius),
    )


def refined_split(F: SliceSeries, frame: Frame) -> tuple[HoloSeries, ...]:
    """``Q_i[F] = h0 + h1 i + h2 j + h3 ij`` with real-coefficient ``h_l``."""
    c = frame.coords(F.coeffs)
    out = []
    for ell in range(4):
        h = np.zeros_like(c)
        h[:, 0] = c[:, ell]
        out.append(HoloSeries(frame, h, F.radius))
    return tuple(out)


def fourfold_decompose(F: SliceSeries, frame: Frame) -> tuple[SliceSeries, ...]:
    """``F = F0 + F1 i + F2 j + F3 ij`` with every ``F_l`` intrinsic."""
    return tuple(extend_series(h) for h in refined_split(F, frame))


def recompose(parts, frame: Frame) -> SliceSeries:
    """Inverse of :func:`fourfold_decompose`."""
    basis = frame.basis
    n = max(p.degree for p in parts)
    total = np.zeros((n + 1, 4))
    for p, e in zip(parts, basis):
        total += qmul(p.padded(n), e)
    return SliceSeries(total, parts[0].radius)


@dataclass(frozen=True)
class AlphaBeta:
    """Evaluators ``alpha(x, y)`` and ``beta(x, y)`` returning ``(..., 4)`` arrays."""

    alpha: Callable[..., np.ndarray]
    beta: Callable[..., np.ndarray]
    radius: float = 1.0

    def compose(self, q) -> np.ndarray:
        """``alpha(x, y) + I beta(x, y)`` at ``(..., 4)`` points."""
        x, y, I = slice_coords_array(np.asarray(q, dtype=float))
        return self.alpha(x, y) + qmul(I, self.beta(x, y))


def alpha_beta_of(F: SliceSeries) -> AlphaBeta:
    """``alpha = (F(x+iy) + F(x-iy))/2`` and ``beta = -(i/2)(F(x+iy) - F(x-iy))``, ``i = e1``."""
    e1 = E1.to_array()
    minus_half_i = -0.5 * e1

    def _points(x, y, sign):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        q = np.zeros(np.broadcast(x, y).shape + (4,))
        q[..., 0] = x
        q[..., 1] = sign * y
        return q

    def alpha(x, y):
        return 0.5 * (F.eval_array(_points(x, y, 1.0)) + F.eval_array(_points(x, y, -1.0)))

    def beta(x, y):
        d = F.eval_array(_points(x, y, 1.0)) - F.eval_array(_points(x, y, -1.0))
        return qmul(minus_half_i, d)

    return AlphaBeta(alpha, beta, F.radius)


def cr_residual(ab: AlphaBeta, x: float, y: float, h: float = 1e-5) -> tuple[Quaternion, Quaternion]:
    """Central differences of ``(d_x alpha - d_y beta, d_y alpha + d_x beta)``."""
    if h <= 0:
        raise ValueError("step must be positive")
    if np.hypot(abs(x) + h, abs(y) + h) >= ab.radius:
        raise OutOfDomain("stencil leaves the domain")
    dxa = (ab.alpha(x + h, y) - ab.alpha(x - h, y)) / (2 * h)
    dya = (ab.alpha(x, y + h) - ab.alpha(x, y - h)) / (2 * h)
    dxb = (ab.beta(x + h, y) - ab.beta(x - h, y)) / (2 * h)
    dyb = (ab.beta(x, y + h) - ab.beta(x, y - h)) / (2 * h)
    return Quaternion.from_array(dxa - dyb), Quaternion.from_array(dya + dxb)


def is_intrinsic(F: SliceSeries, tol: float = CLASSIFY_TOL) -> IntrinsicClass:
    c = F.coeffs
    scale = max(float(np.abs(c).max()), np.finfo(float).tiny)
    if np.abs(c[:, 1:]).max() <= tol * scale:
        return IntrinsicClass.INTRINSIC
    if np.abs(c[:, 0]).max() <= tol * scale:
        return IntrinsicClass.ANTI_INTRINSIC
    return IntrinsicClass.NEITHER


def conjugation_defect(F: SliceSeries, q) -> np.ndarray:
    """Pointwise ``F(conj q) - conj(F(q))``; zero exactly for intrinsic ``F``."""
    q = np.asarray(q, dtype=float)
    return F.eval_array(qconj(q)) - qconj(F.eval_array(q))


def c_part(f: HoloSeries) -> HoloSeries:
    """The C-property component of a slice-valued series."""
    return c_anti_decompose(f)[0]
