"""Holomorphic functions on a slice plane as truncated power series.

A :class:`HoloSeries` stores quaternion coefficients ``c_n`` and is read as
``f(z) = sum z^n c_n`` for ``z`` in the plane C(i) of its frame.  Powers sit
on the left, as left slice regularity requires; for slice-valued series the
order is immaterial.  Points of C(i) are passed as Python/NumPy complex
numbers ``a + b i`` (``1j`` standing for the frame unit ``i``) or as
quaternions lying on the plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NotSliceValued, OutOfDomain
from .qalg import Frame, Quaternion, qconj, qmul
from .sums import combine

CLASSIFY_TOL = 1e-12


class HoloClass(str, Enum):
    C = "C"
    ANTI_C = "AntiC"
    NEITHER = "Neither"


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HoloSeries:
    frame: Frame
    coeffs: np.ndarray
    radius: float = 1.0
    _scale: float = field(init=False, repr=False, default=0.0)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim == 1:
            c = c.reshape(-1, 4) if c.size % 4 == 0 and c.size else c
        if c.ndim != 2 or c.shape[1] != 4 or c.shape[0] == 0:
            raise ValueError("coeffs must have shape (N+1, 4)")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficient")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "coeffs", _freeze(c))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "_scale", float(np.abs(c).max()))

    # construction -------------------------------------------------------
    @classmethod
    def from_complex(cls, coeffs, frame: Frame | None = None, radius: float = 1.0) -> HoloSeries:
        """Slice-valued series from complex coefficients ``a + b i``."""
        frame = frame or Frame.standard()
        return cls(frame, frame.embed(np.atleast_1d(np.asarray(coeffs, dtype=complex))), radius)

    @classmethod
    def zero(cls, frame: Frame | None = None, degree: int = 0, radius: float = 1.0) -> HoloSeries:
        return cls(frame or Frame.standard(), np.zeros((degree + 1, 4)), radius)

    # views --------------------------------------------------------------
    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def frame_coords(self) -> np.ndarray:
        """Coefficients in the basis ``{1, i, j, k}``, shape ``(N+1, 4)``."""
        return self.frame.coords(self.coeffs)

    def is_slice_valued(self, tol: float = CLASSIFY_TOL) -> bool:
        off = np.abs(self.frame_coords()[:, 2:]).max(initial=0.0)
        return off <= tol * max(self._scale, 1.0)

    def complex_coeffs(self) -> np.ndarray:
        """Coefficients as complex numbers; only for slice-valued series."""
        if not self.is_slice_valued():
            raise NotSliceValued("series has components along j or ij")
        c = self.frame_coords()
        return c[:, 0] + 1j * c[:, 1]

    def split_j(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex coefficient arrays ``(f1, f2)`` with ``f = f1 + f2 j``."""
        c = self.frame_coords()
        return c[:, 0] + 1j * c[:, 1], c[:, 2] + 1j * c[:, 3]

    # algebra ------------------------------------------------------------
    def _like(self, coeffs) -> HoloSeries:
        return HoloSeries(self.frame, coeffs, self.radius)

    def _padded(self, other: HoloSeries) -> tuple[np.ndarray, np.ndarray]:
        n = max(self.degree, other.degree) + 1
        a = np.zeros((n, 4))
        b = np.zeros((n, 4))
        a[: self.degree + 1] = self.coeffs
        b[: other.degree + 1] = other.coeffs
        return a, b

    def __add__(self, other: HoloSeries) -> HoloSeries:
        a, b = self._padded(other)
        return self._like(a + b)

    def __sub__(self, other: HoloSeries) -> HoloSeries:
        a, b = self._padded(other)
        return self._like(a - b)

    def __neg__(self) -> HoloSeries:
        return self._like(-self.coeffs)

    def left_mul(self, q) -> HoloSeries:
        """``q f``."""
        return self._like(qmul(Quaternion.coerce(q).to_array(), self.coeffs))

    def right_mul(self, q) -> HoloSeries:
        """``f q``."""
        return self._like(qmul(self.coeffs, Quaternion.coerce(q).to_array()))

    def allclose(self, other: HoloSeries, tol: float = 1e-13) -> bool:
        a, b = self._padded(other)
        return float(np.abs(a - b).max(initial=0.0)) <= tol

    def __call__(self, z):
        return holo_eval(self, z)

    def eval_array(self, z) -> np.ndarray:
        """Evaluate at complex points ``z`` (any shape); returns ``(..., 4)``."""
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= self.radius):
            raise OutOfDomain(f"|z| must be < {self.radius}")
        powers = z[..., None] ** np.arange(self.degree + 1)
        ci = qmul(self.frame.i.to_array(), self.coeffs)
        return combine(powers.real, self.coeffs) + combine(powers.imag, ci)

    def eval_complex(self, z) -> np.ndarray:
        """Complex values of a slice-valued series at complex points."""
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= self.radius):
            raise OutOfDomain(f"|z| must be < {self.radius}")
        c = self.complex_coeffs()
        powers = z[..., None] ** np.arange(self.degree + 1)
        return combine(powers, c)


def _as_plane_point(f: HoloSeries, z) -> complex:
    if isinstance(z, (complex, float, int, np.number)):
        return complex(z)
    return complex(f.frame.to_complex(Quaternion.coerce(z).to_array(), tol=1e-12))


def holo_eval(f: HoloSeries, z) -> Quaternion:
    """``sum z^n c_n`` at one point of C(frame.i)."""
    zc = _as_plane_point(f, z)
    return Quaternion.from_array(f.eval_array(np.array([zc]))[0])


def conj_reflect(f: HoloSeries) -> HoloSeries:
    """``z -> conj(f(conj z))``, i.e. conjugation of every coefficient."""
    if not f.is_slice_valued():
        raise NotSliceValued("conj_reflect needs a slice-valued series")
    return f._like(qconj(f.coeffs))


def c_pair_decompose(f: HoloSeries) -> tuple[HoloSeries, HoloSeries]:
    """Unique ``f1, f2`` with real coefficients and ``f = f1 + i f2``.

    ``f1 = (f + ZfZ)/2`` and ``f2 = (i/2)(ZfZ - f)`` where ``ZfZ`` is
    :func:`conj_reflect`.
    """
    g = conj_reflect(f)
    i = f.frame.i.value
    f1 = f._like(0.5 * (f.coeffs + g.coeffs))
    f2 = f._like(qmul(i.to_array(), 0.5 * (g.coeffs - f.coeffs)))
    return _clean_real(f1), _clean_real(f2)


def c_anti_decompose(f: HoloSeries) -> tuple[HoloSeries, HoloSeries]:
    """Unique ``fc`` (C-property) and ``fa`` (anti-C-property) with ``f = fc + fa``."""
    g = conj_reflect(f)
    fc = f._like(0.5 * (f.coeffs + g.coeffs))
    fa = f._like(0.5 * (f.coeffs - g.coeffs))
    return _clean_real(fc), fa


def _clean_real(f: HoloSeries) -> HoloSeries:
    # (f + ZfZ)/2 has exactly zero vector parts in a frame-aligned basis; in
    # a rotated frame rounding leaves ~1e-17 that would spoil exact checks.
    c = np.array(f.coeffs)
    c[:, 1:] = 0.0
    return f._like(c)


def classify(f: HoloSeries, tol: float = CLASSIFY_TOL) -> HoloClass:
    if not f.is_slice_valued(tol):
        raise NotSliceValued("classify needs a slice-valued series")
    c = f.frame_coords()
    scale = max(f._scale, np.finfo(float).tiny)
    if np.abs(c[:, 1]).max() <= tol * scale:
        return HoloClass.C
    if np.abs(c[:, 0]).max() <= tol * scale:
        return HoloClass.ANTI_C
    return HoloClass.NEITHER
