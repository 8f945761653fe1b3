"""Quaternion arithmetic, imaginary units, frames and slice coordinates.

Scalars are represented by the immutable :class:`Quaternion`; bulk work
uses plain ``(..., 4)`` float arrays in the order ``[w, x, y, z]`` together
with the vectorized helpers :func:`qmul` and :func:`qconj`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RealInput

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite quaternion component {name}={v}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, a) -> Quaternion:
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(*a.tolist())

    @classmethod
    def coerce(cls, v) -> Quaternion:
        """Accept a Quaternion, an ImaginaryUnit, a real, a complex (x+iy -> x+y e1) or a 4-sequence."""
        if isinstance(v, Quaternion):
            return v
        if isinstance(v, ImaginaryUnit):
            return v.value
        if isinstance(v, (int, float, np.floating, np.integer)):
            return cls(float(v))
        if isinstance(v, (complex, np.complexfloating)):
            return cls(v.real, v.imag)
        return cls.from_array(v)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def tolist(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    @property
    def real(self) -> float:
        return self.w

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def __abs__(self) -> float:
        return self.norm()

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return quat_mul(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return quat_mul(o, self)

    def __truediv__(self, s):
        if not isinstance(s, (int, float, np.floating, np.integer)):
            return NotImplemented
        return self * (1.0 / float(s))

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return float(np.max(np.abs(self.to_array() - Quaternion.coerce(other).to_array()))) <= tol

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce_or_none(v):
    try:
        return Quaternion.coerce(v)
    except (TypeError, ValueError):
        return None


ONE = Quaternion(1.0)
E1 = Quaternion(0.0, 1.0, 0.0, 0.0)
E2 = Quaternion(0.0, 0.0, 1.0, 0.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a b``."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def quat_conj(q: Quaternion) -> Quaternion:
    return q.conj()


def qmul(a, b) -> np.ndarray:
    """Broadcasting Hamilton product of ``(..., 4)`` arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a[..., 1:] *= -1.0
    return a


def qpowers(q, n: int) -> np.ndarray:
    """Stack ``[q^0, ..., q^n]`` along a new axis -2: shape ``(..., n+1, 4)``."""
    q = np.asarray(q, dtype=float)
    out = np.empty(q.shape[:-1] + (n + 1, 4))
    cur = np.zeros_like(q)
    cur[..., 0] = 1.0
    out[..., 0, :] = cur
    for k in range(1, n + 1):
        cur = qmul(cur, q)
        out[..., k, :] = cur
    return out


@dataclass(frozen=True)
class ImaginaryUnit:
    """An element of the sphere S^2 of purely imaginary unit quaternions."""

    value: Quaternion

    def __post_init__(self):
        v = Quaternion.coerce(self.value)
        object.__setattr__(self, "value", v)
        if abs(v.w) > _UNIT_TOL or abs(v.norm() - 1.0) > 1e-10:
            raise ValueError(f"not an imaginary unit: {v!r}")

    @classmethod
    def from_vector(cls, v) -> ImaginaryUnit:
        v = np.asarray(v, dtype=float).reshape(3)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise RealInput("zero vector has no direction")
        return cls(Quaternion(0.0, *(v / n).tolist()))

    @property
    def vector(self) -> np.ndarray:
        return self.value.vector

    def to_array(self) -> np.ndarray:
        return self.value.to_array()

    def __neg__(self) -> ImaginaryUnit:
        return ImaginaryUnit(-self.value)


@dataclass(frozen=True)
class Frame:
    """Orthonormal basis ``{1, i, j, k = ij}`` of the quaternions."""

    i: ImaginaryUnit
    j: ImaginaryUnit
    k: ImaginaryUnit

    def __post_init__(self):
        iv, jv, kv = self.i.value, self.j.value, self.k.value
        if not quat_mul(iv, jv).isclose(kv, 1e-10):
            raise ValueError("frame requires k = i j")
        if abs(float(np.dot(self.i.vector, self.j.vector))) > 1e-10:
            raise ValueError("frame units i, j are not orthogonal")

    @classmethod
    def standard(cls) -> Frame:
        return cls(ImaginaryUnit(E1), ImaginaryUnit(E2), ImaginaryUnit(E3))

    @property
    def basis(self) -> np.ndarray:
        """Rows ``1, i, j, k`` as a ``(4, 4)`` array."""
        return np.stack([ONE.to_array(), self.i.to_array(), self.j.to_array(), self.k.to_array()])

    def coords(self, q) -> np.ndarray:
        """Real coordinates of ``q`` (``(..., 4)``) in the basis ``{1, i, j, k}``."""
        return np.asarray(q, dtype=float) @ self.basis.T

    def compose(self, c) -> np.ndarray:
        """Inverse of :meth:`coords`."""
        return np.asarray(c, dtype=float) @ self.basis

    def embed(self, z) -> np.ndarray:
        """Map complex numbers ``a + b i`` onto the plane C(i) as ``(..., 4)`` arrays."""
        z = np.asarray(z, dtype=complex)
        return z.real[..., None] * ONE.to_array() + z.imag[..., None] * self.i.to_array()

    def to_complex(self, q, tol: float | None = None) -> np.ndarray:
        """Project ``q`` onto C(i); with ``tol``, refuse points off the plane."""
        c = self.coords(q)
        if tol is not None:
            off = np.abs(c[..., 2:]).max(initial=0.0)
            if off > tol:
                raise ValueError(f"point is off the slice plane by {off:.3g}")
        return c[..., 0] + 1j * c[..., 1]

    def tolist(self) -> list[list[float]]:
        return [self.i.value.tolist(), self.j.value.tolist(), self.k.value.tolist()]


@dataclass(frozen=True)
class SlicePoint:
    """``q = x + I y`` with ``y >= 0``."""

    x: float
    y: float
    I: ImaginaryUnit

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.x) + self.I.value * self.y


def imaginary_unit_of(q) -> ImaginaryUnit:
    q = Quaternion.coerce(q)
    v = q.vector
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise RealInput(f"{q!r} is real; it lies on every slice")
    return ImaginaryUnit(Quaternion(0.0, *(v / n).tolist()))


def complete_frame(i) -> Frame:
    """Deterministic orthonormal completion of ``i`` to a frame.

    ``j`` is ``e1`` orthogonalized against ``i``; when ``i`` is within 1e-6 of
    ``±e1`` the vector ``e2`` is orthogonalized instead.
    """
    if not isinstance(i, ImaginaryUnit):
        i = ImaginaryUnit(Quaternion.coerce(i))
    iv = i.vector
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    d = float(np.dot(iv, e1))
    seed = e1 if abs(d) <= 1.0 - 1e-6 else e2
    jv = seed - iv * float(np.dot(iv, seed))
    jv = jv / np.linalg.norm(jv)
    j = ImaginaryUnit(Quaternion(0.0, *jv.tolist()))
    k = quat_mul(i.value, j.value)
    return Frame(i, j, ImaginaryUnit(Quaternion(0.0, k.x, k.y, k.z)))


def slice_coords(q) -> SlicePoint:
    q = Quaternion.coerce(q)
    I = imaginary_unit_of(q)
    return SlicePoint(q.w, float(np.linalg.norm(q.vector)), I)


def slice_coords_array(q) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized slice coordinates ``(x, y, I)``; real points get ``I = e1``."""
    q = np.asarray(q, dtype=float)
    x = q[..., 0]
    y = np.linalg.norm(q[..., 1:], axis=-1)
    I = np.zeros_like(q)
    real = y == 0.0
    safe = np.where(real, 1.0, y)
    I[..., 1:] = q[..., 1:] / safe[..., None]
    I[..., 1] = np.where(real, 1.0, I[..., 1])
    return x, y, I
