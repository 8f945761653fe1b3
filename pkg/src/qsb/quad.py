"""Deterministic quadrature on slice disks, slice rectangles and the unit 4-ball.

All rules are closed under conjugation with equal weights, so integrals of
functions with the C-property come out real up to rounding of the
reduction, not up to quadrature error.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .errors import BadOrder
from .qalg import Frame, Quaternion, qconj, qmul
from .sums import pairwise_sum


def _frozen(a) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PlanarRule:
    """Nodes on C(frame.i), stored as complex numbers ``x + y i``."""

    frame: Frame
    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int
    domain: str = "disk"
    extent: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(np.asarray(self.nodes, dtype=complex)))
        object.__setattr__(self, "weights", _frozen(np.asarray(self.weights, dtype=float)))

    @property
    def quaternion_nodes(self) -> np.ndarray:
        return self.frame.embed(self.nodes)

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def to_csv(self, path) -> None:
        i = self.frame.i.vector
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y", "I1", "I2", "I3", "weight"])
            for z, wt in zip(self.nodes, self.weights):
                w.writerow([repr(float(z.real)), repr(float(z.imag)), *map(repr, i.tolist()), repr(float(wt))])


@dataclass(frozen=True, eq=False)
class BallRule:
    """Nodes in the open unit ball of the quaternions as ``(M, 4)`` arrays.

    ``exact_degree`` counts total degree for integrands built from slice
    structured factors (products ``conj(r)^a r^b`` and polynomials in
    ``x, y`` times at most quadratic expressions in the unit ``I``).
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(np.asarray(self.nodes, dtype=float)))
        object.__setattr__(self, "weights", _frozen(np.asarray(self.weights, dtype=float)))

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def to_csv(self, path) -> None:
        x = self.nodes[:, 0]
        y = np.linalg.norm(self.nodes[:, 1:], axis=1)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y", "I1", "I2", "I3", "weight"])
            for xk, yk, q, wt in zip(x, y, self.nodes, self.weights):
                I = q[1:] / yk
                w.writerow([repr(float(xk)), repr(float(yk)), *map(repr, I.tolist()), repr(float(wt))])


def _gauss01(n: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = roots_legendre(n)
    return 0.5 * (t + 1.0), 0.5 * w


def _angles(n: int) -> np.ndarray:
    # offset by half a step: no node on the real axis, closed under theta -> -theta
    return 2.0 * np.pi * (np.arange(n) + 0.5) / n


def build_disk_rule(n_radial: int, n_angular: int, frame: Frame | None = None) -> PlanarRule:
    """Gauss-Legendre in ``r^2`` on [0, 1] times the trapezoid rule in angle.

    ``conj(z)^a z^b`` is integrated exactly when ``a + b <= exact_degree``.
    """
    if n_radial < 1:
        raise BadOrder("n_radial must be >= 1")
    if n_angular < 2 or n_angular % 2:
        raise BadOrder("n_angular must be even and >= 2")
    frame = frame or Frame.standard()
    s, ws = _gauss01(n_radial)
    theta = _angles(n_angular)
    r = np.sqrt(s)
    nodes = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
    weights = (0.5 * ws[:, None] * np.full(n_angular, 2.0 * np.pi / n_angular)[None, :]).ravel()
    exact = min(4 * n_radial - 2, n_angular - 1)
    return PlanarRule(frame, nodes, weights, exact, "disk", (1.0, 1.0))


def build_rectangle_rule(
    nx: int, ny: int, half_width: float = 1.0, half_height: float = 0.5, frame: Frame | None = None
) -> PlanarRule:
    """Tensor Gauss-Legendre rule on ``[-a, a] x [-b, b]`` inside C(i)."""
    if nx < 1 or ny < 1:
        raise BadOrder("orders must be >= 1")
    frame = frame or Frame.standard()
    tx, wx = roots_legendre(nx)
    ty, wy = roots_legendre(ny)
    x = half_width * tx
    y = half_height * ty
    nodes = (x[:, None] + 1j * y[None, :]).ravel()
    weights = (half_width * wx[:, None] * half_height * wy[None, :]).ravel()
    exact = min(2 * nx - 1, 2 * ny - 1)
    return PlanarRule(frame, nodes, weights, exact, "rectangle", (half_width, half_height))


def sphere_grid(n_sphere: int) -> tuple[np.ndarray, np.ndarray]:
    """Product grid on S^2: Gauss in ``cos`` of the polar angle, trapezoid in azimuth.

    Uses ``n_sphere`` polar and ``2 n_sphere`` azimuthal nodes; closed under
    ``I -> -I``.  Weights sum to ``4 pi``.
    """
    u, wu = roots_legendre(n_sphere)
    phi = _angles(2 * n_sphere)
    s = np.sqrt(1.0 - u * u)
    pts = np.stack(
        [
            (s[:, None] * np.cos(phi)[None, :]).ravel(),
            (s[:, None] * np.sin(phi)[None, :]).ravel(),
            np.repeat(u, phi.size),
        ],
        axis=1,
    )
    w = (wu[:, None] * np.full(phi.size, np.pi / n_sphere)[None, :]).ravel()
    return pts, w


def build_ball_rule(n_radial: int, n_angular: int, n_sphere: int = 6) -> BallRule:
    """Product rule for the unit ball with ``dmu = y^2 dS(I) dx dy``.

    The ``(x, y)`` factor covers the whole unit disk (every point is then
    counted twice, via ``(x, y, I)`` and ``(x, -y, -I)``) and carries a
    factor 1/2; this keeps the angular rule a plain trapezoid, exact for
    trigonometric polynomials.
    """
    if n_radial < 1:
        raise BadOrder("n_radial must be >= 1")
    if n_angular < 2 or n_angular % 2:
        raise BadOrder("n_angular must be even and >= 2")
    if n_sphere < 6:
        raise BadOrder("n_sphere must be >= 6")
    rho, wr = _gauss01(n_radial)
    theta = _angles(n_angular)
    I, wI = sphere_grid(n_sphere)
    x = (rho[:, None] * np.cos(theta)[None, :]).ravel()
    y = (rho[:, None] * np.sin(theta)[None, :]).ravel()
    wxy = (0.5 * (wr * rho)[:, None] * np.full(n_angular, 2.0 * np.pi / n_angular)[None, :]).ravel() * y * y
    nodes = np.zeros((x.size, I.shape[0], 4))
    nodes[..., 0] = x[:, None]
    nodes[..., 1:] = y[:, None, None] * I[None, :, :]
    weights = wxy[:, None] * wI[None, :]
    exact = min(2 * n_radial - 4, n_angular - 3)
    return BallRule(nodes.reshape(-1, 4), weights.ravel(), exact)


def integrate_values(values, weights) -> np.ndarray:
    """``sum_k w_k v_k`` with fixed pairwise reduction; ``values`` is ``(M, ...)``."""
    v = np.asarray(values)
    w = np.asarray(weights)
    return pairwise_sum(w.reshape((-1,) + (1,) * (v.ndim - 1)) * v)


def _to_quaternion_values(vals, frame: Frame | None) -> np.ndarray:
    vals = np.asarray(vals)
    if vals.ndim >= 1 and vals.shape[-1] == 4 and not np.iscomplexobj(vals):
        return vals.astype(float)
    vals = vals.astype(complex)
    if frame is None:
        out = np.zeros(vals.shape + (4,))
        out[..., 0] = vals.real
        out[..., 1] = vals.imag
        return out
    return frame.embed(vals)


def integrate_slice(f, rule: PlanarRule) -> Quaternion:
    """``sum w_k f(z_k)``; ``f`` receives the complex node array.

    ``f`` may return ``(M, 4)`` quaternion arrays or real/complex ``(M,)``
    arrays (complex values are read in C(frame.i)).
    """
    vals = _to_quaternion_values(f(rule.nodes), rule.frame)
    return Quaternion.from_array(integrate_values(vals, rule.weights))


def integrate_ball(f, rule: BallRule) -> Quaternion:
    """``sum w_k f(q_k)``; ``f`` receives the ``(M, 4)`` node array."""
    vals = _to_quaternion_values(f(rule.nodes), None)
    return Quaternion.from_array(integrate_values(vals, rule.weights))


def slice_inner(f_vals, g_vals, weights) -> np.ndarray:
    """``sum w conj(f) g`` for quaternion ``(M, 4)`` arrays."""
    return integrate_values(qmul(qconj(f_vals), g_vals), weights)
