"""Arithmetic in the first Heisenberg group.

Points are arrays with last axis (x, y, t); every function broadcasts over
leading axes.  The left-invariant frame is X = dx + y dt, Y = dy - x dt, T = dt.
"""
from typing import NamedTuple

import numpy as np

from .errors import DomainError

HORIZONTAL_TOL = 1e-9


class HeisPoint(NamedTuple):
    x: float
    y: float
    t: float


class FrameVector(NamedTuple):
    a: float
    b: float
    c: float

    def is_horizontal(self, tol=HORIZONTAL_TOL):
        return abs(self.c) <= tol * (1.0 + abs(self.a) + abs(self.b))


def _pts(p):
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 3:
        raise DomainError(f"expected last axis of length 3, got shape {p.shape}")
    return p


def group_mul(p, q):
    """Product p*q = (x+x', y+y', t+t'+(x'y - xy'))."""
    p, q = _pts(p), _pts(q)
    x, y, t = p[..., 0], p[..., 1], p[..., 2]
    xq, yq, tq = q[..., 0], q[..., 1], q[..., 2]
    return np.stack([x + xq, y + yq, t + tq + (xq * y - x * yq)], axis=-1)


def inverse(p):
    return -_pts(p)


def left_translate(p0, p):
    """l_{p0}(p) = p0 * p."""
    return group_mul(p0, p)


def to_frame(p, coord_velocity):
    """Coordinate velocity (xd, yd, td) at p -> coefficients (a, b, c) in {X, Y, T}."""
    p, v = _pts(p), _pts(coord_velocity)
    c = v[..., 2] - v[..., 0] * p[..., 1] + v[..., 1] * p[..., 0]
    return np.stack([v[..., 0], v[..., 1], c], axis=-1)


def from_frame(p, frame):
    """Inverse of to_frame."""
    p, f = _pts(p), _pts(frame)
    td = f[..., 2] + f[..., 0] * p[..., 1] - f[..., 1] * p[..., 0]
    return np.stack([f[..., 0], f[..., 1], td], axis=-1)


def is_horizontal(frame, tol=HORIZONTAL_TOL):
    f = _pts(frame)
    return np.abs(f[..., 2]) <= tol * (1.0 + np.abs(f[..., 0]) + np.abs(f[..., 1]))


def j_rotate(v):
    """J(a, b) = (-b, a)."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def cross2(a, b):
    """Planar cross product a1 b2 - a2 b1."""
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def dilate(lam, p):
    """Non-homogeneous dilation (lam x, lam y, lam^2 t)."""
    if not np.all(np.asarray(lam) > 0):
        raise DomainError("dilation factor must be positive")
    p = _pts(p)
    return p * np.array([lam, lam, lam * lam])
