"""Horizontal curves of constant mean curvature H for a convex norm.

For a unit-speed planar curve x(s) with J x' = (-x2', x1'), the curvature
equation is the 2x2 system

    [[n + g x2', h x2'], [-g x1', n - h x1']] x'' = H (x2', -x1')

with n = h_K(J x'), g = pi1 + x1' d2 pi1 + x2' d2 pi2,
h = pi2 - x1' d1 pi1 - x2' d1 pi2, pi and its partials taken at J x'.
Its solutions are horizontal lines (H = 0) or lifts of dilated translates of
the boundary of K by 1/H.
"""
from dataclasses import dataclass

import numpy as np

from .bodies import ConvexBody
from .errors import DomainError, SingularSystemError
from .lifting import LiftedCurve

DET_TOL = 1e-12


@dataclass(frozen=True)
class CMCProblem:
    body: ConvexBody
    H: float
    position: tuple = (0.0, 0.0)
    velocity: tuple = (1.0, 0.0)
    t0: float = 0.0

    def __post_init__(self):
        if self.H < 0:
            raise DomainError("H must be non-negative")
        v = np.asarray(self.velocity, float)
        if abs(np.hypot(*v) - 1.0) > 1e-9:
            raise DomainError("initial velocity must be a unit vector")

    @property
    def period(self):
        """Length of one closed solution (the boundary length over H)."""
        L = self.body.chart("arclength").period
        return L / self.H if self.H > 0 else L


def _accel(body, H, vel):
    vel = vel / np.linalg.norm(vel, axis=-1, keepdims=True)
    d1, d2 = vel[..., 0], vel[..., 1]
    H = np.broadcast_to(np.asarray(H, float), d1.shape)
    jv = np.stack([-d2, d1], -1)
    n = body.support(jv)
    pi = body.pi_map(jv)
    dpi = body.pi_jacobian(jv)  # dpi[i, j] = d pi_i / d x_j
    g = pi[..., 0] + d1 * dpi[..., 0, 1] + d2 * dpi[..., 1, 1]
    h = pi[..., 1] - d1 * dpi[..., 0, 0] - d2 * dpi[..., 1, 0]
    m11, m12 = n + g * d2, h * d2
    m21, m22 = -g * d1, n - h * d1
    det = m11 * m22 - m12 * m21
    if np.any(~(det > DET_TOL)):
        raise SingularSystemError("curvature system is singular (body not strictly convex here)")
    b1, b2 = H * d2, -H * d1
    acc = np.stack([(b1 * m22 - m12 * b2) / det, (m11 * b2 - m21 * b1) / det], -1)
    return np.where((H == 0)[..., None], 0.0, acc)


def ode_accel(P: CMCProblem, pos, vel):
    """Acceleration x'' from the curvature system (vectorized over leading axes)."""
    vel = np.asarray(vel, float)
    if P.H == 0:
        return np.zeros_like(vel)
    return _accel(P.body, P.H, vel)


def _rhs(body, H, y):
    x, v = y[:, 0:2], y[:, 2:4]
    a = _accel(body, H, v)
    td = v[:, 0] * x[:, 1] - v[:, 1] * x[:, 0]
    return np.column_stack([v, a, td])


def integrate_many(problems, n_steps=10_000, periods=1.0):
    """RK4 for several problems sharing one body, each with step
    periods * P.period / n_steps.  Returns one LiftedCurve per problem."""
    body = problems[0].body
    if any(p.body is not body for p in problems):
        raise DomainError("batched problems must share the body")
    H = np.array([p.H for p in problems])
    steps = np.array([periods * p.period / n_steps for p in problems])
    return _rk4(body, H, problems, steps, n_steps)


def _rk4(body, H, problems, steps, n_steps):
    y = np.array([[*p.position, *p.velocity, p.t0] for p in problems], dtype=float)
    out = np.empty((n_steps + 1,) + y.shape)
    out[0] = y
    dt = steps[:, None]
    for k in range(n_steps):
        k1 = _rhs(body, H, y)
        k2 = _rhs(body, H, y + 0.5 * dt * k1)
        k3 = _rhs(body, H, y + 0.5 * dt * k2)
        k4 = _rhs(body, H, y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        y[:, 2:4] /= np.hypot(y[:, 2], y[:, 3])[:, None]
        out[k + 1] = y
    curves = []
    for i, p in enumerate(problems):
        o = out[:, i]
        s = steps[i] * np.arange(n_steps + 1)
        td = o[:, 2] * o[:, 1] - o[:, 3] * o[:, 0]
        vel = np.column_stack([o[:, 2], o[:, 3], td])
        curves.append(LiftedCurve.from_samples(s, o[:, [0, 1, 4]], vel, p.period))
    return curves


def integrate(P: CMCProblem, step=None, n_steps=None):
    """Classical RK4 with fixed step on (x1, x2, x1', x2', t); the velocity is
    renormalized after each step.  Defaults cover one period in 10^4 steps."""
    if step is None:
        step = P.period / 10_000
    if not step > 0:
        raise DomainError("step must be positive")
    if n_steps is None:
        n_steps = int(round(P.period / step))
    return _rk4(P.body, np.array([P.H]), [P], np.array([float(step)]), n_steps)[0]


class ClosedFormCurve:
    """Evaluator s -> (point, coordinate velocity) of the classified solution."""

    def __init__(self, P: CMCProblem):
        self.problem = P
        self.pos = np.asarray(P.position, float)
        self.vel = np.asarray(P.velocity, float)
        if P.H > 0:
            K = P.body
            self.chart = K.chart("arclength")
            jv = np.array([-self.vel[1], self.vel[0]])
            self.center = self.pos - K.pi_map(jv) / P.H
            self.sigma0 = float(self.chart.param_of_normal(jv))
            self.g0 = self.chart(self.sigma0)[0]
            self.T0 = float(self.chart.lift(self.sigma0))

    def __call__(self, s):
        s = np.asarray(s, float)
        P = self.problem
        if P.H == 0:
            x = self.pos + s[..., None] * self.vel
            t = P.t0 + s * (self.vel[0] * self.pos[1] - self.vel[1] * self.pos[0])
            return np.concatenate([x, t[..., None]], -1), np.broadcast_to(self.vel, x.shape)
        H, c = P.H, self.center
        sig = self.sigma0 + H * s
        g, dg, _ = self.chart(sig)
        x = c + g / H
        dgam = g - self.g0
        # <c, J dgam> = c2 dgam1 - c1 dgam2
        t = (P.t0 + (c[1] * dgam[..., 0] - c[0] * dgam[..., 1]) / H
             + (self.chart.lift(sig) - self.T0) / H**2)
        return np.concatenate([x, t[..., None]], -1), dg

    def curve(self, s):
        pts, vel = self(s)
        td = vel[..., 0] * pts[..., 1] - vel[..., 1] * pts[..., 0]
        return LiftedCurve.from_samples(s, pts, np.column_stack([vel, td]), self.problem.period)


def closed_form_cmc(P: CMCProblem) -> ClosedFormCurve:
    return ClosedFormCurve(P)


def compare(curve_a: LiftedCurve, curve_b: LiftedCurve) -> float:
    """Sup of the Euclidean distance in (x, y, t) on a common grid."""
    if curve_a.s.shape != curve_b.s.shape or not np.allclose(curve_a.s, curve_b.s, rtol=0, atol=1e-12):
        raise DomainError("curves must share the parameter grid")
    return float(np.max(np.linalg.norm(curve_a.points - curve_b.points, axis=-1)))


def mean_curvature_along(P: CMCProblem, curve: LiftedCurve):
    """<d/ds pi(J x'), x'> along an integrated curve, using x'' from the ODE."""
    vel = curve.velocity[:, :2]
    acc = ode_accel(P, curve.points[:, :2], vel)
    jv = np.stack([-vel[:, 1], vel[:, 0]], -1)
    ja = np.stack([-acc[:, 1], acc[:, 0]], -1)
    dpi = P.body.pi_jacobian(jv)
    return np.einsum("ni,nij,nj->n", vel, dpi, ja)
