"""Horizontal lifts of planar curves and of translated boundary loops."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .charts import Chart
from .errors import DataError
from .heis import dilate, to_frame
from .quadrature import DEFAULT_PANELS, nodes_on, panel_edges


@dataclass(frozen=True)
class LiftedCurve:
    """Samples (s, point, frame velocity) of a curve in H^1."""

    s: np.ndarray
    points: np.ndarray  # (n, 3)
    velocity: np.ndarray  # (n, 3) frame coefficients (a, b, c)
    period: Optional[float] = None

    @classmethod
    def from_samples(cls, s, points, coord_velocity, period=None):
        s = np.asarray(s, dtype=float)
        points = np.asarray(points, dtype=float)
        coord_velocity = np.asarray(coord_velocity, dtype=float)
        if not (np.all(np.isfinite(points)) and np.all(np.isfinite(coord_velocity))):
            raise DataError("non-finite curve samples")
        if np.any(np.diff(s) <= 0):
            raise DataError("curve parameters must be strictly increasing")
        return cls(s, points, to_frame(points, coord_velocity), period)

    @property
    def pointwise_residual(self):
        a, b, c = self.velocity[:, 0], self.velocity[:, 1], self.velocity[:, 2]
        return np.abs(c) / (1.0 + np.hypot(a, b))

    @property
    def horizontality_residual(self):
        return float(np.max(self.pointwise_residual))

    @property
    def end(self):
        return self.points[-1]

    def dilated(self, lam):
        vel = self.velocity * np.array([lam, lam, lam * lam])
        return LiftedCurve(self.s, dilate(lam, self.points), vel, self.period)

    def to_csv(self, path):
        rows = np.column_stack([self.s, self.points, self.pointwise_residual])
        lines = ["s,x,y,t,res"] + [",".join(f"{v:.17g}" for v in row) for row in rows]
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")


def horizontality_residual(curve: LiftedCurve) -> float:
    return curve.horizontality_residual


def _cumulative_lift(gamma, grid, breakpoints, n_panels):
    """t at each grid node: integral of <gamma, J gamma'> from grid[0]."""
    grid = np.asarray(grid, dtype=float)
    a, b = grid[0], grid[-1]
    extra = np.concatenate([grid[1:-1], np.asarray(breakpoints, dtype=float).ravel()])
    edges = panel_edges(a, b, n_panels, extra)
    s, w = nodes_on(edges)
    g, dg = gamma(s.ravel())[:2]
    dens = (g[:, 1] * dg[:, 0] - g[:, 0] * dg[:, 1]).reshape(s.shape)
    if not np.all(np.isfinite(dens)):
        raise DataError("non-finite curve evaluations during lifting")
    cum = np.concatenate([[0.0], np.cumsum(np.sum(dens * w, axis=1))])
    idx = np.clip(np.searchsorted(edges, grid), 0, len(edges) - 1)
    lower = np.clip(idx - 1, 0, None)
    nearest = np.where(np.abs(edges[lower] - grid) < np.abs(edges[idx] - grid), lower, idx)
    return cum[nearest]


def horizontal_lift(gamma, t0=0.0, grid=None, breakpoints=(), n_panels=DEFAULT_PANELS, period=None):
    """Lift s -> gamma(s) with t(s) = t0 + int <gamma, J gamma'>.

    `gamma` maps parameters to (position, velocity, ...) arrays; a Chart works.
    """
    if grid is None:
        if period is None:
            raise DataError("a grid or a period is required")
        grid = np.linspace(0.0, period, 1025)
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise DataError("grid must be strictly increasing")
    g, dg = gamma(grid)[:2]
    t = t0 + _cumulative_lift(gamma, grid, breakpoints, n_panels)
    td = g[:, 1] * dg[:, 0] - g[:, 0] * dg[:, 1]
    pts = np.column_stack([g, t])
    vel = np.column_stack([dg, td])
    return LiftedCurve.from_samples(grid, pts, vel, period)


def translated_loop(chart: Chart, v):
    """u -> (gamma(u+v) - gamma(v), gamma'(u+v), gamma''(u+v))."""
    g0 = chart(v)[0]

    def ev(u):
        g, dg, ddg = chart(np.asarray(u) + v)
        return g - g0, dg, ddg

    return ev


def lift_translated_loop(body, v, grid=None, chart="native", r=1.0, n_panels=DEFAULT_PANELS):
    """Lift of u -> gamma(u+v) - gamma(v) from the origin, dilated by r."""
    ch = body.chart(chart) if isinstance(chart, str) else chart
    if grid is None:
        grid = np.linspace(0.0, ch.period, 1025)
    bp = np.mod(ch.breakpoints - v, ch.period)
    curve = horizontal_lift(translated_loop(ch, v), 0.0, grid, breakpoints=bp,
                            n_panels=n_panels, period=ch.period)
    return curve if r == 1.0 else curve.dilated(r)


def lift_boundary(chart: Chart, grid=None):
    """Gamma(s) = (gamma(s), T(s)) with T(0) = 0."""
    if grid is None:
        grid = np.linspace(0.0, chart.period, 1025)
    return horizontal_lift(chart, 0.0, grid, breakpoints=chart.breakpoints, period=chart.period)
