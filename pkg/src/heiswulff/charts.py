"""Periodic clockwise parameterizations of planar closed convex curves."""
from functools import cached_property

import numpy as np

from .heis import cross2
from .quadrature import DEFAULT_PANELS, CumulativeIntegral, nodes_on, panel_edges

TABLE_SIZE = 4096


class Chart:
    """A P-periodic clockwise curve s -> (gamma, gamma', gamma'').

    `evaluate` maps an array of parameters of shape S to three arrays of
    shape S + (2,).  Breakpoints mark parameters where gamma'' may jump; they
    are aligned with quadrature panel edges.
    """

    def __init__(self, evaluate, period, breakpoints=(), name="chart"):
        self._evaluate = evaluate
        self.period = float(period)
        bp = np.mod(np.asarray(breakpoints, dtype=float).ravel(), self.period)
        self.breakpoints = np.unique(bp)
        self.name = name

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return self._evaluate(s)

    def point(self, s):
        return self(s)[0]

    def lift_density(self, s):
        """<gamma, J gamma'> = y x' - x y'."""
        g, dg, _ = self(s)
        return g[..., 1] * dg[..., 0] - g[..., 0] * dg[..., 1]

    def speed(self, s):
        return np.hypot(*np.moveaxis(self(s)[1], -1, 0))

    def curvature_numerator(self, s):
        """y'x'' - x'y'' (positive for clockwise convex curves)."""
        _, dg, ddg = self(s)
        return dg[..., 1] * ddg[..., 0] - dg[..., 0] * ddg[..., 1]

    def curvature(self, s):
        """Geodesic curvature of the trace (parameter independent)."""
        return self.curvature_numerator(s) / self.speed(s) ** 3

    @cached_property
    def lift(self):
        return CumulativeIntegral(self.lift_density, self.period, self.breakpoints)

    @cached_property
    def arc(self):
        return CumulativeIntegral(self.speed, self.period, self.breakpoints)

    @property
    def enclosed_area(self):
        return 0.5 * self.lift.total

    @property
    def length(self):
        return self.arc.total

    def quadrature_nodes(self, n_panels=DEFAULT_PANELS):
        return nodes_on(panel_edges(0.0, self.period, n_panels, self.breakpoints, self.period))

    @cached_property
    def _normal_table(self):
        s = np.linspace(0.0, self.period, TABLE_SIZE + 1)
        dg = self(s)[1]
        psi = np.unwrap(np.arctan2(dg[:, 0], -dg[:, 1]))
        return s, psi

    def param_of_normal(self, u, iterations=56):
        """Parameter of the boundary point whose outer normal points along u.

        Located from a table of normal angles (which decrease along a clockwise
        chart) and refined by bisection on cross(J gamma', u).  On a flat piece
        any parameter of the piece may be returned.
        """
        u = np.asarray(u, dtype=float)
        s_tab, psi = self._normal_table
        phi = np.arctan2(u[..., 1], u[..., 0])
        phi = psi[0] - np.mod(psi[0] - phi, 2 * np.pi)
        k = np.searchsorted(-psi, -phi, side="right") - 1
        k = np.clip(k, 0, TABLE_SIZE - 1)
        lo, hi = s_tab[k], s_tab[k + 1]
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            dg = self(mid)[1]
            f = cross2(np.stack([-dg[..., 1], dg[..., 0]], axis=-1), u)
            neg = f < 0
            lo = np.where(neg, mid, lo)
            hi = np.where(neg, hi, mid)
        return np.mod(0.5 * (lo + hi), self.period)

    def arclength_chart(self):
        return ArcLengthChart(self)


class ArcLengthChart(Chart):
    """Unit-speed reparameterization of a base chart."""

    def __init__(self, base: Chart):
        self.base = base
        bp_sigma = base.arc(base.breakpoints) if base.breakpoints.size else ()
        super().__init__(self._eval_sigma, base.length, bp_sigma, name=base.name + "/arclength")
        s = np.linspace(0.0, base.period, TABLE_SIZE + 1)
        self._s_tab = s
        self._sigma_tab = base.arc(s)

    def base_param(self, sigma, max_iter=8):
        """Base parameter s with arc length sigma from s=0 (Newton on the arc table)."""
        sigma = np.asarray(sigma, dtype=float)
        k, rem = np.divmod(sigma, self.period)
        s = np.interp(rem, self._sigma_tab, self._s_tab)
        for _ in range(max_iter):
            step = (self.base.arc(s) - rem) / self.base.speed(s)
            s = s - step
            if np.all(np.abs(step) < 1e-15 * self.base.period):
                break
        return s + k * self.base.period

    @cached_property
    def lift(self):
        # the lift is parameterization invariant: T(sigma) = T_base(s(sigma))
        return _Reparameterized(self.base.lift, self.base_param)

    def _eval_sigma(self, sigma):
        s = self.base_param(sigma)
        g, dg, ddg = self.base(s)
        sp = np.hypot(dg[..., 0], dg[..., 1])[..., None]
        tan = dg / sp
        d1 = tan
        d2 = (ddg - np.sum(ddg * tan, axis=-1, keepdims=True) * tan) / sp**2
        return g, d1, d2


class _Reparameterized:
    def __init__(self, integral, param):
        self.integral = integral
        self.param = param
        self.total = integral.total

    def __call__(self, sigma):
        return self.integral(self.param(sigma))
