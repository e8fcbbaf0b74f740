"""Minkowski identity, scaling laws, the calibration profile and competitor sets."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable
import warnings

import numpy as np
from scipy.spatial import cKDTree

from .bodies import LpBody, SmoothedTriangle, difference_body
from .errors import DataError, DomainError, NumericalError
from .quadrature import DEFAULT_PANELS, nodes_on, panel_edges
from .sphere import WulffSphere


def minkowski_residual(body, r=1.0, panels=DEFAULT_PANELS):
    """(3 A - (4/r) V) / A for the scale-r sphere."""
    S = WulffSphere(body, r)
    A, V = S.area(panels), S.volume(panels)
    return (3.0 * A - 4.0 * V / r) / A


def scaling_errors(body, rhos=(0.5, 2.0, 3.0), panels=DEFAULT_PANELS):
    """Relative deviations of A(rho)/rho^3 and V(rho)/rho^4 from the unit values."""
    S1 = WulffSphere(body)
    A1, V1 = S1.area(panels), S1.volume(panels)
    rows = []
    for rho in rhos:
        S = WulffSphere(body, rho)
        rows.append((rho, S.area(panels) / (rho**3 * A1) - 1.0, S.volume(panels) / (rho**4 * V1) - 1.0))
    return np.array(rows)


@dataclass(frozen=True)
class Profile:
    rho: np.ndarray
    f: np.ndarray
    rho0: float
    area1: float
    volume1: float
    volume: float

    @property
    def argmin(self):
        return float(self.rho[np.argmin(self.f)])

    @property
    def second_differences(self):
        return np.diff(self.f, 2)


def profile_f(body, E_volume, rho=None, panels=DEFAULT_PANELS, unit=None):
    """f(rho) = A1 rho^3 + (|E| - V1 rho^4) / rho, minimized at (|E|/V1)^(1/4)."""
    if not E_volume > 0:
        raise DomainError("volume must be positive")
    if unit is None:
        S = WulffSphere(body)
        unit = (S.area(panels), S.volume(panels))
    A1, V1 = unit
    rho0 = (E_volume / V1) ** 0.25
    if rho is None:
        rho = np.linspace(0.5 * rho0, 2.0 * rho0, 301)
    rho = np.asarray(rho, float)
    f = A1 * rho**3 + (E_volume - V1 * rho**4) / rho
    prof = Profile(rho, f, rho0, A1, V1, E_volume)
    if np.any(prof.second_differences < -1e-9 * np.max(np.abs(f))):
        raise NumericalError("profile is not discretely convex")
    return prof


class DifferenceBodyGrid:
    """Quadrature over r K0 in coordinates x = tau r c0(s), tau = 1 - sigma^2.

    The substitution removes the square-root behaviour of sphere graphs at
    the boundary of r K0.
    """

    def __init__(self, body, r=1.0, n_sigma=8, n_s=32):
        self.body, self.r = body, float(r)
        self.K0 = difference_body(body)
        chart = self.K0.native_chart
        s, ws = nodes_on(panel_edges(0.0, chart.period, n_s, chart.breakpoints, chart.period))
        sig, wsig = nodes_on(panel_edges(0.0, 1.0, n_sigma))
        s, ws, sig, wsig = s.ravel(), ws.ravel(), sig.ravel(), wsig.ravel()
        c0, dc0, _ = chart(s)
        tau = 1.0 - sig**2
        self.s, self.tau = s[None, :], tau[:, None]
        self.x = self.tau[..., None] * self.r * c0[None, :, :]
        self.dx_dtau = np.broadcast_to(self.r * c0[None], self.x.shape)
        self.dx_ds = self.tau[..., None] * self.r * dc0[None]
        jac = np.abs(self.dx_dtau[..., 0] * self.dx_ds[..., 1] - self.dx_dtau[..., 1] * self.dx_ds[..., 0])
        self.weights = (2.0 * sig * wsig)[:, None] * ws[None, :] * jac
        # boundary: outer normal J c0' scaled by r ds carries the length element
        self.boundary_s = s
        self.boundary_weights = ws
        jd = np.stack([-dc0[:, 1], dc0[:, 0]], -1)
        self.wall_density = self.r * body.support(jd)
        self.base_area = float(np.sum(self.weights))

    def gradient(self, d_tau, d_s):
        """Cartesian gradient from partials in (tau, s)."""
        a, b = self.dx_dtau, self.dx_ds
        det = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
        gx = (b[..., 1] * d_tau - a[..., 1] * d_s) / det
        gy = (-b[..., 0] * d_tau + a[..., 0] * d_s) / det
        return np.stack([gx, gy], -1)

    @cached_property
    def ball_graphs(self):
        """(g1, grad g1, g2, grad g2) of the scale-r sphere at the nodes."""
        S = WulffSphere(self.body, self.r)
        u1, v1, u2, v2, g1, g2 = S.graph_solve(self.x)
        return g1, S.graph_gradient(u1, v1), g2, S.graph_gradient(u2, v2)

    def graph_area(self, phi, grad, upward=True):
        x, y = self.x[..., 0], self.x[..., 1]
        nh = np.stack([y - grad[..., 0], -x - grad[..., 1]], -1)
        if not upward:
            nh = -nh
        return float(np.sum(self.body.support(nh) * self.weights))


Graph = Callable[[DifferenceBodyGrid], tuple]


@dataclass
class CompetitorSet:
    """Region between two graphs over r K0 closed by a vertical wall."""

    name: str
    upper: Graph
    lower: Graph
    wall: Callable = field(default=lambda grid: np.zeros_like(grid.boundary_s))

    def evaluate(self, grid):
        hu, gu = self.upper(grid)
        hl, gl = self.lower(grid)
        if not (np.all(np.isfinite(hu)) and np.all(np.isfinite(hl))):
            raise DataError(f"{self.name}: non-finite graph values")
        if np.any(hu < hl - 1e-9 * (1 + np.abs(hu))):
            raise DataError(f"{self.name}: upper graph below lower graph")
        wall = np.asarray(self.wall(grid), float)
        if np.any(wall < -1e-12):
            raise DataError(f"{self.name}: negative wall height")
        perim = (grid.graph_area(hu, gu, True) + grid.graph_area(hl, gl, False)
                 + float(np.sum(wall * grid.wall_density * grid.boundary_weights)))
        vol = float(np.sum((hu - hl) * grid.weights))
        return perim, vol


def competitor_perimeter(C: CompetitorSet, grid: DifferenceBodyGrid):
    return C.evaluate(grid)[0]


def calibration_check(C: CompetitorSet, grid: DifferenceBodyGrid, unit=None, panels=DEFAULT_PANELS):
    """(perimeter of E, perimeter of the volume-matched ball, margin)."""
    perim, vol = C.evaluate(grid)
    prof = profile_f(grid.body, vol, panels=panels, unit=unit)
    ball = prof.area1 * prof.rho0**3
    return perim, ball, perim - ball


# -- the shipped competitor families ------------------------------------------

def _ball(which):
    def graph(grid):
        g1, d1, g2, d2 = grid.ball_graphs
        return (g1, d1) if which == 1 else (g2, d2)
    return graph


def _plus(base, amp, shape):
    """base graph + amp * shape(tau, s); shape returns (value, d/dtau, d/ds)."""
    def graph(grid):
        v, g = base(grid)
        p, pt, ps = shape(grid.tau, grid.s)
        return v + amp * p, g + amp * grid.gradient(pt, ps)
    return graph


def _const(c, slope=(0.0, 0.0)):
    def graph(grid):
        sl = np.asarray(slope, float)
        return c + grid.x @ sl, np.broadcast_to(sl, grid.x.shape)
    return graph


def _angular(k, m, phase):
    """tau^m (1 - tau^2) trig(k s): vanishes on the boundary, C^1 at the center for m >= 2."""
    def shape(tau, s):
        trig = np.cos(k * s + phase)
        dtrig = -k * np.sin(k * s + phase)
        rad = tau**m * (1 - tau**2)
        drad = m * tau ** (m - 1) - (m + 2) * tau ** (m + 1)
        return rad * trig, drad * trig, rad * dtrig
    return shape


def _radial_bump(tau, s):
    val = (1 - tau**2) ** 2
    return val + 0 * s, -4 * tau * (1 - tau**2) + 0 * s, 0 * tau * s


def _lens(tau, s):
    return 1 - tau**2 + 0 * s, -2 * tau + 0 * s, 0 * tau * s


def competitor_suite(body, r=1.0):
    """Twelve graph-sandwich families over r K0 (volume-matched where natural)."""
    K0 = difference_body(body)
    base_area = r**2 * K0.area
    vb = 6.0 * body.area**2 * r**4  # ball volume, only used to size cylinders
    hb = vb / base_area
    m = r**2 * body.area
    up, lo = _ball(1), _ball(2)

    def slab(delta):
        return CompetitorSet(f"ball+slab{delta:g}", _plus(up, delta, lambda t, s: (1 + 0 * t * s, 0 * t * s, 0 * t * s)), lo,
                             lambda grid, d=delta: np.full_like(grid.boundary_s, d))

    def cylinder(name, height, slope=(0.0, 0.0)):
        return CompetitorSet(name, _const(height, slope), _const(0.0),
                             lambda grid: height + grid.r * K0.native_chart(grid.boundary_s)[0] @ np.asarray(slope))

    return [
        CompetitorSet("ball", up, lo),
        CompetitorSet("ball+shear3", _plus(up, 0.1 * r**2, _angular(3, 3, 0.0)), _plus(lo, 0.1 * r**2, _angular(3, 3, 0.0))),
        CompetitorSet("ball+shear2", _plus(up, 0.2 * r**2, _angular(2, 2, 0.3)), _plus(lo, 0.2 * r**2, _angular(2, 2, 0.3))),
        CompetitorSet("ball+bump", _plus(up, 0.3 * r**2, _radial_bump), lo),
        CompetitorSet("ball+dent", _plus(up, -0.2 * r**2, _radial_bump), lo),
        CompetitorSet("ball+ripple", up, _plus(lo, -0.1 * r**2, _angular(4, 2, 0.0))),
        slab(0.5 * r**2),
        slab(2.0 * r**2),
        cylinder("cylinder", hb),
        cylinder("cylinder-tall", 3.0 * hb),
        cylinder("cylinder-tilted", hb + 0.0, (0.3 * r, 0.1 * r)),
        CompetitorSet("lens", _plus(_const(m), m, _lens), _plus(_const(m), -m, _lens)),
    ]


def hausdorff_distance(mesh_a, mesh_b):
    """Symmetric max-min distance between vertex sets (a resolution-limited estimate)."""
    a = np.asarray(getattr(mesh_a, "vertices", mesh_a), float)
    b = np.asarray(getattr(mesh_b, "vertices", mesh_b), float)
    if a.size == 0 or b.size == 0:
        raise DataError("empty vertex set")
    da = cKDTree(b).query(a)[0].max()
    db = cKDTree(a).query(b)[0].max()
    return float(max(da, db))


def family_body(family, ell):
    if family == "lp":
        return LpBody(ell)
    if family in ("tri", "triangle"):
        return SmoothedTriangle(ell)
    raise DomainError(f"unknown family {family!r}")


def convergence_study(family, ells, nu=64, nv=64, panels=DEFAULT_PANELS):
    """Rows (ell, area, volume, Hausdorff distance to the previous row's sphere)."""
    rows, prev = [], None
    for ell in ells:
        S = WulffSphere(family_body(family, ell))
        mesh = S.mesh(nu, nv)
        dh = hausdorff_distance(prev, mesh) if prev is not None else np.nan
        rows.append((float(ell), S.area(panels), S.volume(panels), dh))
        prev = mesh
    table = np.array(rows)
    for col, label in ((1, "area"), (2, "volume")):
        deltas = np.abs(np.diff(table[:, col]))
        if np.any(np.diff(deltas) >= 0):
            warnings.warn(f"{family}: successive {label} differences are not decreasing", RuntimeWarning)
    dh = table[1:, 3]
    if np.any(np.diff(dh) >= 0):
        warnings.warn(f"{family}: Hausdorff distances are not decreasing", RuntimeWarning)
    return table
