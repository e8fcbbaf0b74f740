"""Planar convex bodies: gauge, support function, pi-map and boundary charts.

Directions are arrays with last axis of length 2.  Boundary charts are
clockwise and 2*pi-periodic; the native chart of gauge-defined bodies is the
radial chart gamma(s) = r(s) (sin s, cos s).
"""
from functools import cached_property
from pathlib import Path

import numpy as np

from .charts import Chart
from .errors import DataError, DomainError

TWO_PI = 2.0 * np.pi
FD_STEP = 1e-5


def _unit(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _perp_unit(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([-np.sin(theta), np.cos(theta)], axis=-1)


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


def _vec(u):
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != 2:
        raise DomainError(f"expected planar vectors, got shape {u.shape}")
    return u


def _nonzero(u):
    u = _vec(u)
    if np.any(np.hypot(u[..., 0], u[..., 1]) == 0):
        raise DomainError("direction must be nonzero")
    return u


def five_point_derivative(f, theta, h=FD_STEP):
    return (f(theta - 2 * h) - 8 * f(theta - h) + 8 * f(theta + h) - f(theta + 2 * h)) / (12 * h)


class ConvexBody:
    """Base class.  Subclasses provide gauge, support (+gradient, Hessian) and a chart."""

    name = "body"
    centrally_symmetric = False
    #: chart parameters where the boundary is less smooth
    chart_breakpoints = ()
    #: normal angles where the support function is less smooth
    normal_breakpoints = ()

    # -- to be provided by subclasses
    def gauge(self, x):
        raise NotImplementedError

    def support(self, u):
        raise NotImplementedError

    def support_gradient(self, u):
        raise NotImplementedError

    def support_hessian(self, u):
        raise NotImplementedError

    def boundary(self, s):
        raise NotImplementedError

    # -- derived
    def pi_map(self, u):
        """Boundary point where the support in direction u is attained."""
        return self.support_gradient(_nonzero(u))

    def pi_jacobian(self, u):
        return self.support_hessian(_nonzero(u))

    def support_derivs(self, theta):
        """(h, h', h'') at the unit direction (cos theta, sin theta)."""
        u, w = _unit(theta), _perp_unit(theta)
        h = self.support(u)
        h1 = np.sum(self.support_gradient(u) * w, axis=-1)
        hess = self.support_hessian(u)
        h2 = np.einsum("...i,...ij,...j->...", w, hess, w) - h
        return h, h1, h2

    def support_third(self, theta):
        return five_point_derivative(lambda th: self.support_derivs(th)[2], theta)

    def curvature_radius(self, theta):
        h, _, h2 = self.support_derivs(theta)
        return h + h2

    @cached_property
    def native_chart(self):
        return Chart(self.boundary, TWO_PI, self.chart_breakpoints, name=self.name)

    def chart(self, kind="native"):
        if kind == "native":
            return self.native_chart
        if kind == "arclength":
            return self._arclength_chart
        if kind == "radial":
            return self._radial_chart
        if kind in self._extra_charts():
            return self._extra_charts()[kind]
        raise DomainError(f"unknown chart kind {kind!r}")

    def _extra_charts(self):
        return {}

    @cached_property
    def _arclength_chart(self):
        return self.native_chart.arclength_chart()

    @cached_property
    def _radial_chart(self):
        return Chart(self.radial_boundary, TWO_PI, self.chart_breakpoints, name=self.name + "/radial")

    def radial(self, e):
        """Radial function rho(e) = 1 / gauge(e)."""
        return 1.0 / self.gauge(e)

    def radial_boundary(self, s):
        """Radial chart with derivatives by 5-point differences of r(s)."""
        s = np.asarray(s, dtype=float)
        e = np.stack([np.sin(s), np.cos(s)], axis=-1)
        e1 = np.stack([np.cos(s), -np.sin(s)], axis=-1)
        r_of = lambda x: self.radial(np.stack([np.sin(x), np.cos(x)], axis=-1))
        r = r_of(s)
        r1 = five_point_derivative(r_of, s)
        r2 = (-r_of(s + 2 * FD_STEP) + 16 * r_of(s + FD_STEP) - 30 * r
              + 16 * r_of(s - FD_STEP) - r_of(s - 2 * FD_STEP)) / (12 * FD_STEP**2)
        return _radial_assemble(r, r1, r2, e, e1)

    def boundary_point(self, s):
        return self.boundary(s)

    @cached_property
    def area(self):
        """|K| = 1/2 of the loop integral of <gamma, J gamma'>."""
        return self.native_chart.enclosed_area

    @cached_property
    def length(self):
        return self.native_chart.length

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def _radial_assemble(r, r1, r2, e, e1):
    r, r1, r2 = r[..., None], r1[..., None], r2[..., None]
    g = r * e
    with np.errstate(invalid="ignore"):  # infinite curvature at a breakpoint gives nan
        dg = r1 * e + r * e1
        ddg = r2 * e + 2 * r1 * e1 - r * e
    return g, dg, ddg


class GaugeBody(ConvexBody):
    """Body given by a gauge with gradient and Hessian; radial native chart."""

    def gauge_derivs(self, x):
        """(N, grad N, Hess N) at x != 0."""
        raise NotImplementedError

    def gauge(self, x):
        x = _vec(x)
        out = np.zeros(x.shape[:-1])
        nz = np.hypot(x[..., 0], x[..., 1]) > 0
        if np.any(nz):
            out[nz] = self.gauge_derivs(x[nz])[0]
        return out if out.ndim else float(out)

    def radial_boundary(self, s):
        s = np.asarray(s, dtype=float)
        e = np.stack([np.sin(s), np.cos(s)], axis=-1)
        e1 = np.stack([np.cos(s), -np.sin(s)], axis=-1)
        n, grad, hess = self.gauge_derivs(e)
        n1 = np.sum(grad * e1, axis=-1)
        n2 = np.einsum("...i,...ij,...j->...", e1, hess, e1) - n
        r = 1.0 / n
        r1 = -n1 * r * r
        r2 = -n2 * r * r + 2 * n1 * n1 * r**3
        return _radial_assemble(r, r1, r2, e, e1)

    def boundary(self, s):
        return self.radial_boundary(s)

    # support from the chart: the boundary point with outer normal u
    def _support_point(self, u):
        chart = self.native_chart
        s = chart.param_of_normal(u)
        return s, chart(s)

    def support(self, u):
        u = _vec(u)
        _, (g, _, _) = self._support_point(u)
        return np.sum(u * g, axis=-1)

    def support_gradient(self, u):
        u = _vec(u)
        return self._support_point(u)[1][0]

    def support_hessian(self, u):
        u = _nonzero(u)
        _, (_, dg, ddg) = self._support_point(u)
        speed = np.hypot(dg[..., 0], dg[..., 1])
        kappa_num = dg[..., 1] * ddg[..., 0] - dg[..., 0] * ddg[..., 1]
        with np.errstate(divide="ignore"):
            radius = speed**3 / kappa_num
        norm = np.hypot(u[..., 0], u[..., 1])
        w = np.stack([-u[..., 1], u[..., 0]], axis=-1) / norm[..., None]
        return (radius / norm)[..., None, None] * _outer(w, w)


class Disk(GaugeBody):
    name = "disk"
    centrally_symmetric = True

    def gauge_derivs(self, x):
        x = _vec(x)
        n = np.hypot(x[..., 0], x[..., 1])
        grad = x / n[..., None]
        hess = (np.eye(2) - _outer(grad, grad)) / n[..., None, None]
        return n, grad, hess

    def gauge(self, x):
        x = _vec(x)
        return np.hypot(x[..., 0], x[..., 1])

    def support(self, u):
        return self.gauge(u)

    def support_gradient(self, u):
        return self.gauge_derivs(_nonzero(u))[1]

    def support_hessian(self, u):
        return self.gauge_derivs(_nonzero(u))[2]

    def boundary(self, s):
        s = np.asarray(s, dtype=float)
        sn, cs = np.sin(s), np.cos(s)
        return (np.stack([sn, cs], -1), np.stack([cs, -sn], -1), np.stack([-sn, -cs], -1))


class Ellipse(GaugeBody):
    """Unit ball of |(x1/a1, x2/a2)|; also carries the affine chart (a1 sin s, a2 cos s)."""

    centrally_symmetric = True

    def __init__(self, a1, a2):
        if not (a1 > 0 and a2 > 0):
            raise DomainError("ellipse semi-axes must be positive")
        self.a = np.array([a1, a2], dtype=float)
        self.name = f"ellipse:{a1:g},{a2:g}"

    def gauge_derivs(self, x):
        x = _vec(x)
        d = 1.0 / self.a**2
        n = np.sqrt(np.sum(x * x * d, axis=-1))
        grad = x * d / n[..., None]
        hess = (np.diag(d) - _outer(grad, grad)) / n[..., None, None]
        return n, grad, hess

    def gauge(self, x):
        x = _vec(x)
        return np.sqrt(np.sum((x / self.a) ** 2, axis=-1))

    def support(self, u):
        u = _vec(u)
        return np.sqrt(np.sum((u * self.a) ** 2, axis=-1))

    def support_gradient(self, u):
        u = _nonzero(u)
        return u * self.a**2 / self.support(u)[..., None]

    def support_hessian(self, u):
        u = _nonzero(u)
        h = self.support(u)[..., None, None]
        g = self.support_gradient(u)
        return (np.diag(self.a**2) - _outer(g, g)) / h

    def affine_boundary(self, s):
        s = np.asarray(s, dtype=float)
        sn, cs = np.sin(s), np.cos(s)
        a1, a2 = self.a
        return (np.stack([a1 * sn, a2 * cs], -1), np.stack([a1 * cs, -a2 * sn], -1),
                np.stack([-a1 * sn, -a2 * cs], -1))

    @cached_property
    def _affine_chart(self):
        return Chart(self.affine_boundary, TWO_PI, (), name=self.name + "/affine")

    def _extra_charts(self):
        return {"affine": self._affine_chart}


def _pnorm_derivs(x, p):
    """p-norm with gradient and Hessian, scaled to avoid overflow for large p."""
    x = _vec(x)
    a = np.abs(x)
    m = np.max(a, axis=-1)
    t = a / m[..., None]
    n = m * np.sum(t**p, axis=-1) ** (1.0 / p)
    ratio = a / n[..., None]
    grad = np.sign(x) * ratio ** (p - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = ratio ** (p - 2)
    hess = -_outer(grad, grad)
    hess[..., 0, 0] += diag[..., 0]
    hess[..., 1, 1] += diag[..., 1]
    return n, grad, (p - 1) / n[..., None, None] * hess


class LpBody(GaugeBody):
    """Unit ball of (|x1|^l + |x2|^l)^(1/l); the support is the conjugate norm."""

    centrally_symmetric = True
    chart_breakpoints = (0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi)
    normal_breakpoints = (0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi)

    def __init__(self, ell):
        if not ell > 1:
            raise DomainError("l-norm exponent must exceed 1")
        self.ell = float(ell)
        self.q = self.ell / (self.ell - 1.0)
        self.name = f"lp:{ell:g}"

    def gauge_derivs(self, x):
        return _pnorm_derivs(x, self.ell)

    def support(self, u):
        u = _vec(u)
        out = np.zeros(u.shape[:-1])
        nz = np.any(u != 0, axis=-1)
        if np.any(nz):
            out[nz] = _pnorm_derivs(u[nz], self.q)[0]
        return out if out.ndim else float(out)

    def support_gradient(self, u):
        return _pnorm_derivs(_nonzero(u), self.q)[1]

    def support_hessian(self, u):
        return _pnorm_derivs(_nonzero(u), self.q)[2]


TRIANGLE_NORMALS = np.array([[0.0, 1.0], [np.sqrt(3) / 2, -0.5], [-np.sqrt(3) / 2, -0.5]])


class SmoothedTriangle(GaugeBody):
    """Unit ball of (sum_i max(<x, a_i>, 0)^l)^(1/l) for three unit normals a_i at 120 degrees.

    The boundary contains a segment around each a_i direction (only one term
    active there), so the body is convex but not strictly convex.
    """

    chart_breakpoints = tuple(np.pi * np.array([1, 3, 5, 7, 9, 11]) / 6)
    normal_breakpoints = (0.5 * np.pi, 7 * np.pi / 6, 11 * np.pi / 6)

    def __init__(self, ell):
        if not ell > 1:
            raise DomainError("smoothed triangle exponent must exceed 1")
        self.ell = float(ell)
        self.name = f"tri:{ell:g}"

    def gauge_derivs(self, x):
        x = _vec(x)
        p = self.ell
        m = np.maximum(x @ TRIANGLE_NORMALS.T, 0.0)
        top = np.max(m, axis=-1)
        n = top * np.sum((m / top[..., None]) ** p, axis=-1) ** (1.0 / p)
        ratio = m / n[..., None]
        grad = (ratio ** (p - 1)) @ TRIANGLE_NORMALS
        with np.errstate(divide="ignore", invalid="ignore"):
            c = np.where(m > 0, ratio ** (p - 2), 0.0)
        aa = _outer(TRIANGLE_NORMALS, TRIANGLE_NORMALS)
        hess = (p - 1) / n[..., None, None] * (np.einsum("...k,kij->...ij", c, aa) - _outer(grad, grad))
        return n, grad, hess


class SupportBody(ConvexBody):
    """Body given by its support function h(theta); native chart by normal angle.

    gamma(s) = p(pi/2 - s) with p(theta) = h u + h' w, which is clockwise and
    agrees with (sin s, cos s) for the disk.
    """

    polar_table = 1024

    def support_derivs(self, theta):
        raise NotImplementedError

    def _polar(self, u):
        u = _vec(u)
        norm = np.hypot(u[..., 0], u[..., 1])
        theta = np.arctan2(u[..., 1], u[..., 0])
        return norm, theta

    def support(self, u):
        norm, theta = self._polar(u)
        return norm * self.support_derivs(theta)[0]

    def support_gradient(self, u):
        _, theta = self._polar(_nonzero(u))
        h, h1, _ = self.support_derivs(theta)
        return h[..., None] * _unit(theta) + h1[..., None] * _perp_unit(theta)

    def support_hessian(self, u):
        norm, theta = self._polar(_nonzero(u))
        h, _, h2 = self.support_derivs(theta)
        w = _perp_unit(theta)
        return ((h + h2) / norm)[..., None, None] * _outer(w, w)

    def boundary(self, s):
        theta = 0.5 * np.pi - np.asarray(s, dtype=float)
        h, h1, h2 = self.support_derivs(theta)
        h3 = self.support_third(theta)
        u, w = _unit(theta), _perp_unit(theta)
        p = h[..., None] * u + h1[..., None] * w
        dp = (h + h2)[..., None] * w
        ddp = (h1 + h3)[..., None] * w - (h + h2)[..., None] * u
        return p, -dp, ddp

    @property
    def chart_breakpoints(self):
        return tuple(np.mod(0.5 * np.pi - np.asarray(self.normal_breakpoints, dtype=float), TWO_PI))

    @cached_property
    def _polar_grid(self):
        theta = np.linspace(0.0, TWO_PI, self.polar_table, endpoint=False)
        return theta, self.support_derivs(theta)[0]

    def gauge(self, x, iterations=60):
        """max over theta of <x, u(theta)> / h(theta), located on a table and
        refined by safeguarded Newton on the angle; kink angles are also tried."""
        x = _vec(x)
        shape = x.shape[:-1]
        flat = x.reshape(-1, 2)
        out = np.zeros(flat.shape[0])
        theta_tab, h_tab = self._polar_grid
        step = theta_tab[1] - theta_tab[0]
        kinks = np.asarray(self.normal_breakpoints, dtype=float)
        for start in range(0, flat.shape[0], 4096):
            xs = flat[start:start + 4096]
            ratio = (xs @ _unit(theta_tab).T) / h_tab
            j = np.argmax(ratio, axis=1)
            best = ratio[np.arange(len(xs)), j]
            lo, hi = theta_tab[j] - step, theta_tab[j] + step
            th = theta_tab[j].copy()

            def dratio(t):
                h, h1, h2 = self.support_derivs(t)
                a = np.sum(xs * _unit(t), axis=-1)
                b = np.sum(xs * _perp_unit(t), axis=-1)
                num = b * h - a * h1
                with np.errstate(invalid="ignore"):  # infinite h'' at kinks; Newton falls back to bisection
                    d1 = num / h**2
                    d2 = -a * (h + h2) / h**2 - 2 * num * h1 / h**3
                return a / h, d1, d2

            for _ in range(iterations):
                _, d1, d2 = dratio(th)
                pos = d1 > 0
                lo = np.where(pos, th, lo)
                hi = np.where(pos, hi, th)
                with np.errstate(divide="ignore", invalid="ignore"):
                    newton = th - d1 / d2
                ok = np.isfinite(newton) & (newton > lo) & (newton < hi)
                th_new = np.where(ok, newton, 0.5 * (lo + hi))
                if np.all(np.abs(th_new - th) < 1e-15):
                    th = th_new
                    break
                th = th_new
            best = np.maximum(best, dratio(th)[0])
            if kinks.size:
                kr = (xs @ _unit(kinks).T) / self.support_derivs(kinks)[0]
                best = np.maximum(best, kr.max(axis=1))
            out[start:start + 4096] = np.where(np.any(xs != 0, axis=1), best, 0.0)
        return out.reshape(shape) if shape else float(out[0])


class FourierBody(SupportBody):
    """h(theta) = c0 + sum_k a_k cos k theta + b_k sin k theta."""

    def __init__(self, coeffs, name="fourier"):
        c = np.asarray(coeffs, dtype=float).ravel()
        if c.size == 0 or c.size % 2 == 0 or not np.all(np.isfinite(c)):
            raise DataError("fourier_h needs [c0, a1, b1, ...] with an odd number of finite entries")
        self.c0 = c[0]
        self.ak = c[1::2]
        self.bk = c[2::2]
        self.k = np.arange(1, self.ak.size + 1, dtype=float)
        self.name = name
        theta = np.linspace(0.0, TWO_PI, 4096, endpoint=False)
        h, _, h2 = self.support_derivs(theta)
        if np.min(h) <= 0:
            raise DataError("support function must be positive (origin inside the body)")
        if np.min(h + h2) < 1e-6:
            raise DataError("body is not strictly convex: h + h'' < 1e-6 somewhere")
        self.centrally_symmetric = bool(np.all(self.ak[::2] == 0) and np.all(self.bk[::2] == 0))

    def _series(self, theta, order):
        theta = np.asarray(theta, dtype=float)
        kt = theta[..., None] * self.k
        c, s = np.cos(kt), np.sin(kt)
        kp = self.k**order
        # d^n/dθ^n of (a cos + b sin) cycles with period 4
        phase = [(c, s), (-s, c), (-c, -s), (s, -c)][order % 4]
        val = np.sum(kp * (self.ak * phase[0] + self.bk * phase[1]), axis=-1)
        return val + (self.c0 if order == 0 else 0.0)

    def support_derivs(self, theta):
        return self._series(theta, 0), self._series(theta, 1), self._series(theta, 2)

    def support_third(self, theta):
        return self._series(theta, 3)


class DifferenceBody(SupportBody):
    """K - K, with support h_K(u) + h_K(-u)."""

    centrally_symmetric = True

    def __init__(self, base: ConvexBody):
        self.base = base
        self.name = f"diff({base.name})"
        nb = np.asarray(base.normal_breakpoints, dtype=float)
        self.normal_breakpoints = tuple(np.unique(np.mod(np.concatenate([nb, nb + np.pi]), TWO_PI)))

    def support(self, u):
        u = _vec(u)
        return self.base.support(u) + self.base.support(-u)

    def support_gradient(self, u):
        u = _nonzero(u)
        return self.base.support_gradient(u) - self.base.support_gradient(-u)

    def support_hessian(self, u):
        u = _nonzero(u)
        return self.base.support_hessian(u) + self.base.support_hessian(-u)

    def support_derivs(self, theta):
        a = self.base.support_derivs(theta)
        b = self.base.support_derivs(np.asarray(theta) + np.pi)
        return a[0] + b[0], a[1] + b[1], a[2] + b[2]


def difference_body(body: ConvexBody) -> DifferenceBody:
    return DifferenceBody(body)


def make_builtin(family, *params):
    family = family.lower()
    try:
        if family == "disk":
            if params:
                raise DomainError("disk takes no parameters")
            return Disk()
        if family == "ellipse":
            return Ellipse(*params)
        if family in ("lp", "l"):
            return LpBody(*params)
        if family in ("tri", "triangle", "smoothed_triangle"):
            return SmoothedTriangle(*params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {family}: {params}") from exc
    raise DomainError(f"unknown body family {family!r}")


def load_fourier(path):
    """Read `fourier_h = [c0, a1, b1, ...]` from a TOML-style config file."""
    try:
        import tomllib
    except ModuleNotFoundError:  # python < 3.11
        import tomli as tomllib
    try:
        data = tomllib.loads(Path(path).read_text())
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise DataError(f"cannot read body config {path}: {exc}") from exc
    if "fourier_h" not in data:
        raise DataError(f"{path}: missing key fourier_h")
    return FourierBody(data["fourier_h"], name=f"fourier:{path}")


def parse_body(text: str) -> ConvexBody:
    """Body grammar: disk | ellipse:a1,a2 | lp:ell | tri:ell | fourier:path."""
    head, _, rest = text.strip().partition(":")
    if head == "fourier":
        return load_fourier(rest)
    try:
        params = [float(p) for p in rest.split(",")] if rest else []
    except ValueError as exc:
        raise DomainError(f"bad body parameters in {text!r}") from exc
    return make_builtin(head, *params)


def body_area(body: ConvexBody) -> float:
    return body.area


def boundary_length(body: ConvexBody) -> float:
    return body.length
