"""The sphere S_K: union over v of the lifted loops u -> gamma(u+v) - gamma(v).

Unit-scale point in a chart with lift T (T' = <gamma, J gamma'>), w = u + v:

    x = x(w) - x(v),  y = y(w) - y(v),
    t = T(w) - T(v) - x(w) y(v) + y(w) x(v).

The scale-r sphere is its image under the dilation (r x, r y, r^2 t).
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .bodies import ConvexBody, difference_body
from .charts import Chart
from .errors import ChartError, DomainError, NumericalError
from .heis import dilate
from .quadrature import DEFAULT_PANELS, CumulativeIntegral, gauss_legendre, nodes_on, panel_edges

POLE_EXCLUSION = 1e-6
SEED_GRID = 48


class SurfaceSample(NamedTuple):
    point: np.ndarray
    N: np.ndarray  # unit normal, frame coefficients (a, b, c)
    Nh_norm: np.ndarray
    NT: np.ndarray
    area_weight: np.ndarray
    h: np.ndarray
    g: np.ndarray


@dataclass
class Mesh:
    vertices: np.ndarray
    faces: np.ndarray  # 0-based
    normals: np.ndarray
    capped: bool = True

    def edge_counts(self):
        e = np.sort(np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]]), axis=1)
        _, counts = np.unique(e, axis=0, return_counts=True)
        return counts

    def is_watertight(self):
        return bool(np.all(self.edge_counts() == 2))

    def obj_text(self):
        fmt = lambda row: " ".join(f"{v:.17g}" for v in row)
        lines = [f"v {fmt(p)}" for p in self.vertices]
        lines += [f"vn {fmt(n)}" for n in self.normals]
        lines += ["f {} {} {}".format(*(f + 1)) for f in self.faces]
        return "\n".join(lines) + "\n"

    def write_obj(self, path):
        with open(path, "w", newline="\n") as fh:
            fh.write(self.obj_text())


@dataclass(frozen=True)
class WulffSphere:
    body: ConvexBody
    r: float = 1.0
    chart_kind: str = "native"
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError("scale r must be positive")

    @cached_property
    def chart(self) -> Chart:
        return self.body.chart(self.chart_kind)

    @property
    def period(self):
        return self.chart.period

    @property
    def pole_height(self):
        return 2.0 * self.r**2 * self.body.area

    def scaled(self, r):
        return WulffSphere(self.body, r, self.chart_kind)

    def with_chart(self, kind):
        return WulffSphere(self.body, self.r, kind)

    # -- points -----------------------------------------------------------
    def _unit_point(self, u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        w = u + v
        gw = self.chart(w)[0]
        gv = self.chart(v)[0]
        lift = self.chart.lift
        t = lift(w) - lift(v) - gw[..., 0] * gv[..., 1] + gw[..., 1] * gv[..., 0]
        return np.concatenate([gw - gv, t[..., None]], axis=-1)

    def point(self, u, v):
        return dilate(self.r, self._unit_point(u, v))

    @cached_property
    def _radial_square(self):
        rad = lambda s: self.body.radial(np.stack([np.sin(s), np.cos(s)], -1)) ** 2
        return CumulativeIntegral(rad, 2 * np.pi, self.body.chart_breakpoints)

    def point_parametric(self, u, v):
        """Same surface written with the radial function only (radial chart):
        x = r(w) sin w - r(v) sin v, y = r(w) cos w - r(v) cos v,
        t = int_v^w r^2 - r(v) r(w) sin u."""
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        w = u + v
        e = lambda s: np.stack([np.sin(s), np.cos(s)], -1)
        rw, rv = self.body.radial(e(w)), self.body.radial(e(v))
        x = rw * np.sin(w) - rv * np.sin(v)
        y = rw * np.cos(w) - rv * np.cos(v)
        q = self._radial_square
        t = q(w) - q(v) - rv * rw * np.sin(u)
        return dilate(self.r, np.stack([x, y, t], -1))

    # -- tangents, normals ----------------------------------------------
    def _hg(self, u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        gw, dgw, ddgw = self.chart(u + v)
        gv, dgv, _ = self.chart(v)
        d = gw - gv
        h = 2.0 * (dgv[..., 0] * d[..., 1] - dgv[..., 1] * d[..., 0])
        g = dgv[..., 0] * dgw[..., 1] - dgv[..., 1] * dgw[..., 0]
        return h, g, gw, dgw, ddgw, gv, dgv

    def frame_tangents(self, u, v):
        """(d/du, d/dv) of the sphere chart in frame coefficients (a, b, c)."""
        h, g, gw, dgw, _, gv, dgv = self._hg(u, v)
        r = self.r
        zero = np.zeros_like(h)
        pu = np.stack([r * dgw[..., 0], r * dgw[..., 1], zero], -1)
        pv = np.stack([r * (dgw[..., 0] - dgv[..., 0]), r * (dgw[..., 1] - dgv[..., 1]), r * r * h], -1)
        return pu, pv

    def coordinate_tangents(self, u, v):
        """(d/du, d/dv) in coordinates (x, y, t), unit scale."""
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        gw, dgw, _ = self.chart(u + v)
        gv, dgv, _ = self.chart(v)
        aw = gw[..., 1] * dgw[..., 0] - gw[..., 0] * dgw[..., 1]
        av = gv[..., 1] * dgv[..., 0] - gv[..., 0] * dgv[..., 1]
        tu = aw - dgw[..., 0] * gv[..., 1] + dgw[..., 1] * gv[..., 0]
        tv = (aw - av - dgw[..., 0] * gv[..., 1] - gw[..., 0] * dgv[..., 1]
              + dgw[..., 1] * gv[..., 0] + gw[..., 1] * dgv[..., 0])
        pu = np.concatenate([dgw, tu[..., None]], -1)
        pv = np.concatenate([dgw - dgv, tv[..., None]], -1)
        return pu, pv

    def _check_chart(self, u):
        u = np.asarray(u, float)
        lim = POLE_EXCLUSION * self.period
        if np.any((u < lim) | (u > self.period - lim)):
            raise ChartError("sphere chart is singular at the poles (u near 0 or P)")

    def surface_sample(self, u, v):
        self._check_chart(u)
        pu, pv = self.frame_tangents(u, v)
        n = np.cross(pu, pv)
        norm = np.linalg.norm(n, axis=-1)
        with np.errstate(invalid="ignore", divide="ignore"):  # flat boundary pieces
            N = n / norm[..., None]
        h, g = self._hg(u, v)[:2]
        return SurfaceSample(self.point(u, v), N, np.hypot(N[..., 0], N[..., 1]), N[..., 2], norm, h, g)

    def normal(self, u, v):
        return self.surface_sample(u, v).N

    def mean_curvature_at(self, u, v):
        """H along the loop through (u, v): <Dpi(J vel) J acc, vel> / |vel|^2."""
        self._check_chart(u)
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        _, dg, ddg = self.chart(u + v)
        vel, acc = self.r * dg, self.r * ddg
        jv = np.stack([-vel[..., 1], vel[..., 0]], -1)
        ja = np.stack([-acc[..., 1], acc[..., 0]], -1)
        dpi = self.body.pi_jacobian(jv)
        num = np.einsum("...i,...ij,...j->...", vel, dpi, ja)
        return num / np.sum(vel * vel, -1)

    # -- area and volume -------------------------------------------------
    def _integrals(self, panels):
        key = ("integrals", panels)
        if key not in self._cache:
            self._cache[key] = self._torus_quadrature(panels)
        return self._cache[key]

    def area(self, panels=DEFAULT_PANELS):
        return self._integrals(panels)[0]

    def volume(self, panels=DEFAULT_PANELS):
        return self._integrals(panels)[1]

    def _torus_nodes(self, panels, support=True):
        """Nodes and weights over (v, w = u + v) with w in [v, v + P].

        Panel edges include the chart breakpoints in both variables; the
        panel containing v is split at v.
        """
        ch, body, P = self.chart, self.body, self.period
        edges = panel_edges(0.0, P, panels, ch.breakpoints, P)
        X, W = nodes_on(edges)

        def data(s):
            g, dg, _ = ch(s)
            if not support:
                # J gamma' is the outer normal at gamma, so h_K(J gamma') = <gamma, J gamma'>
                dens = g[..., 1] * dg[..., 0] - g[..., 0] * dg[..., 1]
                return g, dg, ch.lift(s), None, dens
            jd = np.stack([-dg[..., 1], dg[..., 0]], -1)
            # support of +-(y', -x'); the horizontal normal is h * (y', -x')
            return g, dg, ch.lift(s), body.support(-jd), body.support(jd)

        base = data(X)
        shifted = (base[0], base[1], base[2] + ch.lift.total, base[3], base[4])
        full = tuple(None if a is None else np.concatenate([a, b], axis=0) for a, b in zip(base, shifted))
        x, wgl = gauss_legendre(X.shape[1])
        lo, hi = edges[:-1, None, None], edges[1:, None, None]
        vv = X[:, :, None]
        # split panel nodes: [v, hi] then [lo + P, v + P]
        n1 = vv + 0.5 * (hi - vv) * (x + 1.0)
        n2 = lo + P + 0.5 * (vv - lo) * (x + 1.0)
        split_nodes = np.concatenate([n1, n2], axis=-1)
        split_w = np.concatenate([0.5 * (hi - vv) * wgl + 0 * n1, 0.5 * (vv - lo) * wgl + 0 * n2], axis=-1)
        return base, W, full, np.concatenate([W, W], axis=0), data(split_nodes), split_w

    def _torus_quadrature(self, panels):
        """Area and volume from sums that separate into v- and w-factors.

        On a clockwise strictly convex chart h <= 0, so the area density is
        -h S_-(w), and the volume is |int t g| (divergence of (0, 0, t)).
        Both are sums of products f(v) k(w); whole-panel window sums come
        from prefix sums and the split panel is summed directly.
        """
        r = self.r
        base, W, full, WW, split, split_w = self._torus_nodes(panels, support=False)
        E, n = W.shape
        if not self.chart.lift.total > 0:
            raise ChartError("torus quadrature expects a clockwise chart")
        gv, dgv, Tv = base[0], base[1], base[2]
        xv, yv, dxv, dyv = gv[..., 0], gv[..., 1], dgv[..., 0], dgv[..., 1]
        gw, dgw, Tw, Sw = full[0], full[1], full[2], full[4]
        xw, yw, dxw, dyw = gw[..., 0], gw[..., 1], dgw[..., 0], dgw[..., 1]
        feats = np.stack([Sw, xw * Sw, yw * Sw,
                          Tw * dyw, Tw * dxw, dyw, dxw, xw * dyw, xw * dxw, yw * dyw, yw * dxw], -1)
        wf = (feats * WW[..., None]).reshape(2 * E * n, -1)
        pref = np.concatenate([np.zeros((1, wf.shape[1])), np.cumsum(wf, axis=0)])
        j = np.arange(E)
        win = (pref[(j + E) * n] - pref[(j + 1) * n])[:, None, :]
        s0, sx, sy, tdy, tdx, dy, dx, xdy, xdx, ydy, ydx = np.moveaxis(win, -1, 0)
        mh = 2.0 * (dyv * sx - dxv * sy + (dxv * yv - dyv * xv) * s0)
        tg = (dxv * tdy - dyv * tdx - Tv * dxv * dy + Tv * dyv * dx
              - yv * dxv * xdy + yv * dyv * xdx + xv * dxv * ydy - xv * dyv * ydx)
        sg, sdg, sT, _, sS = split
        gv1, dgv1 = gv[..., None, :], dgv[..., None, :]
        X, Y = sg[..., 0] - gv1[..., 0], sg[..., 1] - gv1[..., 1]
        mh2 = -2.0 * (dgv1[..., 0] * Y - dgv1[..., 1] * X) * sS
        t2 = sT - Tv[..., None] - sg[..., 0] * gv1[..., 1] + sg[..., 1] * gv1[..., 0]
        tg2 = t2 * (dgv1[..., 0] * sdg[..., 1] - dgv1[..., 1] * sdg[..., 0])
        area = r**3 * (np.sum(W * mh) + np.sum(W[..., None] * mh2 * split_w))
        vol = r**4 * (np.sum(W * tg) + np.sum(W[..., None] * tg2 * split_w))
        return float(area), float(abs(vol))

    def _torus_quadrature_direct(self, panels):
        """Pairwise double sum with the position-field volume (1/3) det[Phi, Phi_u, Phi_v]."""
        r = self.r
        base, W, full, WW, split, split_w = self._torus_nodes(panels)
        E = W.shape[0]
        area_sum = vol_sum = 0.0
        for j in range(E):
            gv, dgv, Tv = base[0][j][:, None], base[1][j][:, None], base[2][j][:, None]
            wv = W[j][:, None]
            sl = slice(j + 1, j + E)
            wdat = tuple(a[sl].reshape((1, -1) + a.shape[2:]) for a in full)
            ww = WW[sl].reshape(1, -1)
            sdat = tuple(a[j] for a in split)
            for dat, wts in ((wdat, ww), (sdat, split_w[j])):
                a, v = self._densities(gv, dgv, Tv, *dat, r, volume="det")
                area_sum += np.sum(wv * a * wts)
                vol_sum += np.sum(wv * v * wts)
        return float(area_sum), float(abs(vol_sum) / 3.0)

    @staticmethod
    def _densities(gv, dgv, Tv, gw, dgw, Tw, s_pos, s_neg, r, volume="tg"):
        xv, yv = gv[..., 0], gv[..., 1]
        dxv, dyv = dgv[..., 0], dgv[..., 1]
        xw, yw = gw[..., 0], gw[..., 1]
        dxw, dyw = dgw[..., 0], dgw[..., 1]
        X, Y = xw - xv, yw - yv
        h = 2.0 * (dxv * Y - dyv * X)
        area = r**3 * np.where(h > 0, h * s_pos, -h * s_neg)
        t = Tw - Tv - xw * yv + yw * xv
        if volume == "tg":
            return area, r**4 * t * (dxv * dyw - dyv * dxw)
        aw = yw * dxw - xw * dyw
        av = yv * dxv - xv * dyv
        tu = aw - dxw * yv + dyw * xv
        tv = aw - av - dxw * yv - xw * dyv + dyw * xv + yw * dxv
        ex, ey = dxw - dxv, dyw - dyv
        det = X * (dyw * tv - tu * ey) - Y * (dxw * tv - tu * ex) + t * (dxw * ey - dyw * ex)
        return area, r**4 * det

    # -- graphs over the difference body ---------------------------------
    @cached_property
    def difference_body(self):
        return difference_body(self.body)

    @cached_property
    def _seeds(self):
        P = self.period
        us = (np.arange(SEED_GRID) + 0.5) * P / SEED_GRID
        vs = np.arange(SEED_GRID) * P / SEED_GRID
        U, V = np.meshgrid(us, vs, indexing="ij")
        U, V = U.ravel(), V.ravel()
        pts = self._unit_point(U, V)[:, :2]
        return U, V, pts

    def _newton(self, u, v, target, tol=1e-12, max_iter=50):
        P = self.period
        ch = self.chart

        def resid(u, v):
            gw = ch(u + v)[0]
            gv = ch(v)[0]
            return gw - gv - target

        F = resid(u, v)
        fn = np.hypot(F[..., 0], F[..., 1])
        for _ in range(max_iter):
            active = fn > tol
            if not np.any(active):
                break
            _, dgw, _ = ch(u + v)
            _, dgv, _ = ch(v)
            c1 = dgw
            c2 = dgw - dgv
            det = c1[..., 0] * c2[..., 1] - c1[..., 1] * c2[..., 0]
            with np.errstate(divide="ignore", invalid="ignore"):
                du = (F[..., 0] * c2[..., 1] - F[..., 1] * c2[..., 0]) / det
                dv = (c1[..., 0] * F[..., 1] - c1[..., 1] * F[..., 0]) / det
            bad = ~np.isfinite(du) | ~np.isfinite(dv)
            du, dv = np.where(bad, 0.0, du), np.where(bad, 0.0, dv)
            # cap the step so the periodic residual cannot be reduced by a wild jump
            lam = np.minimum(1.0, 0.25 * P / np.maximum(np.abs(du) + np.abs(dv), 1e-300))
            accepted = np.zeros(u.shape, bool)
            un, vn, fnew = u.copy(), v.copy(), fn.copy()
            for _ in range(12):
                ut = np.clip(u - lam * du, 1e-14 * P, P * (1 - 1e-14))
                vt = v - lam * dv
                Ft = resid(ut, vt)
                ft = np.hypot(Ft[..., 0], Ft[..., 1])
                ok = active & ~accepted & (ft < fn)
                un = np.where(ok, ut, un)
                vn = np.where(ok, vt, vn)
                fnew = np.where(ok, ft, fnew)
                accepted |= ok
                if np.all(accepted | ~active):
                    break
                lam = np.where(accepted, lam, 0.5 * lam)
            stalled = active & ~accepted
            u, v = un, vn
            F = resid(u, v)
            fn = np.hypot(F[..., 0], F[..., 1])
            if np.all(stalled | (fn <= tol)):
                break
        return u, v, fn

    def graph_solve(self, x, n_seeds=16, tol=1e-12):
        """Both sphere points over planar x (scale r).  Returns (u1, v1, u2, v2, g1, g2),
        index 1 for the upper graph."""
        x = np.asarray(x, float)
        shape = x.shape[:-1]
        target = (x / self.r).reshape(-1, 2)
        m = target.shape[0]
        P = self.period
        U, V, pts = self._seeds
        out = np.full((6, m), np.nan)
        at_pole = np.hypot(target[:, 0], target[:, 1]) == 0
        out[:, at_pole] = np.array([[P], [0.0], [0.0], [0.0], [2.0 * self.body.area], [0.0]])
        idx = np.nonzero(~at_pole)[0]
        scale_tol = tol * (1.0 + np.hypot(target[:, 0], target[:, 1]))
        for start in range(0, idx.size, 2048):
            sel = idx[start:start + 2048]
            tg = target[sel]
            d2 = np.sum((tg[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
            best = np.argpartition(d2, n_seeds, axis=1)[:, :n_seeds]
            u0, v0 = U[best], V[best]
            # near-pole seeds: the chord x is almost tangent to the boundary at v
            ch = self.chart
            jx = np.stack([-tg[:, 1], tg[:, 0]], -1)
            vs = ch.param_of_normal(jx)
            vn = ch.param_of_normal(-jx)
            rs = np.hypot(tg[:, 0], tg[:, 1])
            us = np.clip(rs / ch.speed(vs), 1e-12 * P, 0.5 * P)
            un = np.clip(P - rs / ch.speed(vn), 0.5 * P, P * (1 - 1e-12))
            u0 = np.column_stack([u0, us, un])
            v0 = np.column_stack([v0, vs, vn])
            tgt = np.broadcast_to(tg[:, None, :], u0.shape + (2,))
            u, v, fn = self._newton(u0, v0, tgt, tol=scale_tol[sel][:, None])
            conv = fn <= 1e-10 * (1.0 + np.hypot(tg[:, 0], tg[:, 1]))[:, None]
            t = self._unit_point(u, v)[..., 2]
            t_hi = np.where(conv, t, -np.inf)
            t_lo = np.where(conv, t, np.inf)
            i1 = np.argmax(t_hi, axis=1)
            i2 = np.argmin(t_lo, axis=1)
            rows = np.arange(sel.size)
            if not np.all(np.any(conv, axis=1)):
                raise NumericalError("graph Newton solve failed for some targets")
            out[0, sel], out[1, sel] = u[rows, i1], v[rows, i1]
            out[2, sel], out[3, sel] = u[rows, i2], v[rows, i2]
            out[4, sel], out[5, sel] = t[rows, i1], t[rows, i2]
        out[4:] *= self.r**2
        out[1] = np.mod(out[1], P)
        out[3] = np.mod(out[3], P)
        return tuple(o.reshape(shape) for o in out)

    def graph_eval(self, x):
        """(g1, g2): upper and lower heights of the sphere over planar x in r K0."""
        g = self.graph_solve(x)
        return g[4], g[5]

    def graph_gradient(self, u, v):
        """Gradient in (x, y) of the height function through chart point (u, v) (scale r)."""
        pu, pv = self.coordinate_tangents(u, v)
        a, b, c, d = pu[..., 0], pv[..., 0], pu[..., 1], pv[..., 1]
        det = a * d - b * c
        tu, tv = pu[..., 2], pv[..., 2]
        gx = (d * tu - c * tv) / det
        gy = (-b * tu + a * tv) / det
        return self.r * np.stack([gx, gy], -1)

    # -- pole diagnostics ------------------------------------------------
    def pole_diagnostics(self, v0, u_list):
        """Rows (u, h/g, h/g^2 + 1/kappa(v0), <N,T>) in the arc-length chart.

        v0 is a parameter of this sphere's chart; u values are arc lengths.
        """
        arc = self.body.chart("arclength")
        if self.chart is arc:
            sigma0 = float(v0)
        else:
            dg = self.chart(float(v0))[1]
            sigma0 = float(arc.param_of_normal(np.array([-dg[1], dg[0]])))
        sph = WulffSphere(self.body, 1.0, "arclength")
        kappa = float(arc.curvature(sigma0))
        rows = []
        for u in u_list:
            h, g = (float(z) for z in sph._hg(u, sigma0)[:2])
            rows.append((float(u), h / g, h / g**2 + 1.0 / kappa, g / np.hypot(h, g)))
        return np.array(rows)

    # -- mesh and report -------------------------------------------------
    def mesh(self, nu=64, nv=64, cap_poles=True):
        if nu < 8 or nv < 8:
            raise DomainError("mesh resolution must be at least 8")
        P = self.period
        us = P * np.arange(1, nu + 2) / (nu + 2)
        vs = P * np.arange(nv) / nv
        U, V = np.meshgrid(us, vs, indexing="ij")
        verts = self.point(U, V).reshape(-1, 3)
        normals = self.surface_sample(U, V).N.reshape(-1, 3)
        ring = lambda i, j: i * nv + np.mod(j, nv)
        i, j = np.meshgrid(np.arange(nu), np.arange(nv), indexing="ij")
        i, j = i.ravel(), j.ravel()
        a, b, c, d = ring(i, j), ring(i + 1, j), ring(i + 1, j + 1), ring(i, j + 1)
        faces = [np.stack([a, b, c], 1), np.stack([a, c, d], 1)]
        if cap_poles:
            south, north = verts.shape[0], verts.shape[0] + 1
            verts = np.vstack([verts, [0.0, 0.0, 0.0], [0.0, 0.0, self.pole_height]])
            normals = np.vstack([normals, [0.0, 0.0, -1.0], [0.0, 0.0, 1.0]])
            jj = np.arange(nv)
            faces.append(np.stack([np.full(nv, south), ring(0, jj), ring(0, jj + 1)], 1)[:, [0, 2, 1]])
            faces.append(np.stack([np.full(nv, north), ring(nu, jj + 1), ring(nu, jj)], 1)[:, [0, 2, 1]])
        faces = np.concatenate(faces).astype(np.int64)
        bad = ~np.all(np.isfinite(normals), axis=1)
        if np.any(bad):
            normals[bad] = _vertex_normals(verts, faces)[bad]
        return Mesh(verts, faces, normals, cap_poles)

    def report(self, panels=DEFAULT_PANELS):
        A, V = self.area(panels), self.volume(panels)
        return {
            "body": self.body.name,
            "r": self.r,
            "area": A,
            "volume": V,
            "minkowski_residual": (3.0 * A - 4.0 * V / self.r) / A,
            "pole_height": self.pole_height,
            "panels": panels,
        }


def _vertex_normals(verts, faces):
    """Area-weighted face normals accumulated at the vertices."""
    p = verts[faces]
    fn = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    acc = np.zeros_like(verts)
    for k in range(3):
        np.add.at(acc, faces[:, k], fn)
    return acc / np.linalg.norm(acc, axis=1, keepdims=True)


def sphere_point(S: WulffSphere, u, v):
    return S.point(u, v)


def surface_sample(S: WulffSphere, u, v):
    return S.surface_sample(u, v)


def area(S: WulffSphere, panels=DEFAULT_PANELS):
    return S.area(panels)


def volume(S: WulffSphere, panels=DEFAULT_PANELS):
    return S.volume(panels)


def graph_eval(S: WulffSphere, x):
    return S.graph_eval(x)


def pole_diagnostics(S: WulffSphere, v0, u_list):
    return S.pole_diagnostics(v0, u_list)


def mean_curvature_at(S: WulffSphere, u, v):
    return S.mean_curvature_at(u, v)


def mesh(S: WulffSphere, nu=64, nv=64, cap_poles=True):
    return S.mesh(nu, nv, cap_poles)
