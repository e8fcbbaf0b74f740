"""Quick invariant suites, one per module, used by the --selftest flags."""
from typing import NamedTuple

import numpy as np

from . import heis
from .bodies import Disk, Ellipse, LpBody, SmoothedTriangle, difference_body
from .cmc import CMCProblem, closed_form_cmc, compare, integrate
from .isoperimetry import DifferenceBodyGrid, calibration_check, competitor_suite, profile_f
from .lifting import lift_translated_loop
from .sphere import WulffSphere


class Check(NamedTuple):
    name: str
    ok: bool
    value: float
    tol: float


def _check(name, value, tol):
    value = float(value)
    return Check(name, bool(np.isfinite(value) and value <= tol), value, tol)


def quick_bodies():
    return [Disk(), Ellipse(1.0, 1.5), LpBody(1.5), LpBody(3.0), SmoothedTriangle(2.0)]


def heis_suite(rng):
    p, q, w = (rng.normal(size=(64, 3)) for _ in range(3))
    assoc = heis.group_mul(heis.group_mul(p, q), w) - heis.group_mul(p, heis.group_mul(q, w))
    inv = heis.group_mul(p, heis.inverse(p))
    lam = 1.7
    hom = heis.dilate(lam, heis.group_mul(p, q)) - heis.group_mul(heis.dilate(lam, p), heis.dilate(lam, q))
    v = rng.normal(size=(64, 3))
    rt = heis.from_frame(p, heis.to_frame(p, v)) - v
    return [
        _check("heis.associativity", np.max(np.abs(assoc)), 1e-12),
        _check("heis.inverse", np.max(np.abs(inv)), 1e-12),
        _check("heis.dilation_homomorphism", np.max(np.abs(hom)), 1e-12),
        _check("heis.frame_roundtrip", np.max(np.abs(rt)), 1e-12),
    ]


def brute_support(K, u, n=1024, zooms=4):
    """max <x, u> over boundary samples, refined by zooming in around the argmax."""
    P = K.native_chart.period
    s = np.linspace(0, P, n, endpoint=False)
    best = np.argmax(u @ K.boundary(s)[0].T, axis=1)
    center, half = s[best], P / n
    for _ in range(zooms):
        loc = center[:, None] + np.linspace(-half, half, 65)[None, :]
        vals = np.einsum("nkj,nj->nk", K.boundary(loc.ravel())[0].reshape(loc.shape + (2,)), u)
        center, half = loc[np.arange(len(u)), np.argmax(vals, axis=1)], half / 32
    return np.max(vals, axis=1)


def bodies_suite(rng):
    out = []
    th = rng.uniform(0, 2 * np.pi, 256)
    u = np.stack([np.cos(th), np.sin(th)], -1)
    for K in quick_bodies():
        out.append(_check(f"bodies.duality[{K.name}]", np.max(np.abs(brute_support(K, u) - K.support(u))), 1e-9))
        out.append(_check(f"bodies.pi_on_boundary[{K.name}]", np.max(np.abs(K.gauge(K.pi_map(u)) - 1)), 1e-9))
    K0 = difference_body(Disk())
    out.append(_check("bodies.difference_of_disk", np.max(np.abs(K0.support(u) - 2.0)), 1e-14))
    return out


def lifting_suite(rng):
    out = []
    for K in quick_bodies():
        P = K.native_chart.period
        err = 0.0
        for v in rng.uniform(0, P, 4):
            end = lift_translated_loop(K, v).end
            err = max(err, np.max(np.abs(end - [0.0, 0.0, 2 * K.area])))
        out.append(_check(f"lifting.closure[{K.name}]", err, 1e-8))
    return out


def sphere_suite(rng, panels=256):
    out = []
    for K in quick_bodies():
        S = WulffSphere(K)
        out.append(_check(f"sphere.minkowski[{K.name}]", abs(S.report(panels)["minkowski_residual"]), 1e-6))
    for K in quick_bodies()[:4]:
        S = WulffSphere(K)
        u = rng.uniform(0.05, 0.95, 64) * S.period
        v = rng.uniform(0, S.period, 64)
        out.append(_check(f"sphere.mean_curvature[{K.name}]", np.max(np.abs(S.mean_curvature_at(u, v) - 1)), 1e-7))
    S = WulffSphere(Ellipse(1.0, 1.5))
    x = 0.8 * rng.uniform(-1, 1, (16, 2))
    g1, g2 = S.graph_eval(x)
    out.append(_check("sphere.graph_symmetry[ellipse]", np.max(np.abs(g1 + g2 - S.pole_height)), 1e-8))
    return out


def cmc_suite(rng):
    out = []
    P = CMCProblem(Disk(), 1.0)
    c = integrate(P, n_steps=4000)
    exact = np.column_stack([np.sin(c.s), np.cos(c.s) - 1])
    out.append(_check("cmc.disk_exact", np.max(np.abs(c.points[:, :2] - exact)), 1e-8))
    for K in (Ellipse(1.0, 1.5),):
        th = rng.uniform(0, 2 * np.pi)
        P = CMCProblem(K, 1.0, tuple(rng.normal(size=2)), (np.cos(th), np.sin(th)))
        c = integrate(P, n_steps=4000)
        out.append(_check(f"cmc.classification[{K.name}]", compare(c, closed_form_cmc(P).curve(c.s)), 1e-6))
    return out


def isoperimetry_suite(rng):
    K = Disk()
    S = WulffSphere(K)
    unit = (S.area(), S.volume())
    prof = profile_f(K, 16 * unit[1], unit=unit)
    out = [_check("isoperimetry.profile_rho0", abs(prof.rho0 - 2.0), 1e-12)]
    grid = DifferenceBodyGrid(K, 1.0, n_sigma=6, n_s=16)
    margins = {C.name: calibration_check(C, grid, unit=unit)[2] for C in competitor_suite(K)}
    out.append(_check("isoperimetry.ball_margin", abs(margins.pop("ball")), 1e-4))
    out.append(_check("isoperimetry.competitor_margins", -min(margins.values()), 1e-6))
    return out


SUITES = {
    "heis": heis_suite,
    "body": bodies_suite,
    "lifting": lifting_suite,
    "sphere": sphere_suite,
    "ode": cmc_suite,
    "isoperim": isoperimetry_suite,
}

COMMAND_SUITES = {
    "body": ("heis", "body"),
    "sphere": ("lifting", "sphere"),
    "ode": ("ode",),
    "isoperim": ("isoperim",),
    "converge": ("body",),
    "check": tuple(SUITES),
}


def run(names, seed=0):
    rng = np.random.default_rng(seed)
    checks = []
    for name in names:
        checks.extend(SUITES[name](rng))
    return checks
