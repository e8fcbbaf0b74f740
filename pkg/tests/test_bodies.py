import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heiswulff.bodies import (Disk, Ellipse, FourierBody, LpBody, SmoothedTriangle, difference_body,
                              load_fourier, make_builtin, parse_body)
from heiswulff.errors import DataError, DomainError
from heiswulff.selftest import brute_support

from conftest import FOURIER_COEFFS, builtin_bodies

ALL = builtin_bodies() + [FourierBody(FOURIER_COEFFS), difference_body(Ellipse(1.0, 1.5))]
IDS = [K.name for K in ALL]

# polar-area quadrature of 1 / (2 N(e)^2) with scipy quad, frozen
LP_AREA = {1.5: 2.737853623918903, 3.0: 3.533277500570898}
TRIANGLE_AREA = {2.0: 4.452749853920205, 4.0: 4.943402349681724}

directions = st.floats(0, 2 * np.pi).map(lambda t: np.array([np.cos(t), np.sin(t)]))
scales = st.floats(0.01, 100)


def _shoelace(K, n=200_000):
    x = K.boundary(np.linspace(0, K.native_chart.period, n, endpoint=False))[0]
    return 0.5 * abs(np.sum(x[:, 0] * np.roll(x[:, 1], -1) - np.roll(x[:, 0], -1) * x[:, 1]))


@pytest.mark.parametrize("K", ALL, ids=IDS)
def test_support_matches_brute_force_maximum(K, rng):
    th = rng.uniform(0, 2 * np.pi, 200)
    u = np.stack([np.cos(th), np.sin(th)], -1)
    assert np.max(np.abs(brute_support(K, u) - K.support(u))) < 1e-9


@pytest.mark.parametrize("K", ALL, ids=IDS)
def test_pi_lands_on_boundary_and_attains_support(K, rng):
    u = rng.normal(size=(300, 2))
    p = K.pi_map(u)
    assert np.max(np.abs(K.gauge(p) - 1.0)) < 1e-9
    assert np.allclose(np.sum(p * u, -1), K.support(u), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("K", ALL, ids=IDS)
def test_boundary_chart_has_unit_gauge(K):
    x = K.boundary(np.linspace(0, K.native_chart.period, 997))[0]
    assert np.max(np.abs(K.gauge(x) - 1.0)) < 1e-9


@pytest.mark.parametrize("K", ALL, ids=IDS)
def test_pi_jacobian_matches_finite_differences(K, rng):
    th = rng.uniform(0, 2 * np.pi, 40)
    # stay away from the nonsmooth directions of lp and the triangle
    u = np.stack([np.cos(th), np.sin(th)], -1) * 1.3
    J = K.pi_jacobian(u)
    eps = 1e-6
    for j in range(2):
        e = np.zeros(2)
        e[j] = eps
        fd = (K.pi_map(u + e) - K.pi_map(u - e)) / (2 * eps)
        err = np.abs(fd - J[..., :, j])
        assert np.median(err) < 1e-6


@pytest.mark.parametrize("K", ALL, ids=IDS)
@settings(max_examples=40, deadline=None)
@given(u=directions, lam=scales)
def test_gauge_and_support_are_positively_homogeneous(K, u, lam):
    assert np.isclose(K.gauge(lam * u), lam * K.gauge(u), rtol=1e-12)
    assert np.isclose(K.support(lam * u), lam * K.support(u), rtol=1e-12)


@pytest.mark.parametrize("K", ALL, ids=IDS)
@settings(max_examples=40, deadline=None)
@given(u=directions, w=directions)
def test_support_is_subadditive(K, u, w):
    assert K.support(u + w) <= K.support(u) + K.support(w) + 1e-12


@pytest.mark.parametrize("K", ALL, ids=IDS)
def test_area_matches_shoelace(K):
    assert abs(K.area / _shoelace(K) - 1.0) < 1e-8


def test_closed_form_areas():
    assert abs(Disk().area - np.pi) < 1e-13
    assert abs(Ellipse(1.0, 1.5).area - 1.5 * np.pi) < 1e-13
    for ell, area in LP_AREA.items():
        assert abs(LpBody(ell).area - area) < 1e-9
    for ell, area in TRIANGLE_AREA.items():
        assert abs(SmoothedTriangle(ell).area - area) < 1e-9


def test_difference_body_of_disk_is_twice_the_disk():
    th = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    u = np.stack([np.cos(th), np.sin(th)], -1)
    assert np.max(np.abs(difference_body(Disk()).support(u) - 2.0)) < 1e-14


def test_difference_body_is_centrally_symmetric():
    K0 = difference_body(FourierBody(FOURIER_COEFFS))
    u = np.random.default_rng(1).normal(size=(50, 2))
    assert np.allclose(K0.support(u), K0.support(-u), rtol=1e-14)
    assert np.allclose(K0.gauge(u), K0.gauge(-u), rtol=1e-12)


def test_lp_two_is_the_disk():
    u = np.random.default_rng(2).normal(size=(50, 2))
    assert np.allclose(LpBody(2.0).support(u), Disk().support(u), rtol=1e-14)
    assert abs(LpBody(2.0).area - np.pi) < 1e-12


def test_symmetry_flags():
    assert Disk().centrally_symmetric and LpBody(3).centrally_symmetric
    assert not SmoothedTriangle(2).centrally_symmetric
    assert not FourierBody(FOURIER_COEFFS).centrally_symmetric
    assert FourierBody([1.0, 0.0, 0.0, 0.1, 0.0]).centrally_symmetric


@pytest.mark.parametrize("coeffs", [[], [1.0, 0.0], [0.5, 1.0, 0.0], [1.0, 0.0, 0.0, 0.5, 0.0], [np.nan]])
def test_fourier_rejects_bad_coefficients(coeffs):
    with pytest.raises(DataError):
        FourierBody(coeffs)


def test_invalid_parameters_are_rejected():
    with pytest.raises(DomainError):
        LpBody(1.0)
    with pytest.raises(DomainError):
        Ellipse(1.0, -1.0)
    with pytest.raises(DomainError):
        SmoothedTriangle(0.5)
    with pytest.raises(DomainError):
        Disk().pi_map([0.0, 0.0])


def test_parse_body_grammar(tmp_path):
    assert parse_body("disk").name == "disk"
    assert isinstance(parse_body("ellipse:1,1.5"), Ellipse)
    assert parse_body("lp:3").ell == 3.0
    assert parse_body("tri:4").ell == 4.0
    cfg = tmp_path / "body.toml"
    cfg.write_text("fourier_h = [1.0, 0.0, 0.0, 0.1, 0.0]\n")
    assert isinstance(parse_body(f"fourier:{cfg}"), FourierBody)
    for bad in ("cube", "lp:x", "ellipse:1", "disk:2"):
        with pytest.raises(DomainError):
            parse_body(bad)


def test_load_fourier_errors(tmp_path):
    with pytest.raises(DataError):
        load_fourier(tmp_path / "missing.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("radius = 1\n")
    with pytest.raises(DataError):
        load_fourier(bad)


def test_shipped_fourier_config_loads():
    from pathlib import Path
    K = load_fourier(Path(__file__).parents[1] / "configs" / "fourier_sample.toml")
    assert np.allclose([K.c0, *K.ak, *K.bk], [1.0, 0.0, 0.1, 0.0, 0.0, 0.0, 0.05])


def test_make_builtin_names():
    assert make_builtin("lp", 1.5).name == "lp:1.5"
    assert make_builtin("ellipse", 1, 1.5).name == "ellipse:1,1.5"
