import warnings

import numpy as np
import pytest

from heiswulff.bodies import Disk, Ellipse, FourierBody, LpBody, SmoothedTriangle, difference_body
from heiswulff.errors import DataError, DomainError
from heiswulff.isoperimetry import (CompetitorSet, DifferenceBodyGrid, calibration_check, competitor_perimeter,
                                    competitor_suite, convergence_study, hausdorff_distance, minkowski_residual,
                                    profile_f, scaling_errors, _const)
from heiswulff.sphere import WulffSphere

from conftest import FOURIER_COEFFS, builtin_bodies


@pytest.fixture(scope="module")
def disk_grid():
    return DifferenceBodyGrid(Disk(), 1.0, n_sigma=6, n_s=16)


@pytest.mark.parametrize("K", builtin_bodies(), ids=str)
def test_minkowski_identity(K):
    for r in (1.0, 2.0):
        assert abs(minkowski_residual(K, r)) < 1e-6


def test_scaling_laws():
    rows = scaling_errors(Ellipse(1.0, 1.5))
    assert np.max(np.abs(rows[:, 1:])) < 1e-8


def test_profile_minimizer_and_value():
    K = Disk()
    S = WulffSphere(K)
    A1, V1 = S.area(), S.volume()
    assert abs(profile_f(K, V1).rho0 - 1.0) < 1e-14
    prof = profile_f(K, 16 * V1)
    assert abs(prof.rho0 - 2.0) < 1e-14
    at = profile_f(K, 16 * V1, rho=[prof.rho0])
    assert abs(at.f[0] - A1 * 8) < 1e-9
    assert np.all(prof.second_differences >= -1e-9)
    cell = prof.rho[1] - prof.rho[0]
    assert abs(prof.argmin - prof.rho0) <= cell
    with pytest.raises(DomainError):
        profile_f(K, 0.0)


def test_difference_body_grid_integrates_area(disk_grid):
    assert abs(disk_grid.base_area - 4 * np.pi) < 1e-12
    # wall density: |d(rK0)| with unit dual norm
    assert abs(np.sum(disk_grid.wall_density * disk_grid.boundary_weights) - 4 * np.pi) < 1e-12


def test_ball_competitor_reproduces_the_sphere(disk_grid):
    S = WulffSphere(Disk())
    ball = competitor_suite(Disk())[0]
    perim, vol = ball.evaluate(disk_grid)
    assert abs(perim / S.area() - 1) < 1e-5
    assert abs(vol / S.volume() - 1) < 1e-7


def test_ball_competitor_volume_is_an_independent_volume_oracle():
    K = Ellipse(1.0, 1.5)
    grid = DifferenceBodyGrid(K, 1.0, n_sigma=6, n_s=16)
    perim, vol = competitor_suite(K)[0].evaluate(grid)
    S = WulffSphere(K)
    assert abs(vol / S.volume() - 1) < 1e-7
    assert abs(perim / S.area() - 1) < 1e-5


def test_cylinder_oracle(disk_grid):
    # flat top and bottom over the disk of radius 2: 2 * int |x| dx = 2 * 16 pi / 3; wall 4 pi h
    h = 1.7
    C = CompetitorSet("cyl", _const(h), _const(0.0), lambda grid: np.full_like(grid.boundary_s, h))
    perim, vol = C.evaluate(disk_grid)
    assert abs(perim - (2 * 16 * np.pi / 3 + 4 * np.pi * h)) < 1e-10
    assert abs(vol - 4 * np.pi * h) < 1e-10


def test_slab_adds_the_wall_term(disk_grid):
    S = WulffSphere(Disk())
    suite = {C.name: C for C in competitor_suite(Disk())}
    p_ball = competitor_perimeter(suite["ball"], disk_grid)
    p_slab = competitor_perimeter(suite["ball+slab0.5"], disk_grid)
    assert abs(p_slab - p_ball - 0.5 * 4 * np.pi) < 1e-9


def test_calibration_margins(disk_grid):
    S = WulffSphere(Disk())
    unit = (S.area(), S.volume())
    margins = {C.name: calibration_check(C, disk_grid, unit=unit)[2] for C in competitor_suite(Disk())}
    assert len(margins) == 12
    assert abs(margins.pop("ball")) < 1e-4
    assert min(margins.values()) > 0
    assert margins["ball+shear3"] > 0 and margins["cylinder-tall"] > 0


def test_competitor_validation(disk_grid):
    with pytest.raises(DataError):
        CompetitorSet("upside-down", _const(0.0), _const(1.0)).evaluate(disk_grid)
    with pytest.raises(DataError):
        CompetitorSet("nan", _const(np.nan), _const(0.0)).evaluate(disk_grid)
    with pytest.raises(DataError):
        CompetitorSet("wall", _const(1.0), _const(0.0), lambda g: -np.ones_like(g.boundary_s)).evaluate(disk_grid)


def test_hausdorff_distance():
    S = WulffSphere(Disk())
    m = S.mesh(64, 64)
    assert hausdorff_distance(m, m) == 0.0
    # the north poles sit at 2 pi r^2, so the distance is at least the pole gap
    pole_gap = 2 * np.pi * (1.01**2 - 1)
    d = hausdorff_distance(m, WulffSphere(Disk(), 1.01).mesh(64, 64))
    assert pole_gap - 1e-12 <= d <= pole_gap + 1e-3
    with pytest.raises(DataError):
        hausdorff_distance(np.zeros((0, 3)), m)


@pytest.mark.xfail(strict=True, reason="unattainable: the pole gap 2 pi (1.01^2 - 1) = 0.126 exceeds 0.05")
def test_hausdorff_disk_scales_within_stated_bound():
    d = hausdorff_distance(WulffSphere(Disk()).mesh(64, 64), WulffSphere(Disk(), 1.01).mesh(64, 64))
    assert d <= 0.05


def test_convergence_table_lp_two_row_is_the_disk():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        table = convergence_study("lp", [2.0, 4.0], nu=16, nv=16)
    S = WulffSphere(Disk())
    assert abs(table[0, 1] - S.area()) < 1e-9 and abs(table[0, 2] - S.volume()) < 1e-9
    assert np.isnan(table[0, 3]) and table[1, 3] > 0


def test_convergence_soft_check_warns():
    with pytest.warns(RuntimeWarning):
        convergence_study("lp", [2.0, 2.5, 4.0], nu=8, nv=8)
    with pytest.raises(DomainError):
        convergence_study("cube", [2.0])
