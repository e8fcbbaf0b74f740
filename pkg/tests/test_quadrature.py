import numpy as np
from hypothesis import given, settings, strategies as st

from heiswulff.quadrature import CumulativeIntegral, gauss_legendre, integrate, panel_edges


@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=16))
def test_eight_node_rule_is_exact_to_degree_fifteen(coeffs):
    x, w = gauss_legendre(8)
    poly = np.polynomial.Polynomial(coeffs)
    exact = poly.integ()(1.0) - poly.integ()(-1.0)
    assert abs(np.sum(w * poly(x)) - exact) <= 1e-13 * (1 + np.sum(np.abs(coeffs)))


def test_panel_edges_include_periodic_breakpoints():
    e = panel_edges(1.0, 1.0 + 2 * np.pi, 4, breakpoints=(0.5,), period=2 * np.pi)
    assert np.any(np.isclose(e, 0.5 + 2 * np.pi))
    assert e[0] == 1.0 and e[-1] == 1.0 + 2 * np.pi
    assert np.all(np.diff(e) > 0)


def test_kinked_integrand_is_exact_with_breakpoint():
    f = lambda s: np.abs(s - 0.3) ** 3
    exact = (0.3**4 + 0.7**4) / 4
    assert abs(integrate(f, 0.0, 1.0, 4, breakpoints=(0.3,)) - exact) < 1e-15


def test_cumulative_integral_extends_periodically():
    F = CumulativeIntegral(lambda s: 1.0 + np.cos(s), 2 * np.pi, n_panels=32)
    s = np.array([0.0, 1.0, 7.0, -2.0, 20.0])
    assert np.allclose(F(s), s + np.sin(s), atol=1e-13)
    assert abs(F.total - 2 * np.pi) < 1e-13
