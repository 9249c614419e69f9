import math

import numpy as np
import pytest

from fraclap.fields import (
    BallFunction, DegenerateProfileError, boundary_quotient, eval_field, eval_profile, l2_norm_sq,
    nodal_radius, outer_sign, pohozaev_residual,
)
from fraclap.radial import RadialEigenpair, SpectralParams, rayleigh_quotient, solve_radial
from fraclap.specfun import jacobi_at_one


@pytest.fixture(scope="module")
def disk_pairs():
    return solve_radial(SpectralParams(2, 0.5, 60), 5)


def test_profile_vanishes_outside_and_matches_basis():
    p = SpectralParams(3, 0.3, 8)
    c = np.zeros(8)
    c[0] = 1.0
    pair = RadialEigenpair(p, 1, 1.0, c)
    r = np.array([0.0, 0.5, 0.99, 1.0, 1.5])
    np.testing.assert_allclose(eval_profile(pair, r), [1.0, 0.75 ** 0.3, (1 - 0.99 ** 2) ** 0.3, 0, 0])
    assert isinstance(eval_profile(pair, 0.5), float)


def test_boundary_quotient_series_is_trace():
    p = SpectralParams(2, 0.4, 6)
    c = np.array([1.0, -0.5, 0.25, 0, 0, 0.1])
    pair = RadialEigenpair(p, 1, 1.0, c)
    q = boundary_quotient(pair)
    assert q == pytest.approx(2 ** 0.4 * sum(c * jacobi_at_one(np.arange(6), 0.4)))
    # the profile divided by (1 - r)^s tends to q
    for delta in (1e-6, 1e-8):
        r = 1 - delta
        assert eval_profile(pair, r) / delta ** 0.4 == pytest.approx(q, rel=5e-5)


def test_series_and_green_quotients_agree(disk_pairs):
    for pair in disk_pairs[:3]:
        assert boundary_quotient(pair, "green") == pytest.approx(boundary_quotient(pair, "series"), rel=1e-2)
    with pytest.raises(ValueError):
        boundary_quotient(disk_pairs[0], "bogus")


def test_l2_norm_unit(disk_pairs):
    for pair in disk_pairs:
        assert l2_norm_sq(pair) == pytest.approx(1.0, rel=1e-12)


def test_l2_norm_against_polar_quadrature(disk_pairs):
    pair = disk_pairs[1]
    t, w = np.polynomial.legendre.leggauss(400)
    # r = 1 - (1 - tau)^4 resolves the (1 - r)^s edge
    tau = 0.5 * (t + 1)
    r = 1 - (1 - tau) ** 4
    jac = 0.5 * w * 4 * (1 - tau) ** 3
    val = 2 * math.pi * np.sum(jac * r * eval_profile(pair, r) ** 2)
    assert val == pytest.approx(1.0, rel=1e-6)


def test_nodal_radii_increase_and_are_roots(disk_pairs):
    radii = [nodal_radius(p) for p in disk_pairs]
    assert radii[0] == 0.0
    assert np.all(np.diff(radii) > 0) and radii[-1] < 1
    for pair, r in zip(disk_pairs[1:], radii[1:]):
        sign = outer_sign(pair)
        assert abs(eval_profile(pair, r)) < 1e-9
        assert sign * eval_profile(pair, r + 1e-6) > 0 > sign * eval_profile(pair, r - 1e-6)
        grid = np.linspace(r + 1e-6, 0.999999, 2000)
        assert np.all(sign * eval_profile(pair, grid) > 0)


def test_degenerate_profile_raises():
    pair = RadialEigenpair(SpectralParams(2, 0.5, 6), 1, 1.0, np.zeros(6))
    with pytest.raises(DegenerateProfileError):
        outer_sign(pair)


def test_ball_function_kinds():
    rad = solve_radial(SpectralParams(2, 0.5), 1)[0]
    f = BallFunction("radial", rad)
    x = np.array([[0.3, 0.4], [0.0, 0.0], [1.0, 1.0]])
    np.testing.assert_allclose(f(x), eval_profile(rad, np.array([0.5, 0.0, math.sqrt(2)])))
    up = solve_radial(SpectralParams(4, 0.5), 1)[0]
    g = BallFunction("antisymmetric_axis1", up, scale=2.0)
    assert g.dim == 2
    np.testing.assert_allclose(g(x), 2 * x[:, 0] * eval_profile(up, np.hypot(x[:, 0], x[:, 1])))
    np.testing.assert_allclose(g(x * [-1, 1]), -g(x))
    with pytest.raises(ValueError):
        eval_field(f, np.zeros((2, 3)))
    with pytest.raises(ValueError):
        BallFunction("antisymmetric_axis1", rad)
    with pytest.raises(ValueError):
        BallFunction("spherical", rad)


@pytest.mark.parametrize("d,s", [(2, 0.5), (3, 0.5), (2, 0.75), (3, 0.75)])
def test_pohozaev_holds_for_eigenpairs(d, s):
    for pair in solve_radial(SpectralParams(d, s, 60), 5):
        assert pohozaev_residual(pair) < 1e-6


def test_pohozaev_rejects_non_eigenfunctions():
    params = SpectralParams(2, 0.5, 60)
    rng = np.random.default_rng(11)
    for _ in range(5):
        c = rng.standard_normal(60) * np.exp(-np.arange(60) / 8.0)
        fake = RadialEigenpair(params, 1, rayleigh_quotient(params, c), c)
        assert pohozaev_residual(fake) > 1e-2
