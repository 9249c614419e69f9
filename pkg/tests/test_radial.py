import math

import mpmath
import numpy as np
import pytest
from scipy.linalg import eigh

from fraclap.radial import (
    SpectralParams, assemble, dyda_multiplier, eigenvalues, mass_matrix, rayleigh_quotient,
    refined_size, solve_radial, sphere_area,
)
from fraclap.specfun import jacobi_norm


def test_sphere_area():
    assert sphere_area(1) == pytest.approx(2.0)
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)


@pytest.mark.parametrize("n,d,s", [(0, 1, 0.5), (1, 1, 0.5), (4, 3, 0.25), (20, 6, 0.9), (0, 2, 0.01)])
def test_multiplier_matches_gamma_ratio(n, d, s):
    g = mpmath.gamma
    ref = 2 ** (2 * s) * g(1 + s + n) * g(mpmath.mpf(d) / 2 + s + n) / (g(n + 1) * g(mpmath.mpf(d) / 2 + n))
    assert dyda_multiplier(n, d, s) == pytest.approx(float(ref), rel=1e-13)


def test_multiplier_rejects_bad_input():
    with pytest.raises(ValueError):
        dyda_multiplier(-1, 2, 0.5)
    with pytest.raises(ValueError):
        dyda_multiplier(0, 2, 1.0)


def test_params_validation():
    for bad in [(0, 0.5, 10), (2, 0.0, 10), (2, 1.0, 10), (2, 0.5, 3), (2.5, 0.5, 10)]:
        with pytest.raises(ValueError):
            SpectralParams(*bad)
    p = SpectralParams(3, 0.5)
    assert p.basis_size == 50 and p.beta == 0.5
    assert p.with_size(75).basis_size == 75


def test_refined_size():
    assert refined_size(40) == 60 and refined_size(50) == 75 and refined_size(7) == 11


def test_mass_matrix_against_mpmath():
    p = SpectralParams(3, 0.3, 6)
    B = mass_matrix(p)
    s, beta = p.order, p.beta
    for i, j in [(0, 0), (1, 3), (5, 5), (2, 4)]:
        f = lambda t: mpmath.jacobi(i, s, beta, t) * mpmath.jacobi(j, s, beta, t) * (1 - t) ** (2 * s) * (1 + t) ** beta
        ref = 2 ** (-2 * s) * float(mpmath.quad(f, [-1, 0, 1]))
        assert B[i, j] == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_stiffness_is_multiplier_times_norm():
    p = SpectralParams(2, 0.6, 8)
    sys_ = assemble(p)
    for n in range(8):
        assert sys_.stiffness_diag[n] == pytest.approx(
            dyda_multiplier(n, 2, 0.6) * 2 ** -0.6 * jacobi_norm(n, 0.6, 0.0), rel=1e-14)


def test_generalized_solve_matches_scipy():
    p = SpectralParams(4, 0.35, 30)
    sys_ = assemble(p)
    ref = eigh(np.diag(sys_.stiffness_diag), sys_.mass, eigvals_only=True)
    np.testing.assert_allclose(eigenvalues(p, 10), ref[:10], rtol=1e-12)


def test_interval_ground_state_half_laplacian():
    # published value for (-d^2/dx^2)^{1/2} on (-1, 1): 1.1577738836977...
    lam = solve_radial(SpectralParams(1, 0.5, 60), 1)[0].eigenvalue
    assert lam == pytest.approx(1.1577738836977, abs=1e-11)


def test_one_term_rayleigh_bound():
    # the first trial function alone gives an upper bound on lambda_{d,1}
    for d, s in [(1, 0.5), (2, 0.3), (5, 0.8)]:
        beta = d / 2 - 1
        mass = 2 ** (-2 * s) * float(mpmath.quad(lambda t: (1 - t) ** (2 * s) * (1 + t) ** beta, [-1, 1]))
        bound = dyda_multiplier(0, d, s) * 2 ** -s * jacobi_norm(0, s, beta) / mass
        lam = eigenvalues(SpectralParams(d, s), 1)[0]
        assert 0 < lam < bound


def test_eigenvalues_decrease_with_basis_size():
    prev = None
    for m in (8, 16, 24, 32, 48):
        vals = eigenvalues(SpectralParams(3, 0.4, m), 4)
        if prev is not None:
            assert np.all(vals <= prev * (1 + 1e-13))
        prev = vals


def test_ground_level_increases_with_dimension():
    lam = [eigenvalues(SpectralParams(d, 0.7), 1)[0] for d in range(1, 10)]
    assert np.all(np.diff(lam) > 0)


def test_pairs_normalized_and_consistent():
    p = SpectralParams(2, 0.5, 40)
    pairs = solve_radial(p, 5)
    sys_ = assemble(p)
    for k, pr in enumerate(pairs):
        c = pr.coeffs
        assert sys_.shared_constant * c @ sys_.mass @ c == pytest.approx(1.0, rel=1e-12)
        assert c[np.argmax(np.abs(c))] > 0
        assert rayleigh_quotient(p, c) == pytest.approx(pr.eigenvalue, rel=1e-12)
        assert pr.index_n == k + 1 and pr.dim == 2 and pr.order == 0.5
        assert 0 <= pr.convergence_err < 1e-8
    with pytest.raises(ValueError):
        c.__setitem__(0, 1.0)  # cached arrays are read-only


def test_convergence_err_definition():
    p = SpectralParams(3, 0.25, 20)
    pr = solve_radial(p, 2)[1]
    fine = eigenvalues(p.with_size(30), 2)[1]
    assert pr.convergence_err == pytest.approx(abs(pr.eigenvalue - fine) / fine, rel=1e-10)
    assert math.isnan(solve_radial(p, 1, refine=False)[0].convergence_err)


def test_count_limits():
    p = SpectralParams(2, 0.5, 10)
    with pytest.raises(ValueError):
        solve_radial(p, 0)
    with pytest.raises(ValueError):
        solve_radial(p, 6)
    assert len(solve_radial(p, 5)) == 5
