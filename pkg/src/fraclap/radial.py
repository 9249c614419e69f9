"""
Radial Dirichlet eigenproblem for the fractional Laplacian on the unit ball.

The trial functions are

    psi_j(x) = (1 - |x|^2)_+^s P_j^{(s, d/2-1)}(2|x|^2 - 1),

for which (-Delta)^s psi_j = mu_j P_j^{(s, d/2-1)}(2|x|^2 - 1) inside the
ball.  Testing against psi_m gives a diagonal stiffness matrix and a dense
mass matrix that Gauss-Jacobi quadrature integrates exactly.  With the
substitution t = 2r^2 - 1 every radial integral over B in dimension d
reduces to

    int_B f(|x|) dx = omega_{d-1} 2^{-d/2-1} int_{-1}^1 f (1+t)^{d/2-1} dt,

and the common factor omega_{d-1} 2^{-d/2-1} cancels from the eigenproblem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import cholesky, eigh, solve_triangular

from .specfun import gauss_jacobi, jacobi_norm, jacobi_table, log_gamma

__all__ = [
    "SpectralParams",
    "RadialEigenpair",
    "GalerkinSystem",
    "sphere_area",
    "dyda_multiplier",
    "assemble",
    "solve_radial",
    "refined_size",
    "eigenvalues",
    "rayleigh_quotient",
]

DEFAULT_BASIS_SIZE = 50
EXTRA_NODES = 8


def sphere_area(d):
    """Surface measure omega_{d-1} of the unit sphere in R^d."""
    return 2.0 * math.pi ** (0.5 * d) / math.exp(log_gamma(0.5 * d))


@dataclass(frozen=True)
class SpectralParams:
    effective_dim: int
    order: float
    basis_size: int = DEFAULT_BASIS_SIZE

    def __post_init__(self):
        if int(self.effective_dim) != self.effective_dim or self.effective_dim < 1:
            raise ValueError(f"effective_dim must be an integer >= 1, got {self.effective_dim}")
        if not 0.0 < self.order < 1.0:
            raise ValueError(f"order s must lie in (0, 1), got {self.order}")
        if int(self.basis_size) != self.basis_size or self.basis_size < 4:
            raise ValueError(f"basis_size must be an integer >= 4, got {self.basis_size}")
        object.__setattr__(self, "effective_dim", int(self.effective_dim))
        object.__setattr__(self, "order", float(self.order))
        object.__setattr__(self, "basis_size", int(self.basis_size))

    @property
    def beta(self):
        return 0.5 * self.effective_dim - 1.0

    def with_size(self, m):
        return SpectralParams(self.effective_dim, self.order, m)


@dataclass(frozen=True, eq=False)
class GalerkinSystem:
    stiffness_diag: np.ndarray
    mass: np.ndarray
    shared_constant: float


@dataclass(frozen=True, eq=False)
class RadialEigenpair:
    """One radial eigenvalue with its profile in the weighted Jacobi basis.

    `coeffs` are normalized so that the profile has unit L2 norm over the
    d-dimensional unit ball and its largest-magnitude entry is positive.
    """

    params: SpectralParams
    index_n: int
    eigenvalue: float
    coeffs: np.ndarray = field(repr=False)
    convergence_err: float = float("nan")

    @property
    def dim(self):
        return self.params.effective_dim

    @property
    def order(self):
        return self.params.order


def refined_size(m):
    """Basis size used for the convergence estimate, ceil(1.5 m)."""
    return -(-3 * m // 2)


def dyda_multiplier(n, d, s):
    r"""Polynomial multiplier of (-\Delta)^s on the n-th trial function.

    mu_n = 2^{2s} Gamma(1+s+n) Gamma(d/2+s+n) / (n! Gamma(d/2+n)).
    """
    if n < 0 or d < 1 or not 0.0 < s < 1.0:
        raise ValueError("need n >= 0, d >= 1 and 0 < s < 1")
    logmu = (
        2.0 * s * math.log(2.0)
        + log_gamma(1.0 + s + n)
        + log_gamma(0.5 * d + s + n)
        - log_gamma(n + 1.0)
        - log_gamma(0.5 * d + n)
    )
    return math.exp(logmu)


def mass_matrix(params, nodes=None):
    """J_{mn}(2s) = 2^{-2s} int P_m P_n (1-t)^{2s} (1+t)^beta dt, by Gauss-Jacobi."""
    m, s, beta = params.basis_size, params.order, params.beta
    rule = gauss_jacobi(nodes or m + EXTRA_NODES, 2.0 * s, beta)
    table = jacobi_table(m - 1, s, beta, rule.nodes)
    mass = 2.0 ** (-2.0 * s) * (table * rule.weights) @ table.T
    return 0.5 * (mass + mass.T)


def assemble(params):
    """Build the Galerkin pair (diag(A), B) for the given parameters."""
    m, d, s, beta = params.basis_size, params.effective_dim, params.order, params.beta
    stiff = np.array([
        dyda_multiplier(n, d, s) * 2.0 ** (-s) * jacobi_norm(n, s, beta)
        for n in range(m)
    ])
    shared = sphere_area(d) * 2.0 ** (-0.5 * d - 1.0)
    return GalerkinSystem(stiff, mass_matrix(params), shared)


def _generalized_eigh(stiff_diag, mass):
    # Equilibrate so the stiffness becomes the identity, then reduce with
    # a Cholesky factor of the scaled mass B = L L^T: L^{-1} L^{-T} y = lambda y.
    scale = 1.0 / np.sqrt(stiff_diag)
    bs = mass * np.outer(scale, scale)
    try:
        chol = cholesky(bs, lower=True)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError("mass matrix is not numerically positive definite") from exc
    linv = solve_triangular(chol, np.eye(len(bs)), lower=True)
    # A~ = I, so L^{-1} A~ L^{-T} = L^{-1} L^{-T}
    core = linv @ linv.T
    vals, vecs = eigh(0.5 * (core + core.T))
    vecs = solve_triangular(chol.T, vecs, lower=False)
    vecs = vecs * scale[:, None]
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


@lru_cache(maxsize=256)
def _solve_cached(params):
    system = assemble(params)
    vals, vecs = _generalized_eigh(system.stiffness_diag, system.mass)
    # normalize: shared * c^T B c = 1, largest |c_j| positive
    norms = np.sqrt(system.shared_constant * np.einsum("im,ij,jm->m", vecs, system.mass, vecs))
    vecs = vecs / norms
    idx = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[idx, np.arange(vecs.shape[1])])
    vecs = vecs * signs
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return vals, vecs


def eigenvalues(params, count=None):
    """Ascending Galerkin eigenvalues, without convergence bookkeeping."""
    vals, _ = _solve_cached(params)
    return np.array(vals[:count] if count else vals)


def solve_radial(params, count, refine=True):
    """First `count` radial eigenpairs, ascending.

    Each pair carries the relative change of its eigenvalue when the basis
    grows from M to ceil(1.5 M); pass ``refine=False`` to skip that solve.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if count > params.basis_size // 2:
        raise ValueError(
            f"count={count} exceeds basis_size/2={params.basis_size // 2}; "
            "tail eigenvalues of a Galerkin section are unreliable"
        )
    vals, vecs = _solve_cached(params)
    if refine:
        fine = _solve_cached(params.with_size(refined_size(params.basis_size)))[0]
        errs = np.abs(vals[:count] - fine[:count]) / fine[:count]
    else:
        errs = np.full(count, np.nan)
    return [
        RadialEigenpair(params, k + 1, float(vals[k]), vecs[:, k], float(errs[k]))
        for k in range(count)
    ]


def rayleigh_quotient(params, coeffs):
    """<u, u> / int u^2 for a profile given by basis coefficients."""
    system = assemble(params)
    c = np.asarray(coeffs, dtype=float)
    return float(np.sum(system.stiffness_diag * c * c) / (c @ system.mass @ c))
