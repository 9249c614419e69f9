"""
Pointwise eigenfunctions on the ball and the checks built on their profiles.

Only the angular degrees that matter for the second eigenvalue are
constructed: radial functions phi(|x|) and the odd field x_1 phi(|x|)
whose radial part lives in effective dimension N + 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .radial import RadialEigenpair, assemble, sphere_area
from .specfun import gamma, gauss_jacobi, jacobi_at_one, jacobi_series

__all__ = [
    "BallFunction",
    "DegenerateProfileError",
    "eval_profile",
    "eval_field",
    "outer_sign",
    "nodal_radius",
    "boundary_quotient",
    "pohozaev_residual",
    "l2_norm_sq",
    "NODAL_GRID",
]

NODAL_GRID = 2048
NODAL_XTOL = 1e-12
SHELL_FLOOR = 1e-10


class DegenerateProfileError(ValueError):
    """Profile vanishes on the outer shell, so no definite boundary sign exists."""


def eval_profile(pair, r):
    """(1 - r^2)^s sum_j c_j P_j^{(s, d/2-1)}(2 r^2 - 1) inside the ball, 0 outside."""
    r = np.asarray(r, dtype=float)
    s, beta = pair.params.order, pair.params.beta
    inside = r < 1.0
    out = np.zeros_like(r)
    if np.any(inside):
        ri = r[inside] if r.ndim else r
        r2 = ri * ri
        vals = (1.0 - r2) ** s * jacobi_series(pair.coeffs, s, beta, 2.0 * r2 - 1.0)
        if r.ndim:
            out[inside] = vals
        else:
            out = vals
    return float(out) if r.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class BallFunction:
    """An eigenfunction of the N-ball evaluated pointwise.

    kind="radial" is phi(|x|) with N equal to the pair's effective dimension;
    kind="antisymmetric_axis1" is x_1 phi(|x|) with N = effective dimension - 2.
    """

    kind: str
    radial_part: RadialEigenpair
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("radial", "antisymmetric_axis1"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "antisymmetric_axis1" and self.radial_part.dim < 3:
            raise ValueError("x_1 phi(|x|) needs a radial part solved in dimension N + 2 >= 4")

    @property
    def dim(self):
        d = self.radial_part.dim
        return d if self.kind == "radial" else d - 2

    def __call__(self, x):
        return eval_field(self, x)


def eval_field(f, x):
    """Evaluate a BallFunction at points x of shape (..., N)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != f.dim:
        raise ValueError(f"expected points in R^{f.dim}, got trailing shape {x.shape[-1]}")
    r = np.sqrt(np.einsum("...i,...i->...", x, x))
    vals = eval_profile(f.radial_part, r)
    if f.kind == "antisymmetric_axis1":
        vals = x[..., 0] * vals
    return f.scale * vals


def _grid_values(pair):
    grid = np.arange(NODAL_GRID) / NODAL_GRID
    return grid, eval_profile(pair, grid)


def outer_sign(pair):
    """Sign of the profile on a thin shell next to the unit sphere."""
    grid, vals = _grid_values(pair)
    shell = vals[grid >= 0.9]
    if np.max(np.abs(shell)) < SHELL_FLOOR:
        raise DegenerateProfileError("profile is numerically zero on r in [0.9, 1)")
    return 1.0 if shell[-1] > 0 else -1.0


def nodal_radius(pair):
    """Infimum of rho such that the sign-normalized profile is >= 0 on [rho, 1).

    Grid scan for the outermost negative value followed by root bracketing.
    Returns 0 for a profile without sign change.
    """
    sign = outer_sign(pair)
    grid, vals = _grid_values(pair)
    vals = sign * vals
    neg = np.nonzero(vals < 0)[0]
    if len(neg) == 0:
        return 0.0
    k = neg[-1]
    lo, hi = grid[k], grid[k + 1]
    if vals[k + 1] == 0.0:
        return float(hi)
    return float(brentq(lambda r: sign * eval_profile(pair, r), lo, hi, xtol=NODAL_XTOL, rtol=4 * np.finfo(float).eps))


def boundary_quotient(pair, method="series"):
    """Limit of profile(r) / (1 - r)^s as r -> 1.

    method="series" evaluates the discrete profile's trace,
    2^s sum_j c_j P_j(1).  method="green" recovers the trace from the
    eigen-equation through the Green function of the ball,

        q = lambda kappa 2^s / s * int_B (1 - |y|^2)^{s-1} u(y) dy,

    kappa = Gamma(d/2) / (4^s pi^{d/2} Gamma(s)^2); that functional is
    smooth in u and converges at the eigenvalue rate, unlike the trace.
    """
    s, beta = pair.params.order, pair.params.beta
    c = np.asarray(pair.coeffs)
    if method == "series":
        return 2.0 ** s * float(np.sum(c * jacobi_at_one(np.arange(len(c)), s)))
    if method != "green":
        raise ValueError(f"unknown method {method!r}")
    d = pair.dim
    rule = gauss_jacobi(len(c) + 8, 2.0 * s - 1.0, beta)
    moments = 2.0 ** (1.0 - 2.0 * s) * jacobi_series(c, s, beta, rule.nodes) @ rule.weights
    integral = sphere_area(d) * 2.0 ** (-0.5 * d - 1.0) * moments
    kappa = gamma(0.5 * d) / (4.0 ** s * math.pi ** (0.5 * d) * gamma(s) ** 2)
    return float(pair.eigenvalue * kappa * 2.0 ** s / s * integral)


def l2_norm_sq(pair):
    """Squared L2 norm of the profile over the d-dimensional unit ball."""
    system = assemble(pair.params)
    c = np.asarray(pair.coeffs)
    return float(system.shared_constant * c @ system.mass @ c)


def pohozaev_residual(pair, method="green"):
    """Relative defect in s lambda ||u||^2 = Gamma(1+s)^2 / 2 * |S^{d-1}| q^2.

    The identity holds for radial eigenfunctions on the unit ball; q is the
    boundary quotient computed with `method`.
    """
    s, lam = pair.params.order, pair.eigenvalue
    q = boundary_quotient(pair, method)
    lhs = s * lam * l2_norm_sq(pair)
    rhs = 0.5 * gamma(1.0 + s) ** 2 * sphere_area(pair.dim) * q * q
    return float(abs(lhs - rhs) / (s * lam))
