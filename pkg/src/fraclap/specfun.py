"""
Special-function kernels: Gamma, Jacobi polynomials, Gauss-Jacobi rules.

All closed-form constants used by the Galerkin solver (the fractional
multipliers, Jacobi norms, the Riesz constant) reduce to Gamma ratios, so
Gamma is implemented here with a Lanczos sum rather than taken on faith.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "QuadratureRule",
    "gamma",
    "log_gamma",
    "jacobi_eval",
    "jacobi_table",
    "jacobi_series",
    "jacobi_norm",
    "jacobi_at_one",
    "jacobi_weight_integral",
    "gauss_jacobi",
]

# Lanczos approximation, Godfrey's g = 671/128 with 14 terms.
_LANCZOS_G = 671.0 / 128.0
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEF = np.array([
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
])
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _lanczos_sum(x):
    acc = np.full_like(x, _LANCZOS_C0)
    for j, c in enumerate(_LANCZOS_COEF):
        acc = acc + c / (x + (j + 1))
    return acc


def _check_positive(x):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x <= 0):
        raise ValueError("gamma: argument must be finite and > 0")
    return x


def gamma(x):
    """Gamma function for positive real arguments (scalar or array).

    Lanczos sum for x >= 1/2, reflection formula below. The power
    t**(x + 1/2) is split in two halves so that arguments up to ~171 do
    not overflow before the exponential damping is applied.
    """
    x = _check_positive(x)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)

    big = x >= 0.5
    if np.any(big):
        xb = x[big]
        t = xb + _LANCZOS_G
        half = np.power(t, 0.5 * (xb + 0.5))
        out[big] = half * (half * np.exp(-t)) * (_SQRT_2PI * _lanczos_sum(xb) / xb)
    small = ~big
    if np.any(small):
        xs = x[small]
        out[small] = math.pi / (np.sin(math.pi * xs) * gamma(1.0 - xs))

    return float(out[0]) if scalar else out


def log_gamma(x):
    """Natural log of Gamma for positive arguments (scalar or array)."""
    x = _check_positive(x)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)

    big = x >= 0.5
    if np.any(big):
        xb = x[big]
        t = xb + _LANCZOS_G
        out[big] = (xb + 0.5) * np.log(t) - t + np.log(_SQRT_2PI * _lanczos_sum(xb) / xb)
    small = ~big
    if np.any(small):
        # Gamma(x) = Gamma(x + 1) / x keeps everything positive on (0, 1/2)
        xs = x[small]
        out[small] = log_gamma(xs + 1.0) - np.log(xs)

    return float(out[0]) if scalar else out


def _check_ab(alpha, beta):
    if not (alpha > -1 and beta > -1):
        raise ValueError(f"Jacobi parameters must exceed -1, got ({alpha}, {beta})")


def jacobi_eval(n, alpha, beta, t):
    """Evaluate P_n^{(alpha, beta)}(t) by the three-term recurrence.

    `t` may be a scalar or an array; the return matches its shape.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    _check_ab(alpha, beta)
    return jacobi_table(n, alpha, beta, t)[n]


def jacobi_table(n, alpha, beta, t):
    """Values of P_0 .. P_n at `t`, stacked along a new leading axis."""
    t = np.asarray(t, dtype=float)
    out = np.empty((n + 1,) + t.shape)
    out[0] = 1.0
    if n == 0:
        return out
    ab = alpha + beta
    out[1] = 0.5 * (ab + 2.0) * t + 0.5 * (alpha - beta)
    for k in range(2, n + 1):
        c = 2 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c
        out[k] = ((a2 + a3 * t) * out[k - 1] - a4 * out[k - 2]) / a1
    return out


def jacobi_norm(n, alpha, beta):
    r"""Squared weighted L2 norm

    .. math:: h_n = \int_{-1}^1 [P_n^{(\alpha,\beta)}]^2 (1-t)^\alpha (1+t)^\beta dt.
    """
    _check_ab(alpha, beta)
    ab = alpha + beta
    if n == 0:
        # 2n + ab + 1 can vanish when ab = -1; use the weight integral directly
        return jacobi_weight_integral(alpha, beta)
    logv = (
        (ab + 1.0) * math.log(2.0)
        - math.log(2 * n + ab + 1.0)
        + log_gamma(n + alpha + 1.0)
        + log_gamma(n + beta + 1.0)
        - log_gamma(n + ab + 1.0)
        - log_gamma(n + 1.0)
    )
    return math.exp(logv)


def jacobi_at_one(n, alpha):
    """P_n^{(alpha, beta)}(1) = Gamma(n + alpha + 1) / (Gamma(alpha + 1) n!)."""
    n = np.asarray(n, dtype=float)
    return np.exp(log_gamma(n + alpha + 1.0) - log_gamma(alpha + 1.0) - log_gamma(n + 1.0))


def jacobi_weight_integral(alpha, beta):
    """Integral of (1-t)^alpha (1+t)^beta over [-1, 1]."""
    _check_ab(alpha, beta)
    return math.exp(
        (alpha + beta + 1.0) * math.log(2.0)
        + log_gamma(alpha + 1.0)
        + log_gamma(beta + 1.0)
        - log_gamma(alpha + beta + 2.0)
    )


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Jacobi nodes and weights for the weight (1-t)^alpha (1+t)^beta."""

    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f):
        """Apply the rule to a callable or to precomputed values at the nodes."""
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return np.tensordot(vals, self.weights, axes=([-1], [0]))


def gauss_jacobi(m, alpha, beta):
    """m-point Gauss-Jacobi rule via Golub-Welsch.

    Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix built
    from the orthonormal recurrence; weights are mu_0 times the squared
    first components of the normalized eigenvectors.
    """
    if m < 1:
        raise ValueError("need at least one node")
    _check_ab(alpha, beta)
    ab = alpha + beta
    k = np.arange(m, dtype=float)

    diag = np.empty(m)
    diag[0] = (beta - alpha) / (ab + 2.0)
    if m > 1:
        kk = k[1:]
        c = 2.0 * kk + ab
        diag[1:] = (beta * beta - alpha * alpha) / (c * (c + 2.0))

    off = np.empty(max(m - 1, 0))
    if m > 1:
        off[0] = math.sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) ** 2 * (ab + 3.0)))
        if m > 2:
            kk = k[2:]
            c = 2.0 * kk + ab
            off[1:] = np.sqrt(
                4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab)
                / (c * c * (c + 1.0) * (c - 1.0))
            )

    try:
        nodes, vecs = eigh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ArithmeticError(f"Golub-Welsch eigen-decomposition failed for m={m}") from exc

    weights = jacobi_weight_integral(alpha, beta) * vecs[0, :] ** 2
    order = np.argsort(nodes)
    return QuadratureRule(float(alpha), float(beta), nodes[order], weights[order])


def jacobi_series(coeffs, alpha, beta, t):
    """Sum_j coeffs[j] P_j^{(alpha, beta)}(t), accumulated along the recurrence.

    Only two recurrence levels are kept in memory, so `t` may be large.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    t = np.asarray(t, dtype=float)
    n = len(coeffs)
    if n == 0:
        return np.zeros_like(t)
    p_prev = np.ones_like(t)
    acc = coeffs[0] * p_prev
    if n == 1:
        return acc
    ab = alpha + beta
    p_cur = 0.5 * (ab + 2.0) * t + 0.5 * (alpha - beta)
    acc = acc + coeffs[1] * p_cur
    for k in range(2, n):
        c = 2 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c
        p_prev, p_cur = p_cur, ((a2 + a3 * t) * p_cur - a4 * p_prev) / a1
        acc = acc + coeffs[k] * p_cur
    return acc
