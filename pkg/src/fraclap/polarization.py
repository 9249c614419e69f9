"""
Polarization across hyperplanes {x_1 = a} and checks of the inequalities it
satisfies for the nonlocal Dirichlet form

    <u, v> = c_{N,s}/2 * int int (u(x)-u(y))(v(x)-v(y)) / |x-y|^{N+2s} dx dy.

Form values are Monte Carlo estimates.  The sampler draws x uniformly in a
ball B_R containing the supports and y = x + h with |h| drawn from a power
law on (0, 2R]; pairs farther apart than 2R cannot both meet the support,
so their contribution reduces to c T int u v with T = |S^{N-1}| (2R)^{-2s}/(2s)
and is added exactly.  Near pairs are weighted by the balance heuristic over
the symmetry group of the sampled pair, which keeps the estimator unbiased
and lets comparisons between u and its polarization be made sample by
sample with common random numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .fields import BallFunction, nodal_radius, outer_sign
from .radial import RadialEigenpair, SpectralParams, solve_radial, sphere_area
from .specfun import gamma

__all__ = [
    "Hyperplane",
    "FormEstimate",
    "VolumeQuadrature",
    "Polarized",
    "c_ns",
    "reflect",
    "polarize",
    "polarize_eval",
    "case_kernel_gap",
    "axisymmetric_rule",
    "ball_integral",
    "l2_pm_norms",
    "paired_l2_pm_norms",
    "alpha0",
    "gagliardo_form_mc",
    "lemma2_report",
    "support_containment_check",
    "nonradial_witness",
    "lemma1_certificate",
]

MIN_SAMPLES = 10_000
CHUNK = 1 << 16
PROPOSAL_EPS = 0.25
ROUNDING_TOL = 1e-12


def c_ns(N, s):
    """Normalizing constant s 2^{2s} Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s))."""
    return s * 4.0 ** s * gamma(0.5 * N + s) / (math.pi ** (0.5 * N) * gamma(1.0 - s))


@dataclass(frozen=True)
class Hyperplane:
    """The plane {x_1 = offset} with half-spaces Sigma^+ = {x_1 >= a}, Sigma^- = {x_1 <= a}."""

    offset: float

    def __post_init__(self):
        if not math.isfinite(self.offset):
            raise ValueError("hyperplane offset must be finite")

    def reflect(self, x):
        return reflect(x, self.offset)

    def in_plus(self, x):
        return np.asarray(x, dtype=float)[..., 0] >= self.offset

    def fold(self, x):
        """Map points into Sigma^+ by reflecting those in the open lower half-space."""
        x = np.array(x, dtype=float)
        low = x[..., 0] < self.offset
        x[..., 0] = np.where(low, 2.0 * self.offset - x[..., 0], x[..., 0])
        return x


@dataclass(frozen=True)
class FormEstimate:
    value: float
    stderr: float
    samples: int

    def __add__(self, other):
        # only meaningful for estimates built on independent streams
        return FormEstimate(self.value + other.value, math.hypot(self.stderr, other.stderr),
                            min(self.samples, other.samples))

    def as_dict(self):
        return {"value": self.value, "stderr": self.stderr, "samples": self.samples}


def reflect(x, a):
    """x-bar = (2a - x_1, x_2, ..., x_N)."""
    x = np.array(x, dtype=float)
    x[..., 0] = 2.0 * a - x[..., 0]
    return x


@dataclass(frozen=True, eq=False)
class Polarized:
    """P_a u as a callable on points of shape (..., N)."""

    base: object
    a: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        ux = np.asarray(self.base(x), dtype=float)
        ur = np.asarray(self.base(reflect(x, self.a)), dtype=float)
        return np.where(x[..., 0] >= self.a, np.minimum(ux, ur), np.maximum(ux, ur))


def polarize(u, a):
    return Polarized(u, float(a))


def polarize_eval(u, a, x):
    """min{u(x), u(x-bar)} on x_1 >= a, max{u(x), u(x-bar)} on x_1 <= a."""
    return Polarized(u, float(a))(x)


def _plus(t):
    return np.maximum(t, 0.0)


def _gap(ux, uxr, uy, uyr, k_near, k_far, kind):
    # When u(x-bar) - u(x) and u(y-bar) - u(y) have equal signs polarization leaves
    # the four-term sum unchanged.  In the mixed cases the difference factors
    # into products of like-signed terms, which keeps it >= 0 in floating point.
    mixed = (ux - uxr) * (uyr - uy) > 0
    if kind == "plus":
        core = (ux - uxr) * (_plus(uyr) - _plus(uy)) + (_plus(ux) - _plus(uxr)) * (uyr - uy)
    else:
        core = 2.0 * (ux - uxr) * (uyr - uy)
    return np.where(mixed, (k_near - k_far) * core, 0.0)


def case_kernel_gap(ux, uxr, uy, uyr, k_near, k_far, kind="plus"):
    """Pointwise gap of the four-term polarization inequality.

    With F(p, q) = (p - q)(p^+ - q^+) (kind="plus") or (p - q)^2
    (kind="square"), returns

        [F(ux, uy) + F(uxr, uyr)] k_near + [F(uxr, uy) + F(ux, uyr)] k_far

    minus the same expression after x, y in Sigma^+ receive the minima and
    x-bar, y-bar the maxima.  Arrays broadcast.
    """
    if kind not in ("plus", "square"):
        raise ValueError(f"unknown kind {kind!r}")
    k_near = np.asarray(k_near, dtype=float)
    k_far = np.asarray(k_far, dtype=float)
    if np.any(k_far <= 0) or np.any(k_near < k_far):
        raise ValueError("kernels must satisfy k_near >= k_far > 0")
    out = _gap(*(np.asarray(v, dtype=float) for v in (ux, uxr, uy, uyr)), k_near, k_far, kind)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- quadrature


@dataclass(frozen=True, eq=False)
class VolumeQuadrature:
    """Nodes and weights for integrals over a ball in R^N."""

    dim: int
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def integrate(self, f):
        return float(self.weights @ np.asarray(f(self.points), dtype=float))


def _graded_gauss(n, grade):
    # r = 1 - (1 - tau)^grade clusters nodes at r = 1 where profiles behave like (1-r)^s
    tau, w = leggauss(n)
    tau, w = 0.5 * (tau + 1.0), 0.5 * w
    return 1.0 - (1.0 - tau) ** grade, w * grade * (1.0 - tau) ** (grade - 1)


def axisymmetric_rule(N, n_radial=160, n_angular=160, radius=1.0, grade=4, breaks=(0.5 * math.pi,)):
    """Product rule in (r, theta), x_1 = r cos(theta), for functions symmetric about the x_1 axis.

        int_{B_R} f dx = |S^{N-2}| int_0^R int_0^pi f r^{N-1} sin(theta)^{N-2} dtheta dr,

    with |S^0| = 2.  `breaks` split the angular range at known kinks.
    """
    if N < 2:
        raise ValueError("axisymmetric quadrature needs N >= 2")
    r, wr = _graded_gauss(n_radial, grade)
    r, wr = radius * r, radius * wr * (radius * r) ** (N - 1)
    edges = [0.0, *sorted(b for b in breaks if 0 < b < math.pi), math.pi]
    g, wg = leggauss(n_angular)
    th, wt = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        th.append(0.5 * (hi - lo) * g + 0.5 * (hi + lo))
        wt.append(0.5 * (hi - lo) * wg)
    th, wt = np.concatenate(th), np.concatenate(wt)
    wt = wt * np.sin(th) ** (N - 2)
    pts = np.zeros((len(r), len(th), N))
    pts[..., 0] = np.outer(r, np.cos(th))
    pts[..., 1] = np.outer(r, np.sin(th))
    w = (sphere_area(N - 1) if N > 2 else 2.0) * np.outer(wr, wt)
    return VolumeQuadrature(N, pts.reshape(-1, N), w.ravel())


def ball_integral(f, N, quad=None):
    """Integral over the unit ball of an axisymmetric callable."""
    quad = quad or axisymmetric_rule(N)
    return quad.integrate(f)


def l2_pm_norms(f, N, quad=None):
    """(int (f^+)^2, int (f^-)^2) over the unit ball."""
    quad = quad or axisymmetric_rule(N)
    vals = np.asarray(f(quad.points), dtype=float)
    return float(quad.weights @ _plus(vals) ** 2), float(quad.weights @ _plus(-vals) ** 2)


def paired_l2_pm_norms(f, a, N, quad=None):
    """Squared L2 norms of f^+ and f^- over R^N for f supported in B u B-bar.

    Uses int_{R^N} h(f) = int_{B, x_1 <= a} [h(f(x)) + h(f(x-bar))] dx, valid
    because the reflection maps B n {x_1 <= a} onto the part of the support
    in {x_1 >= a}.  The integrand is invariant under polarization, so u and
    P_a u are integrated with the same nodes and paired values.
    """
    quad = quad or _half_ball_rule(N, a)
    p = quad.points
    v0 = np.asarray(f(p), dtype=float)
    v1 = np.asarray(f(reflect(p, a)), dtype=float)
    plus = quad.weights @ (_plus(v0) ** 2 + _plus(v1) ** 2)
    minus = quad.weights @ (_plus(-v0) ** 2 + _plus(-v1) ** 2)
    return float(plus), float(minus)


def _half_ball_rule(N, a, n=240, grade=3):
    # cylindrical coordinates t = x_1 in [-1, min(a, 1)], rho = |x'| in [0, sqrt(1 - t^2)]
    if N < 2:
        raise ValueError("need N >= 2")
    top = min(a, 1.0)
    u, wu = _graded_gauss(n, grade)
    # t runs from top down to -1, clustered at -1
    t = top - (top + 1.0) * u
    wt = (top + 1.0) * wu
    v, wv = _graded_gauss(n, grade)
    rmax = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    rho = np.outer(rmax, v)
    w = np.outer(wt * rmax, wv) * rho ** (N - 2)
    pts = np.zeros((n, n, N))
    pts[..., 0] = t[:, None]
    pts[..., 1] = rho
    area = sphere_area(N - 1) if N > 2 else 2.0
    return VolumeQuadrature(N, pts.reshape(-1, N), area * w.ravel())


def alpha0(v, phi1, N, quad=None):
    """alpha_0 = int v^+ phi_1 / int v^- phi_1 over the unit ball."""
    quad = quad or axisymmetric_rule(N)
    vals = np.asarray(v(quad.points), dtype=float)
    ph = np.asarray(phi1(quad.points), dtype=float)
    vnorm = math.sqrt(quad.weights @ vals ** 2)
    pnorm = math.sqrt(quad.weights @ ph ** 2)
    if vnorm == 0 or pnorm == 0:
        raise ValueError("v and phi1 must be nontrivial")
    ip = quad.weights @ (_plus(vals) * ph) / (vnorm * pnorm)
    im = quad.weights @ (_plus(-vals) * ph) / (vnorm * pnorm)
    if ip <= 1e-12 or im <= 1e-12:
        raise ValueError("v must change sign: both v^+ and v^- need positive mass against phi1")
    return float(ip / im)


# --------------------------------------------------------------- Monte Carlo


def _unit_vectors(rng, n, N):
    z = rng.standard_normal((n, N))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


class _Sampler:
    """x uniform in B_R, h = r w with r ~ p r^{p-1} / rho^p on (0, rho]."""

    def __init__(self, N, s, R):
        self.N, self.s, self.R = N, s, R
        self.rho = 2.0 * R
        self.p = 2.0 * s * (1.0 - PROPOSAL_EPS)
        self.area = sphere_area(N)
        self.volume = self.area * R ** N / N
        self.c = c_ns(N, s)
        # far-field tail of the kernel beyond rho
        self.tail = self.area * self.rho ** (-2.0 * s) / (2.0 * s)

    def draw(self, rng, n):
        N = self.N
        x = _unit_vectors(rng, n, N) * (self.R * rng.random(n) ** (1.0 / N))[:, None]
        r = self.rho * (1.0 - rng.random(n)) ** (1.0 / self.p)
        return x, x + _unit_vectors(rng, n, N) * r[:, None]

    def kernel_over_density(self, d):
        # |h|^{-N-2s} / q_h(h), q_h(h) = p |h|^{p-N} / (|S^{N-1}| rho^p)
        return self.area * self.rho ** self.p / self.p * d ** (-2.0 * self.s - self.p)

    def inside(self, x):
        return np.einsum("ij,ij->i", x, x) <= self.R * self.R


def _chunks(samples, seed):
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    return [(n, np.random.default_rng(sq)) for n, sq in zip(sizes, seqs)]


class _Accumulator:
    def __init__(self):
        self.n, self.total, self.sq = 0, 0.0, 0.0
        self.minimum = math.inf

    def add(self, vals):
        if not np.all(np.isfinite(vals)):
            raise FloatingPointError("nonfinite Monte Carlo sample; check the field evaluator")
        self.n += len(vals)
        self.total += float(np.sum(vals))
        self.sq += float(np.sum(vals * vals))
        self.minimum = min(self.minimum, float(np.min(vals)))

    def estimate(self):
        mean = self.total / self.n
        var = max(self.sq / self.n - mean * mean, 0.0)
        return FormEstimate(mean, math.sqrt(var / max(self.n - 1, 1)), self.n)


def _check_samples(samples):
    if int(samples) != samples or samples < MIN_SAMPLES:
        raise ValueError(f"samples must be an integer >= {MIN_SAMPLES}")
    return int(samples)


def _form_samples(sm, u, v, x, y):
    ux, uy = np.asarray(u(x), dtype=float), np.asarray(u(y), dtype=float)
    vx, vy = np.asarray(v(x), dtype=float), np.asarray(v(y), dtype=float)
    d = np.linalg.norm(x - y, axis=1)
    mult = 1.0 + sm.inside(y)
    near = sm.c * (ux - uy) * (vx - vy) * sm.kernel_over_density(d) * sm.volume / mult
    far = sm.c * sm.tail * sm.volume * ux * vx
    return near + far


def gagliardo_form_mc(u, v, N, s, samples=100_000, seed=0, support_radius=1.0):
    """Unbiased Monte Carlo estimate of <u, v> for u, v supported in B_{support_radius}.

    Pairs (x, y) and (y, x) are both reachable from the proposal, and each
    sample is weighted by the sum of their densities, so the estimate is
    exact in expectation.  Deterministic given `seed`.
    """
    samples = _check_samples(samples)
    sm = _Sampler(N, s, max(2.0, float(support_radius)))
    acc = _Accumulator()
    for n, rng in _chunks(samples, seed):
        x, y = sm.draw(rng, n)
        acc.add(_form_samples(sm, u, v, x, y))
    return acc.estimate()


@dataclass(frozen=True)
class Lemma2Report:
    a: float
    samples: int
    forms: dict
    differences: dict
    min_sample_difference: dict
    passed: bool

    def as_dict(self):
        return {
            "a": self.a,
            "samples": self.samples,
            "forms": {k: e.as_dict() for k, e in self.forms.items()},
            "differences": {k: e.as_dict() for k, e in self.differences.items()},
            "min_sample_difference": dict(self.min_sample_difference),
            "passed": self.passed,
        }


def _orbit_terms(vals, w0, w1, kind):
    ux, uxr, uy, uyr = vals
    if kind == "plus":
        def F(p, q):
            return (p - q) * (_plus(p) - _plus(q))
    else:
        def F(p, q):
            return (p - q) ** 2
    return (F(ux, uy) + F(uxr, uyr)) * w0 + (F(uxr, uy) + F(ux, uyr)) * w1


def lemma2_report(u, a, N, s, samples=100_000, seed=0, support_radius=1.0):
    """Compare <u, u^+>, -<u, u^->, [u]^2 with the same quantities for P_a u.

    Each sample (x, y) is folded into Sigma^+ x Sigma^+ and evaluated on the
    orbit {x, x-bar} x {y, y-bar}; the u-side and P_a u-side values share
    nodes and weights, so every paired difference is an instance of the
    pointwise four-term inequality.  A sample difference counts as negative
    only below -1e-12 times the size of the paired terms.
    """
    samples = _check_samples(samples)
    a = float(a)
    hp = Hyperplane(a)
    sm = _Sampler(N, s, max(2.0, support_radius + 2.0 * abs(a)))
    pu = polarize(u, a)
    names = ("u_uplus", "u_uminus", "seminorm")
    acc_u = {k: _Accumulator() for k in names}
    acc_p = {k: _Accumulator() for k in names}
    acc_d = {k: _Accumulator() for k in names}
    worst = {k: math.inf for k in names}
    to_seminorm = 2.0 / sm.c

    for n, rng in _chunks(samples, seed):
        x, y = sm.draw(rng, n)
        xf, yf = hp.fold(x), hp.fold(y)
        xr, yr = reflect(xf, a), reflect(yf, a)
        d0 = np.linalg.norm(xf - yf, axis=1)
        d1 = np.linalg.norm(xr - yf, axis=1)
        n_in = sm.inside(xf) + 1.0 * sm.inside(xr) + sm.inside(yf) + sm.inside(yr)
        # balance weights over the 8-element orbit; q_h(d1) = 0 beyond rho
        ratio = np.where(d1 <= sm.rho, (d1 / d0) ** (sm.p - N), 0.0)
        base = sm.c * sm.volume / (n_in * (1.0 + ratio)) * sm.kernel_over_density(d0)
        w0 = base
        w1 = np.minimum(base * (d1 / d0) ** (-N - 2.0 * s) * (d1 <= sm.rho), w0)

        vals = [np.asarray(u(p), dtype=float) for p in (xf, xr, yf, yr)]
        pvals = [np.minimum(vals[0], vals[1]), np.maximum(vals[0], vals[1]),
                 np.minimum(vals[2], vals[3]), np.maximum(vals[2], vals[3])]
        # far field, identical for u and P_a u because the pair {u(x), u(x-bar)} is only permuted
        u0, u1 = np.asarray(u(x), dtype=float), np.asarray(u(reflect(x, a)), dtype=float)
        cnt = 1.0 + sm.inside(reflect(x, a))
        far_plus = sm.c * sm.tail * sm.volume * (u0 * _plus(u0) + u1 * _plus(u1)) / cnt
        far_minus = sm.c * sm.tail * sm.volume * (u0 * _plus(-u0) + u1 * _plus(-u1)) / cnt
        far_sq = sm.c * sm.tail * sm.volume * (u0 * u0 + u1 * u1) / cnt

        neg = [-v for v in vals]
        pneg = [-v for v in pvals]
        sides = {
            # -<u, u^-> = <w, w^+> with w = -u
            "u_uplus": (_orbit_terms(vals, w0, w1, "plus") + far_plus,
                        _orbit_terms(pvals, w0, w1, "plus") + far_plus, 1.0),
            "u_uminus": (_orbit_terms(neg, w0, w1, "plus") + far_minus,
                         _orbit_terms(pneg, w0, w1, "plus") + far_minus, 1.0),
            "seminorm": (_orbit_terms(vals, w0, w1, "square") + far_sq,
                         _orbit_terms(pvals, w0, w1, "square") + far_sq, to_seminorm),
        }
        for k, (lhs, rhs, scale) in sides.items():
            lhs, rhs = scale * lhs, scale * rhs
            acc_u[k].add(lhs)
            acc_p[k].add(rhs)
            diff = lhs - rhs
            acc_d[k].add(diff)
            size = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
            worst[k] = min(worst[k], float(np.min(diff / size)))

    forms = {}
    for k in names:
        forms[k] = acc_u[k].estimate()
        forms["p_" + k] = acc_p[k].estimate()
    diffs = {k: acc_d[k].estimate() for k in names}
    passed = all(worst[k] >= -ROUNDING_TOL for k in names)
    return Lemma2Report(a, samples, forms, diffs, worst, passed)


# -------------------------------------------------- support and nonradiality


@dataclass(frozen=True)
class ContainmentReport:
    passed: bool
    a: float
    nodal_radius: float
    trials: int
    shell_trials: int
    witness: tuple | None = None

    def as_dict(self):
        out = {"passed": self.passed, "a": self.a, "nodal_radius": self.nodal_radius,
               "trials": self.trials, "shell_trials": self.shell_trials}
        if self.witness is not None:
            out["witness"] = {"x": list(self.witness[0]), "value": self.witness[1]}
        return out


def _oriented(u):
    # radial field with the sign convention u > 0 next to the unit sphere
    if isinstance(u, RadialEigenpair):
        u = BallFunction("radial", u)
    if not isinstance(u, BallFunction) or u.kind != "radial":
        raise TypeError("expected a radial BallFunction or RadialEigenpair")
    sign = outer_sign(u.radial_part)
    return BallFunction("radial", u.radial_part, scale=abs(u.scale) * sign), nodal_radius(u.radial_part)


def support_containment_check(u, a, trials=10_000, seed=0):
    """Sample exterior points and test P_a u(x) == 0 exactly.

    `u` is a radial eigen-profile, oriented so that it is positive next to
    the boundary; its nodal radius r fixes the admissible range 0 < a < (1-r)/2.
    Half of the points lie in the shell 1 <= |x| <= 1 + 2a.
    """
    f, r = _oriented(u)
    if not 0.0 < a < 0.5 * (1.0 - r):
        raise ValueError(f"a = {a} outside the admissible range (0, {0.5 * (1.0 - r):.6g})")
    if trials < 1:
        raise ValueError("trials must be positive")
    N = f.dim
    rng = np.random.default_rng(seed)
    n_shell = trials // 2
    radii = np.concatenate([
        1.0 + 2.0 * a * rng.random(n_shell),
        1.0 + 2.0 * a + (2.0 - 2.0 * a) * rng.random(trials - n_shell),
    ])
    x = _unit_vectors(rng, trials, N) * radii[:, None]
    vals = polarize_eval(f, a, x)
    bad = np.nonzero(vals != 0.0)[0]
    witness = None if len(bad) == 0 else (tuple(float(t) for t in x[bad[0]]), float(vals[bad[0]]))
    return ContainmentReport(len(bad) == 0, float(a), float(r), int(trials), int(n_shell), witness)


def nonradial_witness(u, a):
    """Values of P_a u at x* = (r + 2a) e_1 and at -x*, r the nodal radius.

    For a sign-changing radial profile the first vanishes and the second is
    positive, so P_a u is not radial.
    """
    f, r = _oriented(u)
    x = np.zeros(f.dim)
    x[0] = r + 2.0 * a
    return float(polarize_eval(f, a, x)), float(polarize_eval(f, a, -x))


# ------------------------------------------------- second-eigenvalue test


@dataclass(frozen=True)
class Lemma1Report:
    lambda2: float
    form_plus: FormEstimate
    form_minus: FormEstimate
    l2_plus: float
    l2_minus: float
    ratio_plus: float
    ratio_minus: float
    ratio_plus_stderr: float
    ratio_minus_stderr: float
    minmax: float
    alpha0: float
    hypothesis_holds: bool

    def as_dict(self):
        out = dict(self.__dict__)
        out["form_plus"] = self.form_plus.as_dict()
        out["form_minus"] = self.form_minus.as_dict()
        return out


def _ground_state(N, s):
    return BallFunction("radial", solve_radial(SpectralParams(N, s), 1, refine=False)[0])


def lemma1_certificate(v, lambda2, N, s, samples=100_000, seed=0, phi1=None, quad=None):
    """Test lambda_2 int (v^+)^2 >= <v, v^+> within three standard errors.

    Also reports the ratios <v, v^+>/int (v^+)^2 and -<v, v^->/int (v^-)^2,
    their maximum (the min-max functional) and alpha_0.
    """
    quad = quad or axisymmetric_rule(N)
    l2p, l2m = l2_pm_norms(v, N, quad)
    if l2p <= 1e-24 or l2m <= 1e-24:
        raise ValueError("v must change sign")
    phi1 = phi1 or _ground_state(N, s)
    a0 = alpha0(v, phi1, N, quad)

    def vp(x):
        return _plus(np.asarray(v(x), dtype=float))

    def vm(x):
        return _plus(-np.asarray(v(x), dtype=float))

    fp = gagliardo_form_mc(v, vp, N, s, samples, seed)
    fm = gagliardo_form_mc(v, vm, N, s, samples, seed)
    fm = FormEstimate(-fm.value, fm.stderr, fm.samples)
    holds = fp.value - lambda2 * l2p <= 3.0 * fp.stderr
    rp, rm = fp.value / l2p, fm.value / l2m
    return Lemma1Report(
        lambda2=float(lambda2), form_plus=fp, form_minus=fm, l2_plus=l2p, l2_minus=l2m,
        ratio_plus=rp, ratio_minus=rm,
        ratio_plus_stderr=fp.stderr / l2p, ratio_minus_stderr=fm.stderr / l2m,
        minmax=max(rp, rm), alpha0=a0, hypothesis_holds=bool(holds),
    )
