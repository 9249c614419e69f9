"""
Self-check suites bundling the invariants of each module.

Every suite returns a list of check records
{check, status, value, stderr?, witness?}; a suite passes when all its
checks do.  The `quick` profile trims sample counts and grid sizes.
"""
from __future__ import annotations

import math
import time

import numpy as np

from .ball import second_split
from .fields import BallFunction, nodal_radius, pohozaev_residual
from .polarization import (
    _gap, alpha0, axisymmetric_rule, gagliardo_form_mc, lemma2_report,
    support_containment_check,
)
from .radial import RadialEigenpair, SpectralParams, eigenvalues, rayleigh_quotient, solve_radial
from .specfun import gamma, gauss_jacobi, jacobi_norm, jacobi_table

__all__ = ["PROFILES", "run_suites"]

PROFILES = {
    "quick": dict(gauss_nodes=(5, 20, 40), kernel_draws=100_000, mc_samples=100_000,
                  pohozaev_dims=(2,), scan_dims=(2, 3), scan_s=(0.25, 0.5, 0.75)),
    "full": dict(gauss_nodes=(5, 20, 40, 80, 120), kernel_draws=1_000_000, mc_samples=1_000_000,
                 pohozaev_dims=(2, 3), scan_dims=tuple(range(2, 10)),
                 scan_s=(0.1, 0.25, 0.5, 0.75, 0.9)),
}


def _record(check, ok, value, stderr=None, witness=None):
    out = {"check": check, "status": "pass" if ok else "fail", "value": value}
    if stderr is not None:
        out["stderr"] = stderr
    if witness is not None:
        out["witness"] = witness
    return out


def suite_specfun(cfg, rng):
    out = []
    x = np.concatenate([rng.uniform(0.01, 1.0, 200), rng.uniform(1.0, 170.0, 200)])
    ref = np.array([math.gamma(t) for t in x])
    err = float(np.max(np.abs(gamma(x) / ref - 1.0)))
    out.append(_record("gamma vs math.gamma, rel err < 1e-13", err < 1e-13, err))
    worst = 0.0
    for m in cfg["gauss_nodes"]:
        for a, b in ((0.5, 0.0), (1.5, 0.5), (0.2, 2.5), (-0.5, -0.5)):
            rule = gauss_jacobi(m, a, b)
            tab = jacobi_table(m - 1, a, b, rule.nodes)
            gram = (tab * rule.weights) @ tab.T
            h = np.array([jacobi_norm(n, a, b) for n in range(m)])
            worst = max(worst, float(np.max(np.abs(gram / np.sqrt(np.outer(h, h)) - np.eye(m)))))
    out.append(_record("Gauss-Jacobi exact on degree 2m-2 (orthonormality)", worst < 1e-11, worst))
    return out


def suite_galerkin(cfg, rng):
    out = []
    worst = -math.inf
    for d, s in ((2, 0.3), (3, 0.5), (5, 0.8)):
        prev = None
        for m in (10, 20, 30, 40, 50):
            vals = eigenvalues(SpectralParams(d, s, m), 5)
            if prev is not None:
                worst = max(worst, float(np.max((vals - prev) / prev)))
            prev = vals
    out.append(_record("Galerkin eigenvalues nonincreasing in M", worst <= 1e-12, worst))
    lam = [eigenvalues(SpectralParams(d, 0.5), 1)[0] for d in range(1, 12)]
    step = float(np.min(np.diff(lam)))
    out.append(_record("lambda_{d,1} increasing in d", step > 0, step))
    return out


def suite_kernel_gap(cfg, rng):
    n = cfg["kernel_draws"]
    vals = rng.standard_normal((4, n))
    k1 = rng.uniform(0.01, 1.0, n)
    k0 = k1 + rng.exponential(1.0, n)
    out = []
    for kind in ("plus", "square"):
        g = _gap(*vals, k0, k1, kind)
        i = int(np.argmin(g))
        wit = None if g[i] >= -1e-12 else [float(t) for t in vals[:, i]]
        out.append(_record(f"kernel gap ({kind}) >= -1e-12 over {n} draws", g[i] >= -1e-12,
                           float(g[i]), witness=wit))
    # equal-sign cases give zero
    ux, uxr, uy, uyr = vals
    same = (uxr - ux) * (uyr - uy) >= 0
    z = float(np.max(np.abs(_gap(ux, uxr, uy, uyr, k0, k1, "plus")[same])))
    out.append(_record("kernel gap exactly 0 in the equal-sign cases", z == 0.0, z))
    return out


def suite_pohozaev(cfg, rng):
    out = []
    worst = 0.0
    for d in cfg["pohozaev_dims"]:
        for s in (0.5, 0.75):
            for pair in solve_radial(SpectralParams(d, s, 60), 5, refine=False):
                worst = max(worst, pohozaev_residual(pair))
    out.append(_record("Pohozaev residual < 1e-6 (s in {0.5, 0.75})", worst < 1e-6, worst))
    params = SpectralParams(2, 0.5, 60)
    low = math.inf
    for _ in range(5):
        c = rng.standard_normal(60) * np.exp(-np.arange(60) / 10.0)
        fake = RadialEigenpair(params, 1, rayleigh_quotient(params, c), c)
        low = min(low, pohozaev_residual(fake))
    out.append(_record("Pohozaev residual > 1e-2 for random coefficients", low > 1e-2, low))
    return out


def suite_alpha0(cfg, rng):
    out = []
    xi = BallFunction("antisymmetric_axis1", solve_radial(SpectralParams(4, 0.5), 1, refine=False)[0])
    phi = BallFunction("radial", solve_radial(SpectralParams(2, 0.5), 1, refine=False)[0])
    quad = axisymmetric_rule(2)
    a = alpha0(xi, phi, 2, quad)
    out.append(_record("alpha0(xi_1, phi_1) = 1 within 1e-8", abs(a - 1.0) < 1e-8, a))
    v = BallFunction("radial", solve_radial(SpectralParams(2, 0.5), 2, refine=False)[1])
    a1 = alpha0(v, phi, 2, quad)
    # power-of-two factors scale every node value exactly, so the ratio must not move at all
    exact = max(abs(alpha0(lambda x, c=c: c * v(x), phi, 2, quad) - a1) for c in (2.0, 0.125))
    out.append(_record("alpha0 invariant under scaling by 2^k, exact", exact == 0.0, exact))
    rel = abs(alpha0(lambda x: 3.7 * v(x), phi, 2, quad) / a1 - 1.0)
    out.append(_record("alpha0 invariant under scaling by 3.7 to 1e-14", rel < 1e-14, rel))
    return out


def suite_polarization(cfg, rng, seed):
    out = []
    u = BallFunction("radial", solve_radial(SpectralParams(2, 0.5), 2, refine=False)[1])
    for a in (0.05, 0.1, 0.2):
        rep = lemma2_report(u, a, 2, 0.5, cfg["mc_samples"], seed)
        worst = min(rep.min_sample_difference.values())
        out.append(_record(f"paired form differences >= 0 sample-wise, a={a}", rep.passed, worst))
    for d in (2, 3):
        pair = solve_radial(SpectralParams(d, 0.5), 2, refine=False)[1]
        a = 0.25 * (1.0 - nodal_radius(pair))
        rep = support_containment_check(pair, a, 10_000, seed)
        out.append(_record(f"P_a u vanishes outside B, N={d}", rep.passed, a,
                           witness=rep.as_dict().get("witness")))
    phi = solve_radial(SpectralParams(2, 0.5), 1, refine=False)[0]
    f = BallFunction("radial", phi)
    est = gagliardo_form_mc(f, f, 2, 0.5, cfg["mc_samples"], seed)
    z = (est.value - phi.eigenvalue) / est.stderr
    out.append(_record("<phi_1, phi_1> = lambda_1 within 3 stderr", abs(z) < 3.0, est.value, est.stderr))
    return out


def suite_scan(cfg, rng):
    bad = []
    for N in cfg["scan_dims"]:
        for s in cfg["scan_s"]:
            row = second_split(N, s)
            if not row.certified:
                bad.append({"N": N, "s": s, "gap": row.gap, "conv_err": row.conv_err})
    n = len(cfg["scan_dims"]) * len(cfg["scan_s"])
    return [_record(f"lambda_ominus < lambda_circ certified on {n} grid points", not bad, n - len(bad),
                    witness=bad or None)]


def run_suites(profile="quick", seed=42):
    """Run every suite; returns (all_passed, {suite: {status, seconds, checks}})."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    cfg = PROFILES[profile]
    suites = {
        "specfun": lambda rng: suite_specfun(cfg, rng),
        "galerkin": lambda rng: suite_galerkin(cfg, rng),
        "kernel_gap": lambda rng: suite_kernel_gap(cfg, rng),
        "pohozaev": lambda rng: suite_pohozaev(cfg, rng),
        "alpha0": lambda rng: suite_alpha0(cfg, rng),
        "polarization": lambda rng: suite_polarization(cfg, rng, seed),
        "scan": lambda rng: suite_scan(cfg, rng),
    }
    report = {}
    seqs = np.random.SeedSequence(seed).spawn(len(suites))
    for (name, fn), sq in zip(suites.items(), seqs):
        t0 = time.perf_counter()
        checks = fn(np.random.default_rng(sq))
        ok = all(c["status"] == "pass" for c in checks)
        report[name] = {"status": "pass" if ok else "fail",
                        "seconds": round(time.perf_counter() - t0, 3), "checks": checks}
    return all(r["status"] == "pass" for r in report.values()), report
