"""
Full Dirichlet spectrum on the N-ball from the radial sub-spectra.

The eigenfunctions are V(x) phi(|x|) with V a solid harmonic of degree l and
phi a radial eigenfunction in effective dimension N + 2l, so every radial
eigenvalue lambda_{N+2l,n} enters the ball spectrum with multiplicity
dim H_l.  Since lambda_{d,1} increases with d, branches can be generated
until their ground level exceeds the eigenvalues already collected.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .radial import RadialEigenpair, SpectralParams, solve_radial, DEFAULT_BASIS_SIZE

__all__ = [
    "SpectrumEntry",
    "SecondEigSplit",
    "harmonic_multiplicity",
    "assemble_spectrum",
    "second_split",
    "CERTIFY_FACTOR",
    "COLLISION_FACTOR",
]

CERTIFY_FACTOR = 10.0
COLLISION_FACTOR = 100.0
MAX_COUNT = 200


@dataclass(frozen=True, eq=False)
class SpectrumEntry:
    eigenvalue: float
    angular_degree: int
    radial_index: int
    multiplicity: int
    radial: RadialEigenpair
    near_collision: bool = False

    @property
    def convergence_err(self):
        return self.radial.convergence_err


@dataclass(frozen=True)
class SecondEigSplit:
    """lambda_ominus = lambda_{N+2,1} versus lambda_circ = lambda_{N,2}.

    `conv_err` is an absolute error estimate, the larger of
    relative-change * eigenvalue over the two branches; `certified` asks
    for a gap of more than ten times that.
    """

    N: int
    s: float
    M: int
    lambda1: float
    lambda_ominus: float
    lambda_circ: float
    lambda_2: float
    gap: float
    conv_err: float
    certified: bool


def harmonic_multiplicity(l, N):
    """Dimension of the space of degree-l homogeneous harmonic polynomials in N variables."""
    if l < 0 or N < 2:
        raise ValueError("need l >= 0 and N >= 2")
    lower = comb(l + N - 3, N - 1) if l + N - 3 >= N - 1 else 0
    return comb(l + N - 1, N - 1) - lower


def _check_ball_args(N, s):
    if int(N) != N or N < 2:
        raise ValueError(f"ball dimension N must be an integer >= 2, got {N}")
    if not 0.0 < s < 1.0:
        raise ValueError(f"s must lie in (0, 1), got {s}")


def assemble_spectrum(N, s, count, M=DEFAULT_BASIS_SIZE, extra_branches=0):
    """First `count` distinct (l, n) eigenvalue branches of the ball, ascending.

    Each entry stands for `multiplicity` linearly independent eigenfunctions.
    Ties are broken by (l, n).  `extra_branches` solves that many angular
    degrees beyond the stopping rule, which must not change the result.
    Entries from different branches that agree within 100 x their
    convergence error are flagged, not merged.
    """
    _check_ball_args(N, s)
    if not 1 <= count <= MAX_COUNT:
        raise ValueError(f"count must lie in [1, {MAX_COUNT}], got {count}")
    per_branch = min(count, M // 2)

    entries = []
    branch_tops = []
    l = 0
    overshoot = 0
    while True:
        pairs = solve_radial(SpectralParams(N + 2 * l, s, M), per_branch)
        mult = harmonic_multiplicity(l, N)
        if len(entries) >= count:
            threshold = sorted(e.eigenvalue for e in entries)[count - 1]
            if pairs[0].eigenvalue > threshold:
                if overshoot >= extra_branches:
                    break
                overshoot += 1
        entries.extend(
            SpectrumEntry(p.eigenvalue, l, p.index_n, mult, p) for p in pairs
        )
        branch_tops.append(pairs[-1].eigenvalue)
        l += 1

    entries.sort(key=lambda e: (e.eigenvalue, e.angular_degree, e.radial_index))
    kept = entries[:count]
    cutoff = kept[-1].eigenvalue
    if len(branch_tops) and any(
        per_branch < count and top < cutoff for top in branch_tops
    ):
        raise ArithmeticError(
            f"basis size M={M} resolves only {per_branch} radial levels per branch; "
            f"increase M to list {count} entries"
        )
    return _flag_collisions(kept)


def _flag_collisions(entries):
    flagged = set()
    for i, a in enumerate(entries):
        for b in entries[i + 1:]:
            if a.angular_degree == b.angular_degree:
                continue
            tol = COLLISION_FACTOR * max(
                a.convergence_err * a.eigenvalue, b.convergence_err * b.eigenvalue
            )
            if abs(a.eigenvalue - b.eigenvalue) <= tol:
                flagged.update((id(a), id(b)))
    return [
        SpectrumEntry(e.eigenvalue, e.angular_degree, e.radial_index, e.multiplicity,
                      e.radial, id(e) in flagged)
        for e in entries
    ]


def second_split(N, s, M=DEFAULT_BASIS_SIZE):
    """Compare the equatorial level lambda_{N+2,1} with the radial level lambda_{N,2}."""
    _check_ball_args(N, s)
    radial = solve_radial(SpectralParams(N, s, M), 2)
    ominus = solve_radial(SpectralParams(N + 2, s, M), 1)[0]
    circ = radial[1]
    err = max(ominus.convergence_err * ominus.eigenvalue, circ.convergence_err * circ.eigenvalue)
    gap = circ.eigenvalue - ominus.eigenvalue
    return SecondEigSplit(
        N=int(N), s=float(s), M=int(M),
        lambda1=radial[0].eigenvalue,
        lambda_ominus=ominus.eigenvalue,
        lambda_circ=circ.eigenvalue,
        lambda_2=min(ominus.eigenvalue, circ.eigenvalue),
        gap=gap,
        conv_err=err,
        certified=bool(gap > CERTIFY_FACTOR * err),
    )
