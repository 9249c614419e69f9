"""
Command-line front end.

    fraclap spectrum --dim 2 --s 0.5 --count 6
    fraclap scan --dims 2..9 --s 0.1,0.25,0.5,0.75,0.9 --output scan.csv
    fraclap polarize --mode support --dim 2 --s 0.5 --a auto
    fraclap verify --profile quick

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical failure.
Settings M, samples, seed and jobs may also come from a key=value config
file (--config or FRACLAP_CONFIG); flags win over the file, the file over
built-in defaults.  FRACLAP_JOBS overrides the worker count.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .ball import assemble_spectrum, second_split
from .fields import BallFunction, nodal_radius
from .polarization import lemma2_report, nonradial_witness, polarize_eval, support_containment_check
from .radial import SpectralParams, solve_radial
from .verify import PROFILES, run_suites

__all__ = ["main", "load_config", "format_csv"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CSV_HEADER = "# fraclap-spectra v1"
SCAN_COLUMNS = ("N", "s", "M", "lambda1", "lambda_ominus", "lambda_circ", "gap", "conv_err", "certified")
SPECTRUM_COLUMNS = ("eigenvalue", "l", "n", "mult", "conv_err")
DEFAULTS = {"M": 50, "samples": 100_000, "seed": 42, "jobs": None}
CONFIG_TYPES = {"M": int, "samples": int, "seed": int, "jobs": int}


class UsageError(ValueError):
    pass


def load_config(path):
    """Parse key=value lines; blank lines and # comments are skipped."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (t.strip() for t in line.split("=", 1))
        if key not in CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = CONFIG_TYPES[key](float(val)) if key == "samples" else CONFIG_TYPES[key](val)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
    return out


def _resolve(args):
    # flags > config file > defaults
    path = args.config or os.environ.get("FRACLAP_CONFIG")
    cfg = load_config(path) if path else {}
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, cfg.get(key, default))
    env_jobs = os.environ.get("FRACLAP_JOBS")
    if env_jobs and "jobs" not in args.explicit:
        try:
            args.jobs = int(env_jobs)
        except ValueError:
            raise UsageError(f"FRACLAP_JOBS must be an integer, got {env_jobs!r}") from None
    if args.jobs is None:
        args.jobs = os.cpu_count() or 1
    if args.jobs < 1 or args.M < 4 or args.samples < 1:
        raise UsageError("jobs >= 1, M >= 4 and samples >= 1 required")
    return args


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12g}"


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(f"{float(v):.12g}")


def format_csv(columns, rows):
    lines = [CSV_HEADER, ",".join(columns)]
    lines += [",".join(_fmt(r[c]) for c in columns) for r in rows]
    return "\n".join(lines) + "\n"


def format_json(columns, rows):
    return json.dumps([{c: _json_value(r[c]) for c in columns} for r in rows], indent=2) + "\n"


def _parse_dims(text):
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
            dims = list(range(lo, hi + 1))
        else:
            dims = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --dims {text!r}") from None
    if not dims or any(not 2 <= d <= 12 for d in dims):
        raise UsageError("--dims must be a nonempty range within [2, 12]")
    return sorted(set(dims))


def _parse_s_list(text):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --s {text!r}") from None
    if not vals or any(not 0.0 < v < 1.0 for v in vals):
        raise UsageError("--s needs a nonempty list of values in (0, 1)")
    return sorted(set(vals))


# ---------------------------------------------------------------- commands


def cmd_spectrum(args, out):
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    if not 0.0 < args.s < 1.0 or args.dim < 2:
        raise UsageError("need --dim >= 2 and 0 < --s < 1")
    entries = assemble_spectrum(args.dim, args.s, args.count, M=args.M)
    rows = [
        {"eigenvalue": e.eigenvalue, "l": e.angular_degree, "n": e.radial_index,
         "mult": e.multiplicity, "conv_err": e.convergence_err}
        for e in entries
    ]
    fmt = format_json if args.format == "json" else format_csv
    out.write(fmt(SPECTRUM_COLUMNS, rows))
    return EXIT_OK


def _scan_point(job):
    N, s, M = job
    r = second_split(N, s, M)
    return {"N": r.N, "s": r.s, "M": r.M, "lambda1": r.lambda1, "lambda_ominus": r.lambda_ominus,
            "lambda_circ": r.lambda_circ, "gap": r.gap, "conv_err": r.conv_err,
            "certified": r.certified}


def cmd_scan(args, out):
    dims = _parse_dims(args.dims)
    s_list = _parse_s_list(args.s)
    jobs = [(N, s, args.M) for N in dims for s in s_list]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(args.jobs, len(jobs))) as pool:
            rows = list(pool.map(_scan_point, jobs))
    else:
        rows = [_scan_point(j) for j in jobs]

    text = (format_json if args.format == "json" else format_csv)(SCAN_COLUMNS, rows)
    if args.output in (None, "-"):
        out.write(text)
        chart_dir = args.chart_dir
    else:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        chart_dir = args.chart_dir or path.parent
    if chart_dir is not None:
        chart_dir = Path(chart_dir)
        chart_dir.mkdir(parents=True, exist_ok=True)
        for N in dims:
            series = [f"{_fmt(r['s'])} {_fmt(r['gap'])}" for r in rows if r["N"] == N]
            (chart_dir / f"gap_N{N}.dat").write_text("# s gap\n" + "\n".join(series) + "\n")
    return EXIT_OK if all(r["certified"] for r in rows) else EXIT_FAIL


def _second_radial(N, s, M):
    return solve_radial(SpectralParams(N, s, M), 2, refine=False)[1]


_LEMMA2_LABELS = {"u_uplus": "<u, u+>", "u_uminus": "-<u, u->", "seminorm": "[u]^2"}
# P_a u(x*) vanishes up to the accuracy of the computed nodal radius
WITNESS_TOL = 1e-10


def cmd_polarize(args, out):
    if args.dim < 2 or not 0.0 < args.s < 1.0:
        raise UsageError("need --dim >= 2 and 0 < --s < 1")
    pair = _second_radial(args.dim, args.s, args.M)
    r = nodal_radius(pair)
    if args.a == "auto":
        a = 0.25 * (1.0 - r)
    else:
        try:
            a = float(args.a)
        except ValueError:
            raise UsageError(f"--a must be a number or 'auto', got {args.a!r}") from None
    u = BallFunction("radial", pair)
    report = {"mode": args.mode, "N": args.dim, "s": args.s, "M": args.M, "a": a, "nodal_radius": r}

    if args.mode == "support":
        rep = support_containment_check(pair, a, args.trials, args.seed)
        ok = rep.passed
        check = {"check": "P_a u = 0 outside the unit ball", "status": "pass" if ok else "fail",
                 "value": rep.trials}
        if rep.witness is not None:
            check["witness"] = {"x": list(rep.witness[0]), "value": rep.witness[1]}
        report["checks"] = [check]
    elif args.mode == "lemma2":
        if args.samples < 10_000:
            raise UsageError("--samples must be >= 10000 for the form estimates")
        rep = lemma2_report(u, a, args.dim, args.s, args.samples, args.seed)
        ok = rep.passed
        report["checks"] = [
            {"check": f"{_LEMMA2_LABELS[k]} for u minus the same for P_a u, >= 0 per sample",
             "status": "pass" if rep.min_sample_difference[k] >= -1e-12 else "fail",
             "value": rep.differences[k].value, "stderr": rep.differences[k].stderr,
             "min_sample": rep.min_sample_difference[k]}
            for k in rep.differences
        ]
        report["forms"] = {k: e.as_dict() for k, e in rep.forms.items()}
    else:
        if not 0.0 < a < 0.5 * (1.0 - r):
            raise UsageError(f"--a must lie in (0, {0.5 * (1.0 - r):.6g}) for the demo")
        at, anti = nonradial_witness(pair, a)
        ok = abs(at) <= WITNESS_TOL and anti > WITNESS_TOL
        x = np.zeros((5, args.dim))
        x[:, 0] = np.linspace(-1.0, 1.0, 5)
        report["samples_on_axis"] = {"x1": x[:, 0].tolist(), "u": u(x).tolist(),
                                     "P_a u": polarize_eval(u, a, x).tolist()}
        report["checks"] = [{"check": "P_a u(x*) = 0 < P_a u(-x*), so P_a u is not radial",
                             "status": "pass" if ok else "fail", "value": [at, anti]}]
    report["status"] = "pass" if ok else "fail"
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out):
    ok, report = run_suites(args.profile, args.seed)
    for name, r in report.items():
        out.write(f"{r['status'].upper():4s}  {name:14s} {r['seconds']:8.2f}s\n")
        for c in r["checks"]:
            if c["status"] != "pass":
                out.write(f"      failed: {c['check']} (value={c['value']!r})\n")
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2, default=float) + "\n")
    out.write(("all suites passed" if ok else "some suites FAILED") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Track(argparse.Action):
    # records which options were given explicitly
    def __call__(self, parser, ns, values, option_string=None):
        setattr(ns, self.dest, values)
        ns.explicit = getattr(ns, "explicit", set()) | {self.dest}


def build_parser():
    p = _Parser(prog="fraclap", description="Dirichlet spectrum of the fractional Laplacian on the unit ball.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, samples=False, seed=False, jobs=False):
        sp.add_argument("--config", help="key=value config file (default: $FRACLAP_CONFIG)")
        sp.add_argument("--M", type=int, action=_Track, help="Galerkin basis size (default 50)")
        if samples:
            sp.add_argument("--samples", type=lambda t: int(float(t)), action=_Track,
                            help="Monte Carlo samples (default 1e5)")
        if seed:
            sp.add_argument("--seed", type=int, action=_Track, help="random seed (default 42)")
        if jobs:
            sp.add_argument("--jobs", type=int, action=_Track,
                            help="worker processes (default: CPU count, or $FRACLAP_JOBS)")

    sp = sub.add_parser("spectrum", help="list the first eigenvalues of the ball")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("scan", help="compare lambda_ominus with lambda_circ over a grid")
    sp.add_argument("--dims", default="2..9", help="range 'lo..hi' or comma list (default 2..9)")
    sp.add_argument("--s", default="0.1,0.25,0.5,0.75,0.9", help="comma-separated orders")
    sp.add_argument("--output", default="-", help="CSV/JSON destination, '-' for stdout")
    sp.add_argument("--chart-dir", help="directory for gap_N<dim>.dat files")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    common(sp, jobs=True)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("polarize", help="polarization checks on the second radial profile")
    sp.add_argument("--mode", choices=("demo", "lemma2", "support"), default="demo")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--s", type=float, default=0.5)
    sp.add_argument("--a", default="auto", help="hyperplane offset, or 'auto' = (1 - r)/4")
    sp.add_argument("--trials", type=int, default=10_000, help="exterior points in support mode")
    common(sp, samples=True, seed=True)
    sp.set_defaults(func=cmd_polarize)

    sp = sub.add_parser("verify", help="run the self-check suites")
    sp.add_argument("--profile", choices=tuple(PROFILES), default="quick")
    sp.add_argument("--json", help="also write the full report to this path")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "explicit"):
        args.explicit = set()
    try:
        _resolve(args)
        return args.func(args, out)
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"fraclap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"fraclap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
