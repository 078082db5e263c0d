"""Command-line front end: kernels and experiments to CSV, optionally SVG.

Exit codes: 0 success, 2 usage or I/O failure, 3 domain error, 4 resource error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import euclid, experiments, sphere, torus
from .errors import DomainError, FitError, ResourceError
from .specfun import universal_profile
from .svg import line_plot

COMMANDS = ("sphere-profile", "sphere-converge", "torus-profile", "euclid-check", "diag-coeffs", "growth", "hilb")
THREADS_ENV = "SPECTRAL_THREADS"

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_RESOURCE = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    out_csv: str | None = None
    out_svg: str | None = None
    threads: int = 1


@dataclass
class Table:
    header: list
    rows: list
    plot: tuple | None = None  # (xs, ys, xlabel, ylabel, title)
    summary: list = field(default_factory=list)


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return repr(float(value))


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text):
    return [int(float(t)) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-universality",
        description="Spectral functions on model manifolds and their universal rescaled limit.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-csv", help="CSV output path (default: stdout)")
    common.add_argument("--out-svg", help="optional SVG plot path")
    common.add_argument("--threads", type=int, default=None, help=f"worker threads (env {THREADS_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sphere-profile", parents=[common], help="E_n(phi) on S^(d-1), raw or rescaled")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--phi-max", type=float, default=math.pi / 8)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--normalize", action="store_true", help="divide by the value at phi = 0")
    p.add_argument("--rescaled", action="store_true", help="rescaled kernel on [0, phi_max sqrt(lambda_n)]")

    p = sub.add_parser("sphere-converge", parents=[common], help="sup error of rescaled profiles vs K_(d-1)")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--levels", type=_ints, default=[50, 100, 200, 400, 800])
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--phi-min", type=float, default=experiments.PHI_MIN)
    p.add_argument("--phi-max", type=float, default=sphere.RESCALED_PHI_MAX)

    p = sub.add_parser("torus-profile", parents=[common], help="rescaled lattice-sum kernel on a flat torus")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--side", type=float, default=2 * math.pi)
    p.add_argument("--L", type=float, default=1e4)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--s-max", type=float, default=8.0)
    p.add_argument("--direction", type=_floats, default=None, help="comma-separated unit vector")
    p.add_argument("--budget", type=int, default=torus.DEFAULT_BUDGET)

    p = sub.add_parser("euclid-check", parents=[common], help="ball quadrature vs closed-form profile")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--r-max", type=float, default=10.0)

    p = sub.add_parser("diag-coeffs", parents=[common], help="diagonal coefficients C_(alpha,beta) and oracle")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--max-order", type=int, default=2)

    p = sub.add_parser("growth", parents=[common], help="diagonal derivatives and factorial growth fit")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--max-order", type=int, default=12)

    p = sub.add_parser("hilb", parents=[common], help="Hilb-type approximation error vs the recurrence")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--levels", type=_ints, default=[50, 100, 200, 400, 800, 1600])
    p.add_argument("--phi", type=float, default=0.1, help="theta_n = phi / a_n")
    return parser


def _validate(parser, args):
    """Range checks that must pass before any computation starts."""
    def need(cond, message):
        if not cond:
            parser.error(f"{args.command}: {message}")

    need(args.threads is None or args.threads >= 1, "--threads must be >= 1")
    c = args.command
    if hasattr(args, "d"):
        need(args.d >= 3, "--d must be >= 3")
    if hasattr(args, "samples"):
        need(args.samples >= 2, "--samples must be >= 2")
    if c == "sphere-profile":
        need(args.n >= 1 if args.rescaled else args.n >= 0, "--n out of range")
        need(0 < args.phi_max <= math.pi, "--phi-max must lie in (0, pi]")
    elif c == "sphere-converge":
        need(len(args.levels) >= 2, "--levels needs at least two values")
        need(all(b > a for a, b in zip(args.levels, args.levels[1:])), "--levels must increase")
        need(args.levels[0] >= 1, "--levels must be >= 1")
        need(0 <= args.phi_min < args.phi_max <= sphere.RESCALED_PHI_MAX, "need 0 <= phi-min < phi-max <= pi/4")
    elif c == "torus-profile":
        need(args.m in (1, 2, 3), "--m must be 1, 2 or 3")
        need(args.side > 0, "--side must be positive")
        need(args.L > 0, "--L must be positive")
        need(args.s_max > 0, "--s-max must be positive")
        need(args.budget >= 1, "--budget must be >= 1")
        if args.direction is not None:
            need(len(args.direction) == args.m, "--direction needs m components")
            need(abs(math.hypot(*args.direction) - 1) < 1e-12, "--direction must be a unit vector")
    elif c == "euclid-check":
        need(args.m in (1, 2, 3), "--m must be 1, 2 or 3")
        need(0 < args.r_max <= euclid.QUADRATURE_MAX_RADIUS, "--r-max must lie in (0, 20]")
    elif c == "diag-coeffs":
        need(args.m >= 1, "--m must be >= 1")
        need(0 <= args.max_order <= 12, "--max-order must lie in 0..12")
    elif c == "growth":
        need(args.n >= 1, "--n must be >= 1")
        need(args.max_order in range(2, 13, 2), "--max-order must be even, 2..12")
    elif c == "hilb":
        need(len(args.levels) >= 2 and min(args.levels) >= 1, "--levels needs two values >= 1")
        need(0 < args.phi, "--phi must be positive")


def parse_args(argv=None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    threads = args.threads
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        try:
            threads = int(env) if env else 1
        except ValueError:
            parser.error(f"{THREADS_ENV} must be an integer, got {env!r}")
        if threads < 1:
            parser.error(f"{THREADS_ENV} must be >= 1")
    params = {k: v for k, v in vars(args).items() if k not in ("command", "out_csv", "out_svg", "threads")}
    return RunConfig(args.command, params, args.out_csv, args.out_svg, threads)


def sphere_profile(d, n, phi_max, samples, normalize=False, rescaled=False, **_):
    geom = sphere.SphereGeometry(d)
    phis = np.linspace(0.0, phi_max, samples)
    if rescaled:
        xs = phis * math.sqrt(sphere.eigenvalue(geom, n))
        values = sphere.rescaled_values(geom, n, xs)
        peak = sphere.rescaled_values(geom, n, 0.0)
        xlabel, name = "rescaled distance s", "s"
    else:
        xs = phis
        values = sphere.spectral_cd(geom, n, xs)
        peak = sphere.spectral_cd(geom, n, 0.0)
        xlabel, name = "geodesic distance phi", "phi"
    if normalize:
        values = values / peak
    label = ("rescaled E_%d" if rescaled else "E_%d") % n + (" / value at 0" if normalize else "")
    return Table([name, "value"], list(zip(xs, values)), (xs, values, xlabel, label, f"S^{d - 1}, n = {n}"))


def sphere_converge(d, levels, samples, phi_min, phi_max, threads=1, **_):
    geom = sphere.SphereGeometry(d)
    grid = np.linspace(phi_min, phi_max, samples)
    report = experiments.converge_universality(geom, levels, grid, threads=threads)
    rows = [(int(level), err) for level, err in report.rows()]
    plot = (np.log10(report.levels), np.log10(report.sup_errors), "log10 n", "log10 sup error", f"S^{d - 1}")
    summary = [f"fitted_slope={report.fitted_slope!r}", f"fitted_intercept={report.fitted_intercept!r}"]
    return Table(["level", "sup_error"], rows, plot, summary)


def torus_profile(m, side, L, samples, s_max, direction=None, budget=torus.DEFAULT_BUDGET, threads=1, **_):
    geom = torus.TorusGeometry(m, side)
    direction = np.eye(m)[0] if direction is None else np.asarray(direction)
    ss = np.linspace(0.0, s_max, samples)
    prof = torus.rescaled_torus_profile(geom, L, direction, ss, budget=budget, threads=threads)
    limit = universal_profile(m, ss)
    rows = list(zip(ss, prof.values, limit))
    return Table(["s", "value", "limit"], rows, (ss, prof.values, "rescaled distance s", "rescaled E_L", f"T^{m}, L = {L:g}"))


def euclid_check(m, samples, r_max, **_):
    rs = np.linspace(0.0, r_max, samples)
    rows = []
    for r in rs:
        u = np.zeros(m)
        u[0] = r
        quad = euclid.ball_quadrature(m, u)
        closed = universal_profile(m, r)
        rows.append((r, quad, closed, abs(quad - closed)))
    errs = np.array([row[3] for row in rows])
    return Table(
        ["r", "quadrature", "closed_form", "abs_error"],
        rows,
        (rs, np.array([row[2] for row in rows]), "r", f"K_{m}(r)", f"unit ball in R^{m}"),
        [f"max_abs_error={float(errs.max())!r}"],
    )


def multi_indices(m, total):
    """All multi-indices of length m with entries summing to ``total``."""
    for combo in itertools.product(range(total + 1), repeat=m):
        if sum(combo) == total:
            yield combo


def _index_str(idx):
    return ";".join(str(i) for i in idx)


def diag_coeffs(m, max_order, **_):
    rows = []
    for order in range(max_order + 1):
        for a in range(order + 1):
            for alpha in multi_indices(m, a):
                for beta in multi_indices(m, order - a):
                    rows.append((
                        _index_str(alpha),
                        _index_str(beta),
                        euclid.diagonal_coefficient(m, alpha, beta),
                        euclid.diagonal_coefficient_oracle(m, alpha, beta),
                    ))
    return Table(["alpha", "beta", "coefficient", "oracle"], rows)


def growth(d, n, max_order, **_):
    geom = sphere.SphereGeometry(d)
    fit = experiments.growth_fit(geom, n, max_order)
    derivs = experiments.diagonal_derivatives(geom, n, max_order)
    limit = experiments.limit_derivatives(d - 1, max_order)
    bound = fit.bound()
    rows = list(zip(range(max_order + 1), derivs, limit, bound))
    summary = [f"K_fit={fit.K_fit!r}", f"T_fit={fit.T_fit!r}"]
    return Table(["order", "derivative", "limit", "bound"], rows, None, summary)


def hilb(d, levels, phi, **_):
    geom = sphere.SphereGeometry(d)
    rows = []
    for n in levels:
        theta = phi / geom.a(n)
        exact = sphere.legendre(geom, n, math.cos(theta))
        approx = experiments.hilb_approx(geom, n, theta)
        rows.append((n, theta, exact, approx, abs(exact - approx)))
    errs = [r[4] for r in rows]
    slope, _ = experiments.loglog_fit(levels, errs)
    plot = (np.log10(levels), np.log10(errs), "log10 n", "log10 error", f"Hilb approximation, d = {d}")
    return Table(["n", "theta", "exact", "approx", "abs_error"], rows, plot, [f"fitted_slope={slope!r}"])


HANDLERS = {
    "sphere-profile": sphere_profile,
    "sphere-converge": sphere_converge,
    "torus-profile": torus_profile,
    "euclid-check": euclid_check,
    "diag-coeffs": diag_coeffs,
    "growth": growth,
    "hilb": hilb,
}


def compute(config: RunConfig) -> Table:
    return HANDLERS[config.command](threads=config.threads, **config.params)


def run(config: RunConfig) -> int:
    try:
        table = compute(config)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, FitError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = to_csv(table)
    try:
        if config.out_csv:
            with open(config.out_csv, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if config.out_svg:
            if table.plot is None:
                print(f"{config.command} has no plot; SVG skipped", file=sys.stderr)
            else:
                xs, ys, xlabel, ylabel, title = table.plot
                with open(config.out_svg, "w") as fh:
                    fh.write(line_plot(xs, ys, xlabel=xlabel, ylabel=ylabel, title=title))
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for line in table.summary:
        print(line, file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
