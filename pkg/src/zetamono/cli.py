"""Command-line front end.

    zetamono eval zeta --x 2
    zetamono verify prop1 --k 2
    zetamono verify all --json --out reports.json
    zetamono report theorem1

Exit codes: 0 success / all checks pass, 1 a verification failed,
2 usage error, 3 domain or evaluation error.
"""

import argparse
import csv
import io
import math
import sys

from . import verify as V
from .bose_kernel import F, F_ratio
from .combinatorics import binom, stirling2
from .errors import SpecialFunctionError
from .specfun import ZetaRoute, eta, gamma, lam, zeta

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

EVAL_TARGETS = {
    "zeta": ("x",),
    "gamma": ("x",),
    "eta": ("x",),
    "lambda": ("x",),
    "binom": ("z", "w"),
    "stirling": ("k", "p"),
    "fk": ("k", "t"),
    "fratio": ("k", "t"),
    "t1ratio": ("x", "alpha", "ell"),
}
CLAIMS = ("theorem1", "logconvex", "prop1", "lemma1", "lemma4", "identities", "all")


def _finite_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite decimal: {text!r}")
    return value


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zetamono",
        description="Zeta, gamma and Bose-kernel evaluation with numerical "
        "certification of monotonicity and log-convexity claims.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    ev = sub.add_parser("eval", help="evaluate one function")
    ev.add_argument("target", choices=sorted(EVAL_TARGETS))
    for name in ("x", "z", "w", "t", "alpha"):
        ev.add_argument(f"--{name}", type=_finite_float)
    for name in ("k", "p", "ell"):
        ev.add_argument(f"--{name}", type=_int)
    ev.add_argument("--route", choices=[r.value for r in ZetaRoute], default="alternating")

    for verb, help_text in (
        ("verify", "run verification scans, one line per report"),
        ("report", "run verification scans and print a detailed table"),
    ):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("claim", choices=CLAIMS, nargs="?" if verb == "report" else None, default="all")
        p.add_argument("--alpha", type=_finite_float)
        p.add_argument("--ell", type=_int)
        p.add_argument("--k", type=_int)
        p.add_argument("--grid-start", type=_finite_float)
        p.add_argument("--grid-end", type=_finite_float)
        p.add_argument("--grid-points", type=_int)
        p.add_argument("--slack", type=_finite_float)
        p.add_argument("--tol", type=_finite_float)
        p.add_argument("--h", type=_finite_float, help="finite-difference step (default 1e-3)")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="emit the full report array")
        fmt.add_argument("--csv", action="store_true", help="emit grid samples")
        p.add_argument("--out", help="write the output to this path instead of stdout")
    return parser


def _format_scalar(value):
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def run_eval(args, parser):
    missing = [f"--{n}" for n in EVAL_TARGETS[args.target] if getattr(args, n) is None]
    if missing:
        parser.error(f"eval {args.target} requires {' '.join(missing)}")
    t = args.target
    if t == "zeta":
        value = zeta(args.x, ZetaRoute(args.route))
    elif t == "gamma":
        value = gamma(args.x)
    elif t == "eta":
        value = eta(args.x)
    elif t == "lambda":
        value = lam(args.x)
    elif t == "binom":
        value = float(binom(args.z, args.w))
    elif t == "stirling":
        value = stirling2(args.k, args.p)
    elif t == "fk":
        value = F(args.k, args.t)
    elif t == "fratio":
        value = F_ratio(args.k, args.t)
    else:
        value = V.theorem1_ratio(args.x, args.alpha, args.ell)
    return _format_scalar(value)


def _grid(args, default):
    start = args.grid_start if args.grid_start is not None else default.start
    end = args.grid_end if args.grid_end is not None else default.end
    points = args.grid_points if args.grid_points is not None else default.points
    return V.GridSpec(start, end, points, default.spacing)


def collect_reports(claim, args):
    """Run the scans for ``claim`` in fixed order.

    Overrides apply to single claims; ``all`` always runs the defaults because
    the claims live on different domains.
    """
    reports = []
    run_all = claim == "all"

    def pick(value, default):
        return default if run_all or value is None else value

    def grid(default):
        return default if run_all else _grid(args, default)

    if run_all or claim == "theorem1":
        alphas = V.DEFAULT_ALPHAS if run_all or args.alpha is None else (args.alpha,)
        ells = V.DEFAULT_ELLS if run_all or args.ell is None else (args.ell,)
        g = grid(V.X_GRID)
        for a in alphas:
            for ell in ells:
                reports.append(V.scan_theorem1_monotone(a, ell, g, pick(args.slack, 1e-12)))
        reports.append(V.theorem1_endpoints())
    if run_all or claim == "logconvex":
        ells = V.DEFAULT_CONVEX_ELLS if run_all or args.ell is None else (args.ell,)
        g = grid(V.CONVEX_GRID)
        for ell in ells:
            reports.append(V.scan_log_convexity(ell, g, pick(args.h, 1e-3), pick(args.slack, 1e-8)))
    if run_all or claim == "prop1":
        ks = V.DEFAULT_PROP_KS if run_all or args.k is None else (args.k,)
        g = grid(V.T_GRID)
        for k in ks:
            reports.append(V.scan_proposition_ratio(k, g, pick(args.slack, 1e-12)))
    if run_all or claim == "lemma1":
        alpha = pick(args.alpha, 1.0)
        tol = pick(args.tol, 1e-10)
        xs = [2.0, 4.0, 8.0]
        reports.extend(
            V.check_monotonicity_rule(
                V.Integrand(1, alpha + 1.0), V.Integrand(1, 1.0), xs, tol=tol, label="lemma1.case1"
            )
        )
        reports.extend(
            V.check_monotonicity_rule(
                V.Integrand(1, 0.0), V.Integrand(1, 1.0), xs, tol=tol, label="lemma1.case2"
            )
        )
    if run_all or claim == "lemma4":
        reports.append(V.cm_spot_check())
    if run_all or claim == "identities":
        reports.extend(V.check_proof_identities(pick(args.tol, 1e-9)))
    return reports


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["parameter", "value", "margin", "claim_id"])
    for r in reports:
        for x, value, margin in r.trace:
            writer.writerow([repr(float(x)), repr(float(value)), repr(float(margin)), r.claim_id])
    return buf.getvalue()


def reports_to_table(reports):
    lines = []
    for r in reports:
        lines.append(f"== {r.claim_id}: {r.verdict.value.upper()}")
        lines.append(f"   worst_margin  {r.worst_margin!r}")
        lines.append(f"   worst_point   {r.worst_point!r}")
        lines.append(f"   samples       {r.samples}")
        lines.append(f"   residual_max  {r.residual_max!r}")
        for key in sorted(r.parameters):
            lines.append(f"   {key:<13} {r.parameters[key]!r}")
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines) + "\n"


def run_verify(args, verb="verify"):
    reports = collect_reports(args.claim, args)
    if args.json:
        payload = V.reports_to_json(reports) + "\n"
    elif args.csv:
        payload = reports_to_csv(reports)
    elif verb == "report":
        payload = reports_to_table(reports)
    else:
        payload = "".join(r.summary_line() + "\n" for r in reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        sys.stdout.write("".join(r.summary_line() + "\n" for r in reports))
    else:
        sys.stdout.write(payload)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "eval":
            print(run_eval(args, parser))
            return EXIT_OK
        return run_verify(args, args.verb)
    except (SpecialFunctionError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
