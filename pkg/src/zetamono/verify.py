"""Grid-based numerical certification of the monotonicity and convexity claims.

Every check produces a :class:`VerificationReport`.  A report passes iff its
worst margin is at least ``-slack``; margins are positive when the claimed
inequality holds with room to spare.  Monotonicity is only ever asserted
between adjacent grid points, never in between.
"""

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bose_kernel import F, F_ratio, kernel_base
from .combinatorics import binom
from .errors import DomainError, SpecialFunctionError
from .quad import integrate_kernel_moment
from .specfun import gamma, log_gamma, log_zeta, zeta

__all__ = [
    "Spacing",
    "GridSpec",
    "Verdict",
    "VerificationReport",
    "Integrand",
    "richardson_derivative",
    "theorem1_ratio",
    "log_theorem1_ratio",
    "scan_increasing",
    "scan_convexity",
    "scan_theorem1_monotone",
    "theorem1_endpoints",
    "scan_log_convexity",
    "scan_proposition_ratio",
    "ratio_of_integrals",
    "check_monotonicity_rule",
    "check_proof_identities",
    "cm_spot_check",
    "DEFAULT_ALPHAS",
    "DEFAULT_ELLS",
    "DEFAULT_CONVEX_ELLS",
    "DEFAULT_PROP_KS",
    "X_GRID",
    "T_GRID",
    "CONVEX_GRID",
]

_EVAL_ERRORS = (SpecialFunctionError, ArithmeticError, ValueError)


class Spacing(enum.Enum):
    LINEAR = "linear"
    LOGARITHMIC = "log"


@dataclass(frozen=True)
class GridSpec:
    start: float
    end: float
    points: int
    spacing: Spacing = Spacing.LOGARITHMIC

    def __post_init__(self):
        if not self.start < self.end:
            raise DomainError(f"grid needs start < end, got {self.start!r} >= {self.end!r}")
        if self.points < 2:
            raise DomainError("grid needs at least two points")
        if self.spacing is Spacing.LOGARITHMIC and self.start <= 0:
            raise DomainError("logarithmic grid needs a positive start")

    def abscissae(self):
        if self.spacing is Spacing.LOGARITHMIC:
            xs = np.geomspace(self.start, self.end, self.points)
        else:
            xs = np.linspace(self.start, self.end, self.points)
        return [float(x) for x in xs]

    def refined(self):
        """Same span with the spacing halved."""
        return GridSpec(self.start, self.end, 2 * self.points - 1, self.spacing)

    def describe(self):
        return f"{self.spacing.value}[{self.start!r},{self.end!r}]x{self.points}"


X_GRID = GridSpec(1.01, 40.0, 200)
T_GRID = GridSpec(0.01, 30.0, 300)
CONVEX_GRID = GridSpec(1.05, 30.0, 100)
DEFAULT_ALPHAS = (0.5, 1.0, 2.5)
DEFAULT_ELLS = (0, 1, 4)
DEFAULT_CONVEX_ELLS = (1, 2, 5)
DEFAULT_PROP_KS = (0, 1, 2, 3)


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


@dataclass
class VerificationReport:
    claim_id: str
    verdict: Verdict
    worst_margin: float
    worst_point: float
    samples: int
    residual_max: float
    parameters: dict = field(default_factory=dict)
    # (abscissa, value, margin) rows; not serialized
    trace: list = field(default_factory=list, repr=False, compare=False)

    @property
    def passed(self):
        return self.verdict is Verdict.PASS

    def to_dict(self):
        return {
            "claim_id": self.claim_id,
            "verdict": self.verdict.value,
            "worst_margin": self.worst_margin,
            "worst_point": self.worst_point,
            "samples": self.samples,
            "residual_max": self.residual_max,
            "parameters": dict(self.parameters),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            claim_id=d["claim_id"],
            verdict=Verdict(d["verdict"]),
            worst_margin=float(d["worst_margin"]),
            worst_point=float(d["worst_point"]),
            samples=int(d["samples"]),
            residual_max=float(d["residual_max"]),
            parameters=dict(d["parameters"]),
        )

    def summary_line(self):
        return (
            f"{self.claim_id} {self.verdict.value.upper()} "
            f"worst_margin={self.worst_margin!r} at x={self.worst_point!r}"
        )


def reports_to_json(reports):
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_from_json(text):
    return [VerificationReport.from_dict(d) for d in json.loads(text)]


def _plain(params):
    # tuples become lists, numpy scalars become floats: what JSON gives back
    return json.loads(json.dumps(params, default=float))


def _finish(claim_id, margins, points, slack, residual, params, trace):
    i = int(np.argmin(margins))
    worst = float(margins[i])
    params = _plain(dict(params, slack=slack))
    verdict = Verdict.PASS if worst >= -slack else Verdict.FAIL
    return VerificationReport(
        claim_id, verdict, worst, float(points[i]), len(trace), float(residual), params, trace
    )


def _failed(claim_id, point, exc, params, samples=0):
    params = _plain(dict(params, error=f"{type(exc).__name__}: {exc}"))
    return VerificationReport(claim_id, Verdict.FAIL, -math.inf, float(point), samples, math.inf, params)


# --- finite differences ------------------------------------------------------


def _central_difference(f, t, n, h):
    total = math.fsum(
        (-1) ** j * math.comb(n, j) * f(t + (0.5 * n - j) * h) for j in range(n + 1)
    )
    return total / h**n


def richardson_derivative(f, t, n, h=None, levels=4):
    """n-th derivative of f at t from central differences, Richardson-extrapolated.

    The stencil of width n*h is symmetric about t, so the error expands in
    even powers of h and each tableau column removes one of them.
    """
    if n == 0:
        return f(t)
    if h is None:
        h = min(0.2, abs(t) / (n + 1)) if t != 0 else 0.1
    table = []
    for i in range(levels):
        row = [_central_difference(f, t, n, h / 2**i)]
        for m in range(1, i + 1):
            factor = 4.0**m
            row.append((factor * row[m - 1] - table[i - 1][m - 1]) / (factor - 1.0))
        table.append(row)
    return table[-1][-1]


def cm_spot_check(points=(0.5, 1.0, 3.0), max_order=4):
    """(-1)^n d^n/dt^n [1/(e^t - 1)] >= 0 at each point for n <= max_order."""
    rows = []
    for t in points:
        for n in range(max_order + 1):
            d = richardson_derivative(kernel_base, t, n)
            rows.append((t, n, (-1) ** n * d))
    margins = [r[2] for r in rows]
    return _finish(
        "lemma4.cm_spot",
        margins,
        [r[0] for r in rows],
        0.0,
        max(0.0, -min(margins)),
        {"orders": max_order, "points": list(points)},
        [(r[0], r[2], float(r[1])) for r in rows],
    )


# --- the increasing ratio ----------------------------------------------------


def _check_x_alpha(x, alpha):
    if not x > 1:
        raise DomainError(f"theorem1 ratio requires x > 1, got x = {x!r}")
    if not alpha > 0:
        raise DomainError(f"theorem1 ratio requires alpha > 0, got alpha = {alpha!r}")


def log_theorem1_ratio(x, alpha, ell):
    """ln[ binom(x+alpha+ell, alpha) zeta(x+alpha) / zeta(x) ]."""
    _check_x_alpha(x, alpha)
    if ell < 0:
        raise DomainError("ell must be a non-negative integer")
    return (
        log_gamma(x + alpha + ell + 1.0)
        - log_gamma(alpha + 1.0)
        - log_gamma(x + ell + 1.0)
        + log_zeta(x + alpha)
        - log_zeta(x)
    )


def theorem1_ratio(x, alpha, ell):
    """binom(x+alpha+ell, alpha) zeta(x+alpha) / zeta(x), evaluated in log space."""
    return math.exp(log_theorem1_ratio(x, alpha, ell))


def scan_increasing(claim_id, func, points, slack, params=None, decreasing=False):
    """Adjacent-pair monotonicity scan of ``func`` over sorted ``points``."""
    params = params or {}
    values = []
    for x in points:
        try:
            values.append(func(x))
        except _EVAL_ERRORS as exc:
            return _failed(claim_id, x, exc, params, len(values))
    diffs = np.diff(values)
    margins = -diffs if decreasing else diffs
    trace = [(x, v, float(m)) for x, v, m in zip(points, values, margins)]
    trace.append((points[-1], values[-1], math.nan))
    return _finish(
        claim_id, margins, points[:-1], slack, max(0.0, -float(min(margins))), params, trace
    )


def scan_theorem1_monotone(alpha, ell, grid=X_GRID, slack=1e-12):
    """Check that ln of the binomial-zeta ratio rises between every pair of grid points."""
    if grid.start <= 1:
        raise DomainError("theorem1 scan grid must lie in (1, inf)")
    _check_x_alpha(grid.start, alpha)
    params = {"alpha": alpha, "ell": ell, "grid": grid.describe()}
    return scan_increasing(
        f"theorem1.increasing[alpha={alpha:g},ell={ell}]",
        lambda x: log_theorem1_ratio(x, alpha, ell),
        grid.abscissae(),
        slack,
        params,
    )


def theorem1_endpoints(alpha=1.0, ell=0, near_one=1.0001, far=40.0):
    """Numeric shadows of the image (0, inf): tiny near x = 1, large far out.

    The thresholds 1e-3 and ``far`` are fixed; the far-end value grows like
    x**alpha through the binomial factor.
    """
    params = {"alpha": alpha, "ell": ell, "near_one": near_one, "far": far}
    try:
        low = theorem1_ratio(near_one, alpha, ell)
        high = theorem1_ratio(far, alpha, ell)
    except _EVAL_ERRORS as exc:
        return _failed("theorem1.endpoints", near_one, exc, params)
    margins = [1e-3 - low, high - far]
    trace = [(near_one, low, margins[0]), (far, high, margins[1])]
    return _finish(
        "theorem1.endpoints", margins, [near_one, far], 0.0, low, params, trace
    )


def scan_convexity(claim_id, func, points, h, slack, params=None):
    """Second central differences (divided by h**2) of ``func`` must be >= -slack."""
    params = dict(params or {}, h=h)
    margins = []
    trace = []
    for x in points:
        try:
            d2 = (func(x + h) - 2.0 * func(x) + func(x - h)) / (h * h)
        except _EVAL_ERRORS as exc:
            return _failed(claim_id, x, exc, params, len(trace))
        margins.append(d2)
        trace.append((x, d2, d2))
    return _finish(claim_id, margins, points, slack, max(0.0, -min(margins)), params, trace)


def scan_log_convexity(ell, grid=CONVEX_GRID, h=1e-3, slack=1e-8):
    """Check convexity of ln Gamma(x+ell) + ln zeta(x) on the grid."""
    if ell < 1:
        raise DomainError("log-convexity is claimed for ell >= 1")
    if not grid.start - h > 1:
        raise DomainError("log-convexity grid must lie in (1 + h, inf)")
    params = {"ell": ell, "grid": grid.describe()}
    return scan_convexity(
        f"logconvex[ell={ell}]",
        lambda x: log_gamma(x + ell) + log_zeta(x),
        grid.abscissae(),
        h,
        slack,
        params,
    )


# --- the decreasing kernel ratio ---------------------------------------------


def scan_proposition_ratio(k, grid=T_GRID, slack=1e-12, limit_tol=1e-8):
    """F_ratio(k, .) decreasing on the grid, above 1, and near 1 at the far end.

    The worst margin pools three kinds of margin, all in units of the ratio:
    drops between adjacent points, excess over 1, and (when the grid reaches
    t = 30) ``limit_tol - |F_ratio(k, end) - 1|``.
    """
    claim_id = f"prop1.decreasing[k={k}]"
    params = {"k": k, "grid": grid.describe(), "limit_tol": limit_tol}
    points = grid.abscissae()
    try:
        values = [F_ratio(k, t) for t in points]
    except _EVAL_ERRORS as exc:
        return _failed(claim_id, points[0], exc, params)
    drops = [a - b for a, b in zip(values[:-1], values[1:])]
    excess = [v - 1.0 for v in values]
    margins = drops + excess
    where = points[:-1] + points
    end_residual = abs(values[-1] - 1.0)
    if grid.end >= 30:
        margins.append(limit_tol - end_residual)
        where.append(points[-1])
    params["min_value"] = min(values)
    params["end_value"] = values[-1]
    trace = [(t, v, d) for t, v, d in zip(points, values, drops + [math.nan])]
    return _finish(claim_id, margins, where, slack, end_residual, params, trace)


# --- ratio of two integrals with a parameter ---------------------------------


@dataclass(frozen=True)
class Integrand:
    """F(k, t) * t**power; k = 1 is e^t/(e^t-1)^2 * t**power."""

    k: int
    power: float

    @classmethod
    def bose_derivative(cls, power):
        return cls(1, power)

    def log_value(self, t):
        return math.log(F(self.k, t)) + self.power * math.log(t)

    def moment(self, x, tol):
        """int_0^inf t**x * F(k, t) t**power dt."""
        return integrate_kernel_moment(self.k, x + self.power, tol).value


def ratio_of_integrals(u, v, x, tol=1e-10):
    """R(x) = int t^x U(t) dt / int t^x V(t) dt for kernel integrands U and V."""
    return u.moment(x, tol) / v.moment(x, tol)


def _direction(values, slack=1e-12):
    d = np.diff(values)
    if np.all(d >= -slack):
        return 1
    if np.all(d <= slack):
        return -1
    return 0


def check_monotonicity_rule(u, v, xs, t_grid=GridSpec(0.05, 40.0, 120), tol=1e-10, label="lemma1"):
    """Apply the ratio-of-integrals monotonicity rule with weight W(t, x) = t**x.

    First certifies the hypotheses on ``t_grid`` (monotone ln(U/V), and
    d/dx ln W = ln t which is increasing), then checks that R(x) moves in the
    predicted direction over ``xs``.  Returns (hypothesis, conclusion) reports.
    """
    ts = t_grid.abscissae()
    params = {"u": [u.k, u.power], "v": [v.k, v.power], "tol": tol}
    log_uv = [u.log_value(t) - v.log_value(t) for t in ts]
    log_w_rate = [math.log(t) for t in ts]
    uv_dir = _direction(log_uv)
    w_dir = _direction(log_w_rate)
    hyp_margins = [abs(uv_dir), abs(w_dir)]
    hyp = _finish(
        f"{label}.hypotheses",
        [m - 0.5 for m in hyp_margins],
        [ts[0], ts[0]],
        0.0,
        0.0,
        dict(params, uv_direction=uv_dir, w_direction=w_dir, grid=t_grid.describe()),
        [(t, a, b) for t, a, b in zip(ts, log_uv, log_w_rate)],
    )
    expected = uv_dir * w_dir
    name = "increasing" if expected > 0 else "decreasing"
    try:
        values = [ratio_of_integrals(u, v, x, tol) for x in xs]
    except _EVAL_ERRORS as exc:
        return hyp, _failed(f"{label}.{name}", xs[0], exc, params)
    if expected == 0:
        margins = [-math.inf]
    else:
        margins = list(expected * np.diff(values))
    trace = [(x, r, m) for x, r, m in zip(xs, values, margins + [math.nan])]
    conclusion = _finish(
        f"{label}.{name}",
        margins,
        list(xs[:-1]) if expected else [xs[0]],
        0.0,
        max(0.0, -min(margins)),
        dict(params, xs=list(xs)),
        trace,
    )
    return hyp, conclusion


# --- identities along the integration-by-parts chain -------------------------


def _identity_report(claim_id, rows, bound, params):
    """rows: (point, lhs, rhs); margin is bound - relative residual."""
    residuals = [abs(lhs - rhs) / abs(rhs) for _, lhs, rhs in rows]
    margins = [bound - r for r in residuals]
    trace = [(p, lhs, m) for (p, lhs, _), m in zip(rows, margins)]
    return _finish(
        claim_id, margins, [r[0] for r in rows], 0.0, max(residuals), dict(params, bound=bound), trace
    )


def _gamma_zeta_ratio(x, alpha, ell):
    """Gamma(x+alpha+ell)/Gamma(x+ell) * zeta(x+alpha)/zeta(x) from the series."""
    return (
        math.exp(log_gamma(x + alpha + ell) - log_gamma(x + ell))
        * zeta(x + alpha)
        / zeta(x)
    )


def check_proof_identities(tol=1e-9):
    """Four identity reports comparing special-function values with moments."""
    reports = []
    pairs = ((2.0, 1.0), (3.0, 0.5), (5.0, 2.0))

    def guarded(claim_id, build, params):
        try:
            reports.append(build())
        except _EVAL_ERRORS as exc:
            reports.append(_failed(claim_id, pairs[0][0], exc, params))

    # Gamma ratio times zeta ratio equals the ratio of F_1 moments
    def ibp_ratio():
        rows = []
        for x, a in pairs:
            lhs = _gamma_zeta_ratio(x, a, 1)
            rhs = integrate_kernel_moment(1, x + a, tol).value / integrate_kernel_moment(1, x, tol).value
            rows.append((x, lhs, rhs))
        return _identity_report("identities.ibp_ratio", rows, 5 * tol, {"pairs": pairs, "tol": tol})

    guarded("identities.ibp_ratio", ibp_ratio, {"tol": tol})

    # Gamma(x+a+1)/Gamma(x+1) = Gamma(a+1) binom(x+a, a)
    def bridge():
        rows = []
        for a in (0.5, 1.0, 2.5):
            for x in np.linspace(1.25, 19.75, 12):
                x = float(x)
                lhs = gamma(x + a + 1.0) / gamma(x + 1.0)
                rhs = gamma(a + 1.0) * binom(x + a, a)
                rows.append((x, lhs, rhs))
        return _identity_report("identities.binomial_bridge", rows, 1e-11, {"alphas": [0.5, 1.0, 2.5]})

    guarded("identities.binomial_bridge", bridge, {})

    # int F_{k+1} t^{s+1} = (s+1) int F_k t^s; boundary terms vanish
    def ibp_moment():
        rows = []
        for k in (0, 1, 2):
            for s in (3.0, 4.5, 6.0):
                lhs = integrate_kernel_moment(k + 1, s + 1.0, tol).value
                rhs = (s + 1.0) * integrate_kernel_moment(k, s, tol).value
                rows.append((s, lhs, rhs))
        return _identity_report("identities.ibp_moment", rows, 5 * tol, {"ks": [0, 1, 2], "tol": tol})

    guarded("identities.ibp_moment", ibp_moment, {"tol": tol})

    # Gamma(x+a+l)/Gamma(x+l) zeta(x+a)/zeta(x) as a ratio of F_l moments
    def ratio_form(ell=2):
        rows = []
        for x, a in pairs:
            lhs = _gamma_zeta_ratio(x, a, ell)
            top = integrate_kernel_moment(ell, x + a + ell - 1.0, tol).value
            bottom = integrate_kernel_moment(ell, x + ell - 1.0, tol).value
            rows.append((x, lhs, top / bottom))
        return _identity_report(
            "identities.ratio_form", rows, 5 * tol, {"ell": ell, "pairs": pairs, "tol": tol}
        )

    guarded("identities.ratio_form", ratio_form, {"tol": tol})
    return reports
