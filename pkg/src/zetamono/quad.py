"""Adaptive Gauss-Kronrod quadrature for moments of the Bose kernels.

Two families are supported:

    integrate_bose_moment(s)       = int_0^inf t^(s-1) / (e^t - 1) dt = Gamma(s) zeta(s)
    integrate_kernel_moment(k, s)  = int_0^inf F(k, t) t^s dt

Each integral is split at t = 1.  On [0, 1] the integrand behaves like
k! t^(s-k-1); when that exponent is negative the substitution u = t^(s-k)
removes the endpoint singularity.  [1, T] is integrated directly and the
tail beyond T is bounded analytically.
"""

import heapq
import math
from dataclasses import dataclass

from .bose_kernel import F, F_scaled, K_MAX
from .errors import DomainError, RangeError, ToleranceNotMet

__all__ = [
    "QuadratureResult",
    "gauss_kronrod_15",
    "integrate_adaptive",
    "integrate_bose_moment",
    "integrate_kernel_moment",
    "kernel_tail_constant",
    "truncation_point",
    "TOL_MIN",
    "TOL_MAX",
    "MAX_PANELS",
]

TOL_MIN = 1e-13
TOL_MAX = 1e-4
MAX_PANELS = 10_000

# 15-point Kronrod nodes (non-negative half) and weights, with the embedded
# 7-point Gauss weights at the odd-indexed nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions: int
    truncation_point: float


def gauss_kronrod_15(f, a, b):
    """Return (K15 estimate, error estimate) of the integral of f over [a, b]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fc = f(mid)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    resabs = abs(kron)
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(mid - dx)
        f2 = f(mid + dx)
        kron += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            gauss += _WG[j // 2] * (f1 + f2)
    kron *= half
    gauss *= half
    resabs *= abs(half)
    err = max(abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err


def _adaptive(segments, rel_tol, max_panels):
    """Bisect the worst panel until total error <= rel_tol * |total|.

    ``segments`` is a list of (f, a, b, n_initial).  Returns
    (value, error, panel_count).
    """
    heap = []
    counter = 0
    for f, a, b, n in segments:
        edges = [a + (b - a) * i / n for i in range(n + 1)]
        for lo, hi in zip(edges[:-1], edges[1:]):
            val, err = gauss_kronrod_15(f, lo, hi)
            heap.append((-err, counter, lo, hi, val, f))
            counter += 1
    heapq.heapify(heap)
    while True:
        total = math.fsum(p[4] for p in heap)
        error = math.fsum(-p[0] for p in heap)
        if error <= rel_tol * abs(total):
            return total, error, len(heap)
        if len(heap) >= max_panels:
            raise ToleranceNotMet(
                f"adaptive quadrature exhausted {max_panels} panels "
                f"(error {error:.3g}, value {total:.17g})"
            )
        _, _, lo, hi, _, f = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for a, b in ((lo, mid), (mid, hi)):
            val, err = gauss_kronrod_15(f, a, b)
            heapq.heappush(heap, (-err, counter, a, b, val, f))
            counter += 1


def integrate_adaptive(f, a, b, tol=1e-10, initial_panels=1, max_panels=MAX_PANELS):
    """Integrate a smooth f over the finite interval [a, b] to relative ``tol``."""
    value, err, n = _adaptive([(f, a, b, initial_panels)], tol, max_panels)
    return QuadratureResult(value, err, n, b)


def kernel_tail_constant(k, T=1.0):
    """C such that F(k, t) <= C e^(-t) for all t >= T >= 1."""
    if k == 0:
        return 1.0 / -math.expm1(-T)
    return math.factorial(k + 1) * 2.0 ** (k + 1)


def _tail_bound(k, s, T):
    # int_T^inf t^s e^-t dt <= T^s e^-T / (1 - s/T) for T > s
    log_tail = s * math.log(T) - T - math.log1p(-s / T) if s > 0 else -T
    return kernel_tail_constant(k, T) * math.exp(log_tail)


def truncation_point(s):
    return max(50.0, 3.0 * s + 40.0)


def _check_tol(tol):
    if not TOL_MIN <= tol <= TOL_MAX:
        raise DomainError(f"tol must lie in [{TOL_MIN:g}, {TOL_MAX:g}], got {tol!r}")


def integrate_kernel_moment(k, s, tol=1e-10, max_panels=MAX_PANELS):
    """int_0^inf F(k, t) t^s dt for s > k, to relative tolerance ``tol``."""
    if not 0 <= k <= K_MAX:
        raise RangeError(f"kernel order k = {k} outside 0..{K_MAX}")
    s = float(s)
    if not s > k:
        raise DomainError(f"kernel moment needs s > k, got s = {s!r}, k = {k}")
    _check_tol(tol)

    # near 0: F(k, t) t^s = t^a * F_scaled(k, t) with a > -1
    a = s - k - 1.0
    if a < 0.0:
        power = 1.0 / (a + 1.0)

        def head(u):
            return F_scaled(k, u**power) * power

    else:

        def head(t):
            return t**a * F_scaled(k, t)

    def body(t):
        return t**s * F(k, t)

    T = truncation_point(s)
    body_panels = max(4, int(T // 5))
    while True:
        value, err, n = _adaptive(
            [(head, 0.0, 1.0, 4), (body, 1.0, T, body_panels)], 0.5 * tol, max_panels
        )
        tail = _tail_bound(k, s, T)
        if tail <= 0.5 * tol * abs(value):
            break
        T *= 1.5
    return QuadratureResult(value, err + tail, n, T)


def integrate_bose_moment(s, tol=1e-10, max_panels=MAX_PANELS):
    """int_0^inf t^(s-1)/(e^t - 1) dt, which equals Gamma(s) zeta(s), for s > 1."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"Bose moment diverges unless s > 1, got s = {s!r}")
    return integrate_kernel_moment(0, s - 1.0, tol, max_panels)
