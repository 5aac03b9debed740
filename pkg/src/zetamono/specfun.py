"""Gamma, Riemann zeta, Dirichlet eta and lambda on real arguments.

Zeta is available through four independent routes:

* ``DIRECT``       sum of k**-x with an Euler-Maclaurin tail,
* ``ODD``          sum over odd integers (the lambda function) rescaled,
* ``ALTERNATING``  eta by Cohen-Rodriguez Villegas-Zagier acceleration, rescaled,
* ``INTEGRAL``     Bose moment quadrature divided by Gamma(x).

The alternating route is the default.
"""

import enum
import math
from fractions import Fraction
from functools import lru_cache

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "ZetaRoute",
    "gamma",
    "log_gamma",
    "log_abs_gamma",
    "zeta",
    "log_zeta",
    "eta",
    "lam",
    "MAX_SERIES_TERMS",
]

MAX_SERIES_TERMS = 10**6

# Lanczos approximation, g = 7, nine terms (Godfrey).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
# Gamma(x) exceeds DBL_MAX just above this point.
_GAMMA_MAX_ARG = 171.6243769563027


class ZetaRoute(enum.Enum):
    DIRECT = "direct"
    ODD = "odd"
    ALTERNATING = "alternating"
    INTEGRAL = "integral"


def _is_nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


def _sinpi(x):
    """sin(pi*x) with exact argument reduction, so integers give exactly 0."""
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r == 0.0 or abs(r) == 1.0:
        return 0.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _lanczos_sum(z):
    # z is x - 1 for Gamma(x)
    a = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        a += _LANCZOS_COEF[i] / (z + i)
    return a


def gamma(x):
    """Euler gamma function for real ``x``.

    Raises
    ------
    PoleError
        If ``x`` is zero or a negative integer.
    OverflowError
        If the result is not representable as a double.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("gamma requires a finite argument")
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x = {x:g}")
    if x < 0.5:
        s = _sinpi(x)
        g1 = gamma(1.0 - x)
        denom = s * g1
        if denom == 0.0 or math.isinf(g1):
            # |Gamma(x)| underflows for large negative non-integers
            return 0.0
        result = math.pi / denom
        if math.isinf(result):
            raise OverflowError(f"gamma({x!r}) overflows")
        return result
    if x > _GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x!r}) overflows")
    if x.is_integer() and x <= 23:
        return float(math.factorial(int(x) - 1))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    half = math.pow(t, 0.5 * (z + 0.5))
    result = _SQRT_2PI * _lanczos_sum(z) * half * (half * math.exp(-t))
    if math.isinf(result):
        raise OverflowError(f"gamma({x!r}) overflows")
    return result


def log_gamma(x):
    """Natural log of Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        # Gamma is finite and well conditioned here; reflection not needed
        return math.log(gamma(x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + math.log(_lanczos_sum(z)) + (z + 0.5) * math.log(t) - t


def log_abs_gamma(x):
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))`` for any non-pole real x."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x = {x:g}")
    if x > 0:
        return log_gamma(x), 1.0
    s = _sinpi(x)
    sign = -1.0 if math.floor(x) % 2 else 1.0
    return math.log(math.pi / abs(s)) - log_gamma(1.0 - x), sign


# --- Bernoulli numbers for the Euler-Maclaurin tail -------------------------


@lru_cache(maxsize=None)
def _bernoulli(n):
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return b[n]


# B_{2j} / (2j)! for j = 1..15, as floats
_EM_COEF = tuple(float(_bernoulli(2 * j) / math.factorial(2 * j)) for j in range(1, 16))


def _em_zeta_sum(x, scale, shift, rel_tol=1e-17):
    """Sum_{k>=1} (scale*k + shift)**(-x) via partial sum plus Euler-Maclaurin tail.

    ``scale, shift`` is (1, 0) for the full series and (2, -1) for odd terms.
    """
    n = max(10, int(math.ceil(x / 4.0)) + 1)
    while n <= MAX_SERIES_TERMS:
        terms = [math.pow(scale * k + shift, -x) for k in range(1, n)]
        head = math.fsum(terms)
        base = scale * n + shift
        f_n = math.pow(base, -x)
        tail = [math.pow(base, 1.0 - x) / (scale * (x - 1.0)), 0.5 * f_n]
        # derivative of (scale*u + shift)**-x of order r at u = n
        deriv = f_n
        rising = 1.0
        converged = False
        prev = math.inf
        order = 0
        for j, coef in enumerate(_EM_COEF, start=1):
            while order < 2 * j - 1:
                rising *= -(x + order) * scale / base
                order += 1
            term = -coef * deriv * rising
            if abs(term) > prev:
                break
            tail.append(term)
            prev = abs(term)
            if abs(term) <= rel_tol * (head + tail[0]):
                converged = True
                break
        if converged:
            return math.fsum(terms + tail)
        n *= 4
    raise ConvergenceError(f"Euler-Maclaurin zeta sum did not converge at x = {x!r}")


# --- accelerated alternating series ----------------------------------------

_CVZ_TERMS = 32


@lru_cache(maxsize=None)
def _cvz_weights(n):
    """Weights w_k such that sum (-1)^k a_k ~= sum w_k a_k for totally monotone a_k."""
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    weights = []
    for k in range(n):
        c = b - c
        weights.append(c / d)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return tuple(weights)


def _eta_accelerated(x):
    w = _cvz_weights(_CVZ_TERMS)
    return math.fsum(wk * math.pow(k + 1.0, -x) for k, wk in enumerate(w))


def _require_gt_one(x, name):
    x = float(x)
    if math.isnan(x):
        raise DomainError(f"{name} requires a finite argument")
    if x == 1.0:
        raise PoleError(f"{name} requires x > 1: pole at x = 1")
    if x < 1.0:
        raise DomainError(f"{name} requires x > 1, got x = {x!r}")
    return x


def eta(x):
    """Dirichlet eta function, sum of (-1)**(k-1) / k**x, for x > 1."""
    x = _require_gt_one(x, "eta")
    return _eta_accelerated(x)


def lam(x):
    """Dirichlet lambda function, sum of 1 / (2k-1)**x, for x > 1."""
    x = _require_gt_one(x, "lambda")
    return _em_zeta_sum(x, 2.0, -1.0)


def zeta(x, route=ZetaRoute.ALTERNATING):
    """Riemann zeta function for real x > 1.

    Parameters
    ----------
    x : float
        Argument, strictly greater than one.
    route : ZetaRoute or str
        Evaluation method; all four agree to within their accuracy contracts.
    """
    route = ZetaRoute(route)
    x = _require_gt_one(x, "zeta")
    if route is ZetaRoute.DIRECT:
        return _em_zeta_sum(x, 1.0, 0.0)
    if route is ZetaRoute.ODD:
        # 1 - 2**-x, formed without cancellation
        return lam(x) / -math.expm1(-x * math.log(2.0))
    if route is ZetaRoute.ALTERNATING:
        return _eta_accelerated(x) / -math.expm1((1.0 - x) * math.log(2.0))
    from .quad import integrate_bose_moment

    res = integrate_bose_moment(x, 1e-12)
    return math.exp(math.log(res.value) - log_gamma(x))


def log_zeta(x, route=ZetaRoute.ALTERNATING):
    """ln zeta(x), accurate for large x where zeta(x) - 1 is tiny."""
    x = _require_gt_one(x, "zeta")
    if x > 40.0:
        # zeta(x) - 1 = 2**-x + 3**-x + ... without forming 1 + tiny first
        excess = math.fsum(math.pow(k, -x) for k in range(2, 40))
        return math.log1p(excess)
    return math.log(zeta(x, route))
