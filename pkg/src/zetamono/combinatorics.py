"""Stirling numbers of the second kind, falling factorials and the extended
binomial coefficient on real arguments."""

import enum
import math
from functools import lru_cache

from .errors import RangeError
from .specfun import log_abs_gamma

__all__ = [
    "StirlingTable",
    "stirling2",
    "stirling2_explicit",
    "bell_numbers",
    "falling_factorial",
    "BinomialCase",
    "classify_binomial",
    "binom",
    "DivergenceResult",
    "DEFAULT_K_MAX",
]

DEFAULT_K_MAX = 64


class StirlingTable:
    """Exact triangle S(k, p), 0 <= p <= k <= k_max, built from the recurrence
    S(k+1, p) = p*S(k, p) + S(k, p-1)."""

    def __init__(self, k_max=DEFAULT_K_MAX):
        if k_max < 0:
            raise RangeError("k_max must be non-negative")
        self.k_max = k_max
        rows = [(1,)]
        for k in range(k_max):
            prev = rows[-1]
            row = [0] * (k + 2)
            for p in range(1, k + 2):
                left = prev[p] if p <= k else 0
                row[p] = p * left + prev[p - 1]
            rows.append(tuple(row))
        self._rows = tuple(rows)

    def __call__(self, k, p):
        if not 0 <= k <= self.k_max:
            raise RangeError(f"k = {k} outside table range 0..{self.k_max}")
        if not 0 <= p <= k:
            raise RangeError(f"need 0 <= p <= k, got k = {k}, p = {p}")
        return self._rows[k][p]

    def row(self, k):
        if not 0 <= k <= self.k_max:
            raise RangeError(f"k = {k} outside table range 0..{self.k_max}")
        return self._rows[k]


@lru_cache(maxsize=None)
def _default_table():
    return StirlingTable(DEFAULT_K_MAX)


def stirling2(k, p):
    """S(k, p) from the shared default table (k_max = 64)."""
    return _default_table()(k, p)


def stirling2_explicit(k, p):
    """S(k, p) from the alternating sum over q, in exact integer arithmetic."""
    if not 0 <= p <= k:
        raise RangeError(f"need 0 <= p <= k, got k = {k}, p = {p}")
    if p == 0:
        return 1 if k == 0 else 0
    total = sum((-1) ** (p - q) * math.comb(p, q) * q**k for q in range(1, p + 1))
    value, rem = divmod(total, math.factorial(p))
    assert rem == 0
    return value


def bell_numbers(n):
    """Bell numbers B_0..B_n from B_{m+1} = sum_i C(m, i) B_i."""
    bells = [1]
    for m in range(n):
        bells.append(sum(math.comb(m, i) * bells[i] for i in range(m + 1)))
    return bells


def falling_factorial(beta, n):
    """<beta>_n = beta (beta-1) ... (beta-n+1), with <beta>_0 = 1."""
    if n < 0:
        raise RangeError("falling factorial order must be non-negative")
    result = 1.0
    for k in range(n):
        result *= beta - k
    return result


class BinomialCase(enum.Enum):
    GAMMA_RATIO = "GammaRatio"
    ZERO = "Zero"
    FALLING_OVER_W = "FallingOverW"
    FALLING_OVER_ZW = "FallingOverZW"
    ZERO_NEGATIVE = "ZeroNegative"
    INFINITE = "Infinite"


class DivergenceResult(float):
    """Infinite binomial value, tagged so callers can tell it from overflow."""

    def __new__(cls):
        return super().__new__(cls, math.inf)

    def __repr__(self):
        return "DivergenceResult(inf)"


# integrality is exact: no tolerance, a branch boundary must not move
def _is_int(v):
    return float(v).is_integer()


def _in_n_minus(v):
    return v < 0 and _is_int(v)


def _in_n0(v):
    return v >= 0 and _is_int(v)


def classify_binomial(z, w):
    """Pick the branch of the six-case extended binomial definition for (z, w)."""
    z = float(z)
    w = float(w)
    if not (math.isfinite(z) and math.isfinite(w)):
        raise ValueError("binomial arguments must be finite")
    d = z - w
    if not _in_n_minus(z):
        if not _in_n_minus(w) and not _in_n_minus(d):
            return BinomialCase.GAMMA_RATIO
        return BinomialCase.ZERO
    if _in_n0(w):
        return BinomialCase.FALLING_OVER_W
    if _in_n_minus(w):
        if _in_n0(d):
            return BinomialCase.FALLING_OVER_ZW
        return BinomialCase.ZERO_NEGATIVE
    return BinomialCase.INFINITE


def _falling_over_factorial(z, n):
    """<z>_n / n! with exact n! for n <= 20."""
    if n <= 20:
        return falling_factorial(z, n) / math.factorial(n)
    result = 1.0
    for k in range(n):
        result *= (z - k) / (k + 1)
    return result


def binom(z, w):
    """Extended binomial coefficient C(z, w) for real z, w.

    Returns a :class:`DivergenceResult` when z is a negative integer and w is
    not an integer.
    """
    case = classify_binomial(z, w)
    z = float(z)
    w = float(w)
    if case is BinomialCase.GAMMA_RATIO:
        if z >= 0 and _is_int(z) and _is_int(w) and z <= 1000:
            return float(math.comb(int(z), int(w)))
        lz, sz = log_abs_gamma(z + 1.0)
        lw, sw = log_abs_gamma(w + 1.0)
        ld, sd = log_abs_gamma(z - w + 1.0)
        log_mag = lz - lw - ld
        if log_mag > 709.78:
            return sz * sw * sd * math.inf
        return sz * sw * sd * math.exp(log_mag)
    if case is BinomialCase.FALLING_OVER_W:
        return _falling_over_factorial(z, int(w))
    if case is BinomialCase.FALLING_OVER_ZW:
        return _falling_over_factorial(z, int(z - w))
    if case is BinomialCase.INFINITE:
        return DivergenceResult()
    return 0.0
