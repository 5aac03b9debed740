"""Derivatives of 1/(e^t - 1) as polynomials in x = 1/(e^t - 1).

For k >= 0

    d^k/dt^k [1/(v e^{th t} - 1)] = (-1)^k th^k sum_{p=1}^{k+1} (p-1)! S(k+1, p) x^p,

with x = 1/(v e^{th t} - 1).  ``F(k, t)`` is the signed derivative
(-1)^k (1/(e^t - 1))^(k), which is the polynomial itself at v = th = 1.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import stirling2
from .errors import DomainError, RangeError, SingularityError

__all__ = [
    "KernelParams",
    "K_MAX",
    "kernel_coefficients",
    "kernel_base",
    "general_derivative",
    "F",
    "F_ratio",
    "F_scaled",
]

K_MAX = 30


@dataclass(frozen=True)
class KernelParams:
    vartheta: float = 1.0
    theta: float = 1.0
    k: int = 0

    def __post_init__(self):
        if self.vartheta == 0 or self.theta == 0:
            raise DomainError("vartheta and theta must both be non-zero")
        if self.k < 0:
            raise DomainError("derivative order k must be non-negative")


@lru_cache(maxsize=None)
def kernel_coefficients_exact(k):
    """Exact integers (p-1)! S(k+1, p) for p = 1..k+1."""
    return tuple(math.factorial(p - 1) * stirling2(k + 1, p) for p in range(1, k + 2))


@lru_cache(maxsize=None)
def kernel_coefficients(k):
    """Float coefficients of the order-k kernel polynomial, lowest power first."""
    if not 0 <= k <= K_MAX:
        raise RangeError(f"kernel order k = {k} outside 0..{K_MAX}")
    return tuple(float(c) for c in kernel_coefficients_exact(k))


def _horner(coefs, x):
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


def _require_positive(t):
    t = float(t)
    if not t > 0:
        raise DomainError(f"t must be positive, got t = {t!r}")
    return t


def kernel_base(t):
    """1/(e^t - 1) for t > 0, accurate for small and large t."""
    t = _require_positive(t)
    if t > 1.0:
        e = math.exp(-t)
        return e / -math.expm1(-t)
    return 1.0 / math.expm1(t)


def _denominator(params, t):
    """v e^{th t} - 1 without cancellation near its zero."""
    arg = params.theta * t
    if params.vartheta > 0:
        shifted = arg + math.log(params.vartheta)
        if shifted > 709.0:
            return math.inf
        return math.expm1(shifted)
    if arg > 709.0:
        return -math.inf
    return params.vartheta * math.exp(arg) - 1.0


def general_derivative(params, t):
    """k-th derivative of 1/(vartheta e^{theta t} - 1), signed."""
    t = float(t)
    den = _denominator(params, t)
    if den == 0.0:
        raise SingularityError(
            f"vartheta*exp(theta*t) - 1 vanishes at t = {t!r} "
            f"(t = -ln(vartheta)/theta is excluded)"
        )
    x = 1.0 / den
    k = params.k
    poly = x * _horner(kernel_coefficients(k), x)
    sign = -1.0 if k % 2 else 1.0
    return sign * params.theta**k * poly


def F(k, t):
    """(-1)^k times the k-th derivative of 1/(e^t - 1); positive for t > 0.

    Returns ``math.inf`` when the value exceeds the double range (tiny t, large k).
    """
    t = _require_positive(t)
    coefs = kernel_coefficients(k)
    x = kernel_base(t)
    value = x * _horner(coefs, x)
    if not math.isfinite(value):
        return math.inf
    if x > 0.0 and not value > 0.0:
        raise ArithmeticError(f"F({k}, {t!r}) evaluated non-positive")
    return value


def F_scaled(k, t):
    """t^(k+1) F(k, t), bounded on [0, 1] and equal to k! at t = 0.

    Each term is written as (t/(e^t-1))^p t^(k+1-p), so nothing overflows as
    t -> 0.
    """
    t = float(t)
    if t < 0:
        raise DomainError(f"t must be non-negative, got t = {t!r}")
    coefs = kernel_coefficients(k)
    if t == 0.0:
        return coefs[-1]
    q = t / math.expm1(t) if t <= 1.0 else t * kernel_base(t)
    # sum_p c_p q^p t^(k+1-p): Horner in q/t, scaled by t^(k+1)
    acc = 0.0
    for p in range(k + 1, 0, -1):
        acc = acc * q + coefs[p - 1] * t ** (k + 1 - p)
    return acc * q


def F_ratio(k, t):
    """F(k+1, t) / F(k, t), formed without overflow for small t.

    Numerator and denominator share the factor x; for x > 1 both are
    rewritten in y = 1/x = e^t - 1 after dividing out x^(k+1).
    """
    t = _require_positive(t)
    num = kernel_coefficients(k + 1)
    den = kernel_coefficients(k)
    if t >= math.log(2.0):
        x = kernel_base(t)
        return _horner(num, x) / _horner(den, x)
    y = math.expm1(t)
    # num/x^(k+1) = sum_p a_p y^(k+1-p) for p=1..k+2, i.e. a_{k+2}/y + poly(y)
    top = 0.0
    for c in num[:-1]:
        top = top * y + c
    bottom = 0.0
    for c in den:
        bottom = bottom * y + c
    return (top + num[-1] / y) / bottom
