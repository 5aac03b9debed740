"""Riemann zeta, gamma and Bose-kernel functions, with grid-based numerical
certification of monotonicity and log-convexity properties."""

from .bose_kernel import F, F_ratio, KernelParams, general_derivative, kernel_base
from .combinatorics import (
    BinomialCase,
    DivergenceResult,
    StirlingTable,
    binom,
    classify_binomial,
    falling_factorial,
    stirling2,
)
from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    RangeError,
    SingularityError,
    SpecialFunctionError,
    ToleranceNotMet,
)
from .quad import QuadratureResult, integrate_bose_moment, integrate_kernel_moment
from .specfun import ZetaRoute, eta, gamma, lam, log_gamma, zeta
from .verify import (
    GridSpec,
    Spacing,
    Verdict,
    VerificationReport,
    check_proof_identities,
    ratio_of_integrals,
    scan_log_convexity,
    scan_proposition_ratio,
    scan_theorem1_monotone,
    theorem1_ratio,
)

__version__ = "0.1.0"
