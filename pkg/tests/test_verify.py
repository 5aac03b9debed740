import math

import numpy as np
import pytest

from zetamono.errors import DomainError
from zetamono.quad import integrate_kernel_moment
from zetamono.specfun import log_gamma, log_zeta
from zetamono.verify import (
    CONVEX_GRID,
    T_GRID,
    X_GRID,
    GridSpec,
    Integrand,
    Spacing,
    Verdict,
    VerificationReport,
    _gamma_zeta_ratio,
    check_monotonicity_rule,
    check_proof_identities,
    cm_spot_check,
    ratio_of_integrals,
    reports_from_json,
    reports_to_json,
    richardson_derivative,
    scan_convexity,
    scan_increasing,
    scan_log_convexity,
    scan_proposition_ratio,
    scan_theorem1_monotone,
    theorem1_endpoints,
    theorem1_ratio,
)

# binom(3, 1) zeta(3) / zeta(2), frozen from mpmath at 40 digits
T1_RATIO_2_1_0 = 2.1922889082043153


class TestGridSpec:
    def test_log_grid(self):
        xs = GridSpec(1.0, 100.0, 3).abscissae()
        assert xs == pytest.approx([1.0, 10.0, 100.0], rel=1e-15)

    def test_linear_grid(self):
        assert GridSpec(0.0, 1.0, 5, Spacing.LINEAR).abscissae() == [0.0, 0.25, 0.5, 0.75, 1.0]

    @pytest.mark.parametrize(
        "args", [(2.0, 1.0, 10), (1.0, 1.0, 10), (1.0, 2.0, 1), (0.0, 2.0, 10), (-1.0, 2.0, 10)]
    )
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            GridSpec(*args)

    def test_refined_keeps_old_points(self):
        g = GridSpec(1.01, 40.0, 21)
        fine = g.refined().abscissae()
        assert len(fine) == 41
        np.testing.assert_allclose(fine[::2], g.abscissae(), rtol=1e-14)

    def test_defaults(self):
        assert (X_GRID.points, T_GRID.points, CONVEX_GRID.points) == (200, 300, 100)


class TestTheorem1Ratio:
    def test_frozen_value(self):
        assert theorem1_ratio(2, 1, 0) == pytest.approx(T1_RATIO_2_1_0, rel=1e-13)

    def test_increases(self):
        assert theorem1_ratio(10, 0.5, 3) > theorem1_ratio(2, 0.5, 3)

    def test_endpoints(self):
        assert theorem1_ratio(1.0001, 1, 0) < 1e-3
        assert theorem1_ratio(40, 1, 0) > 40

    @pytest.mark.parametrize("x,alpha", [(1.0, 1.0), (0.5, 1.0), (2.0, 0.0), (2.0, -1.0)])
    def test_domain(self, x, alpha):
        with pytest.raises(DomainError):
            theorem1_ratio(x, alpha, 0)

    def test_negative_ell(self):
        with pytest.raises(DomainError):
            theorem1_ratio(2.0, 1.0, -1)

    def test_huge_binomial_stays_finite(self):
        # binom(300, 200) alone is ~1e81; the log path must not overflow
        assert math.isfinite(theorem1_ratio(40.0, 200.0, 60))


class TestScans:
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5])
    @pytest.mark.parametrize("ell", [0, 1, 4])
    def test_theorem1_monotone(self, alpha, ell):
        r = scan_theorem1_monotone(alpha, ell)
        assert r.passed and r.samples == 200
        assert r.worst_margin > 0

    def test_endpoint_report(self):
        assert theorem1_endpoints().passed

    @pytest.mark.parametrize("ell", [1, 2, 5])
    def test_log_convexity(self, ell):
        r = scan_log_convexity(ell)
        assert r.passed and r.samples == 100

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_proposition_ratio(self, k):
        r = scan_proposition_ratio(k)
        assert r.passed
        assert r.parameters["min_value"] > 1
        assert abs(r.parameters["end_value"] - 1) <= 1e-8

    def test_negated_monotone_control_fails(self):
        r = scan_increasing(
            "control", lambda x: -theorem1_ratio(x, 1.0, 0), X_GRID.abscissae(), 1e-12
        )
        assert r.verdict is Verdict.FAIL
        assert r.worst_margin < -1e-12

    def test_negated_convex_control_fails(self):
        f = lambda x: -(log_gamma(x + 1) + log_zeta(x))
        r = scan_convexity("control", f, CONVEX_GRID.abscissae(), 1e-3, 1e-8)
        assert r.verdict is Verdict.FAIL

    def test_increasing_ratio_fails_decreasing_scan(self):
        pts = X_GRID.abscissae()
        r = scan_increasing("control", lambda x: theorem1_ratio(x, 1.0, 0), pts, 1e-12, decreasing=True)
        assert not r.passed

    def test_grid_outside_domain(self):
        with pytest.raises(DomainError):
            scan_theorem1_monotone(1.0, 0, GridSpec(0.5, 3.0, 10))
        with pytest.raises(DomainError):
            scan_log_convexity(0)

    def test_failed_evaluation_becomes_fail_report(self):
        r = scan_increasing("broken", lambda x: log_zeta(x), [2.0, 1.5, 1.0], 0.0)
        assert r.verdict is Verdict.FAIL
        assert r.worst_margin == -math.inf
        assert r.worst_point == 1.0
        assert "PoleError" in r.parameters["error"]

    def test_refinement_stable(self):
        g = GridSpec(1.01, 40.0, 50)
        coarse = scan_theorem1_monotone(1.0, 1, g)
        fine = scan_theorem1_monotone(1.0, 1, g.refined())
        assert coarse.passed and fine.passed

    def test_deterministic(self):
        a = [scan_theorem1_monotone(0.5, 4), scan_proposition_ratio(2), check_proof_identities()[0]]
        b = [scan_theorem1_monotone(0.5, 4), scan_proposition_ratio(2), check_proof_identities()[0]]
        assert a == b
        assert reports_to_json(a) == reports_to_json(b)


class TestLemma4:
    def test_spot_check_passes(self):
        r = cm_spot_check()
        assert r.passed and r.samples == 15

    def test_sign_pattern(self):
        for n in range(5):
            for t in (0.5, 1.0, 3.0):
                f = lambda s: 1 / math.expm1(s)
                assert (-1) ** n * richardson_derivative(f, t, n) >= 0

    def test_richardson_accuracy(self):
        assert richardson_derivative(math.exp, 1.0, 3) == pytest.approx(math.e, rel=1e-9)


class TestMonotonicityRule:
    def test_case_with_increasing_quotient(self):
        # U/V = t**alpha increases, so R increases
        hyp, concl = check_monotonicity_rule(Integrand(1, 2.0), Integrand(1, 1.0), [2.0, 4.0, 8.0])
        assert hyp.passed and concl.passed
        assert concl.claim_id.endswith("increasing")

    def test_case_with_decreasing_quotient(self):
        hyp, concl = check_monotonicity_rule(Integrand(1, 0.0), Integrand(1, 1.0), [2.0, 4.0, 8.0])
        assert hyp.passed and concl.passed
        assert concl.claim_id.endswith("decreasing")

    def test_equal_integrands_give_one(self):
        u = Integrand(1, 1.0)
        for x in (2.0, 5.0):
            assert ratio_of_integrals(u, u, x) == 1.0

    def test_bose_derivative_constructor(self):
        assert Integrand.bose_derivative(3.0) == Integrand(1, 3.0)


class TestIdentities:
    def test_all_pass(self):
        reports = check_proof_identities(1e-9)
        assert [r.claim_id for r in reports] == [
            "identities.ibp_ratio",
            "identities.binomial_bridge",
            "identities.ibp_moment",
            "identities.ratio_form",
        ]
        assert all(r.passed for r in reports)

    def test_unshifted_exponents_do_not_match(self):
        # the moment powers must carry ell - 1, not ell
        x, a, ell, tol = 3.0, 0.5, 2, 1e-10
        lhs = _gamma_zeta_ratio(x, a, ell)
        wrong = (
            integrate_kernel_moment(ell, x + a + ell, tol).value
            / integrate_kernel_moment(ell, x + ell, tol).value
        )
        right = (
            integrate_kernel_moment(ell, x + a + ell - 1, tol).value
            / integrate_kernel_moment(ell, x + ell - 1, tol).value
        )
        assert abs(right - lhs) <= 1e-9 * lhs
        assert abs(wrong - lhs) > 1e-3 * lhs


class TestSerialization:
    def test_json_round_trip(self):
        reports = [scan_theorem1_monotone(1.0, 0), cm_spot_check(), *check_proof_identities()]
        back = reports_from_json(reports_to_json(reports))
        assert back == reports

    def test_failed_report_round_trip(self):
        r = scan_increasing("broken", log_zeta, [2.0, 1.0], 0.0)
        (back,) = reports_from_json(reports_to_json([r]))
        assert back == r and back.worst_margin == -math.inf

    def test_summary_line(self):
        r = VerificationReport("c", Verdict.PASS, 0.5, 2.0, 3, 0.0)
        assert r.summary_line() == "c PASS worst_margin=0.5 at x=2.0"
