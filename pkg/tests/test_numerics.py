"""Quadrature, root-finding, maximization and special-function kernels."""

import math

import numpy as np
import pytest

from fadecap.numerics import (
    EULER_MASCHERONI,
    Bracket,
    BracketError,
    QuadratureError,
    QuadResult,
    digamma,
    find_root_monotone,
    gamma_fn,
    integrate_finite,
    integrate_semi_infinite,
    log_gamma,
    maximize_unimodal,
    reg_lower_inc_gamma,
)


class TestSemiInfiniteQuadrature:
    def test_exponential_normalization(self):
        res = integrate_semi_infinite(lambda z: math.exp(-z), 0.0)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert res.abs_error_estimate >= 0.0
        assert res.evaluations >= 1

    def test_gamma2_normalization(self):
        res = integrate_semi_infinite(lambda z: z * math.exp(-z), 0.0)
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_power_law_tail(self):
        res = integrate_semi_infinite(lambda z: z**-3, 1.0)
        assert res.value == pytest.approx(0.5, abs=1e-12)

    def test_shifted_lower_end(self):
        res = integrate_semi_infinite(lambda z: math.exp(-z), 3.0)
        assert res.value == pytest.approx(math.exp(-3.0), rel=1e-10)

    def test_knots_catch_narrow_feature(self):
        # a bump of width 0.02 at z = 3 is invisible to the first
        # coarse rule without a forced subdivision point
        def bump(z):
            return max(0.0, 1.0 - abs(z - 3.0) / 0.01) / 0.01

        res = integrate_semi_infinite(bump, 0.0, knots=(2.99, 3.0, 3.01))
        assert res.value == pytest.approx(1.0, rel=1e-9)

    def test_nonconvergent_integrand_raises_with_partial(self):
        # Fresnel-type oscillation is only conditionally convergent;
        # adaptive subdivision gives up and must surface its best guess
        with pytest.raises(QuadratureError) as excinfo:
            integrate_semi_infinite(lambda z: math.cos(z * z), 0.0)
        assert isinstance(excinfo.value.partial, QuadResult)
        assert math.isfinite(excinfo.value.partial.value)

    def test_bad_rel_tol(self):
        with pytest.raises(ValueError):
            integrate_semi_infinite(lambda z: math.exp(-z), 0.0, rel_tol=0.0)


class TestFiniteQuadrature:
    def test_constant(self):
        assert integrate_finite(lambda z: 1.0, 0.0, 1.0).value == pytest.approx(1.0)

    def test_linear(self):
        assert integrate_finite(lambda z: z, 0.0, 2.0).value == pytest.approx(2.0)

    def test_log_endpoint_singularity(self):
        res = integrate_finite(math.log, 0.0, 1.0)
        assert res.value == pytest.approx(-1.0, abs=1e-12)

    def test_degenerate_interval_is_exact_zero(self):
        res = integrate_finite(lambda z: 1e10, 0.7, 0.7)
        assert res.value == 0.0

    def test_reversed_interval_rejected(self):
        with pytest.raises(ValueError):
            integrate_finite(lambda z: 1.0, 1.0, 0.0)

    def test_linearity_property(self):
        # integrate(a f + b g) = a integrate(f) + b integrate(g)
        rng = np.random.default_rng(42)
        rel_tol = 1e-10
        for _ in range(10):
            c = rng.normal(size=4)
            a, b = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
            f = lambda z: c[0] * math.sin(z) + c[1] * z * z
            g = lambda z: c[2] * math.exp(-z) + c[3] * math.cos(2 * z)
            combined = integrate_finite(
                lambda z: a * f(z) + b * g(z), 0.0, 3.0, rel_tol
            ).value
            separate = (
                a * integrate_finite(f, 0.0, 3.0, rel_tol).value
                + b * integrate_finite(g, 0.0, 3.0, rel_tol).value
            )
            scale = max(1.0, abs(combined))
            assert abs(combined - separate) <= 10.0 * rel_tol * scale


class TestRootFinding:
    def test_linear(self):
        root = find_root_monotone(lambda x: x - 2.0, Bracket(0.0, 5.0), tol=1e-12)
        assert root == pytest.approx(2.0, abs=1e-10)

    def test_log(self):
        root = find_root_monotone(math.log, Bracket(0.1, 10.0))
        assert root == pytest.approx(1.0, abs=1e-10)

    def test_water_filling_constraint_residual(self):
        # cutoff for the two-branch diversity gain at unit power; the
        # defining constraint itself is the oracle
        def constraint(z_t):
            integral = integrate_semi_infinite(
                lambda z: (1.0 / z_t - 1.0 / z) * z * math.exp(-z), z_t
            ).value
            return integral - 1.0

        z_t = find_root_monotone(constraint, Bracket(1e-6, 1.0), tol=1e-14)
        assert abs(constraint(z_t)) < 1e-9
        # closed form: z_t e^{z_t} = 1, the omega constant
        assert z_t == pytest.approx(0.5671432904097838, abs=1e-9)

    def test_residual_scales_with_derivative(self):
        for fn, dfn, bracket in [
            (lambda x: x**3 - 8.0, lambda x: 3 * x * x, Bracket(0.0, 5.0)),
            (lambda x: math.expm1(x - 1.0), lambda x: math.exp(x - 1.0), Bracket(0.0, 3.0)),
        ]:
            tol = 1e-10
            root = find_root_monotone(fn, bracket, tol=tol)
            assert abs(fn(root)) <= 10.0 * abs(dfn(root)) * tol

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            find_root_monotone(lambda x: x * x + 1.0, Bracket(-1.0, 1.0))

    def test_invalid_bracket(self):
        with pytest.raises(ValueError):
            Bracket(2.0, 2.0)


class TestMaximizeUnimodal:
    def test_parabola(self):
        x, v = maximize_unimodal(lambda x: -((x - 3.0) ** 2), Bracket(0.0, 10.0), tol=1e-10)
        assert x == pytest.approx(3.0, abs=1e-6)
        assert v == pytest.approx(0.0, abs=1e-12)

    def test_x_exp_minus_x(self):
        x, _ = maximize_unimodal(lambda x: x * math.exp(-x), Bracket(0.0, 10.0), tol=1e-10)
        assert x == pytest.approx(1.0, abs=1e-6)

    def test_value_dominates_bracket_ends(self):
        h = lambda x: math.sin(x)
        x, v = maximize_unimodal(h, Bracket(0.5, 3.0))
        assert v >= h(0.5) and v >= h(3.0)

    def test_log_bracket(self):
        h = lambda x: -((math.log(x) - math.log(0.01)) ** 2)
        x, _ = maximize_unimodal(h, Bracket(1e-6, 1e2), tol=1e-10)
        assert x == pytest.approx(0.01, rel=1e-4)


class TestSpecialFunctions:
    def test_digamma_at_one(self):
        assert digamma(1.0) == pytest.approx(-EULER_MASCHERONI, abs=1e-12)

    def test_digamma_recurrence(self):
        for x in np.linspace(0.5, 50.0, 100):
            assert digamma(x + 1.0) - digamma(x) == pytest.approx(1.0 / x, abs=1e-12)

    def test_gamma_factorial(self):
        assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14)

    def test_log_gamma_consistency(self):
        for x in (0.5, 1.0, 3.7, 20.0):
            assert log_gamma(x) == pytest.approx(math.log(gamma_fn(x)), rel=1e-12)

    @pytest.mark.parametrize("z", [0.0, 1.0, 2.0])
    def test_reg_lower_inc_gamma_exponential_cdf(self, z):
        assert reg_lower_inc_gamma(1.0, z) == pytest.approx(-math.expm1(-z), abs=1e-13)

    def test_reg_lower_inc_gamma_saturates(self):
        assert reg_lower_inc_gamma(2.0, 700.0) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize(
        "fn, bad",
        [
            (digamma, 0.0),
            (digamma, -1.0),
            (gamma_fn, 0.0),
            (log_gamma, -3.0),
        ],
    )
    def test_domain_errors(self, fn, bad):
        with pytest.raises(ValueError):
            fn(bad)

    def test_reg_lower_inc_gamma_domain(self):
        with pytest.raises(ValueError):
            reg_lower_inc_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            reg_lower_inc_gamma(1.0, -0.5)
