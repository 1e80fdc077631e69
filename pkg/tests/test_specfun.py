"""Special-function layer: series values against independent references,
operator identities against quadrature and inversion routes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as G

from fracstoch.errors import GammaPole, InvalidParams
from fracstoch.laplace import forward_laplace, invert_laplace
from fracstoch.params import GenWrightSpec, InversionConfig, Method, PrabhakarParams, WrightParams
from fracstoch.specfun import (apply_regularized_D, generalized_wright,
                               ml_prabhakar, pochhammer, prabhakar_convolve,
                               wright)

# extended-precision direct summation, 50 digits (mpmath), frozen:
#   sum_r (-0.7)^r (2.5)_r / (r! Gamma(0.6 r + 1.2))
ML_A06_E12_X25_M07 = 0.21094701085977775712


class TestPochhammer:
    def test_zeroth_order_is_one(self):
        assert pochhammer(3.7, 0) == 1.0
        assert pochhammer(0.0, 0) == 1.0

    def test_zero_base_vanishes(self):
        assert pochhammer(0.0, 3) == 0.0

    def test_small_integer(self):
        assert pochhammer(3.0, 2) == 12.0

    def test_negative_integer_truncates(self):
        assert pochhammer(-2.0, 3) == 0.0

    def test_rejects_negative_order(self):
        with pytest.raises(InvalidParams):
            pochhammer(1.0, -1)

    @given(st.floats(-5, 5, allow_nan=False), st.integers(0, 20))
    @settings(max_examples=200, deadline=None)
    def test_matches_gamma_ratio(self, xi, r):
        # Gamma(xi+r)/Gamma(xi) wherever both Gammas are comfortably finite
        if any(abs((xi + k) - round(xi + k)) < 1e-3 and round(xi + k) <= 0
               for k in range(r + 1)):
            return
        want = G(xi + r) / G(xi)
        assert pochhammer(xi, r) == pytest.approx(want, rel=1e-9, abs=1e-12)

    @given(st.floats(-5, 5, allow_nan=False), st.integers(0, 15))
    @settings(max_examples=100, deadline=None)
    def test_recurrence(self, xi, r):
        assert pochhammer(xi, r + 1) == pytest.approx(
            pochhammer(xi, r) * (xi + r), rel=1e-12, abs=1e-250)


class TestMlPrabhakar:
    def test_exponential_case(self):
        p = PrabhakarParams(alpha=1, eta=1, xi=1, zeta=1)
        assert ml_prabhakar(p, 1.0) == pytest.approx(math.e, rel=1e-13)

    def test_xi_zero_is_constant(self):
        want = 1.0 / G(0.5)
        for alpha in (0.3, 0.8, 1.7):
            for x in (-2.0, 0.0, 1.5):
                p = PrabhakarParams(alpha=alpha, eta=0.5, xi=0, zeta=1)
                assert ml_prabhakar(p, x) == pytest.approx(want, rel=1e-12)

    def test_frozen_reference_value(self):
        p = PrabhakarParams(alpha=0.6, eta=1.2, xi=2.5, zeta=1)
        assert ml_prabhakar(p, -0.7) == pytest.approx(ML_A06_E12_X25_M07, rel=1e-12)

    def test_matches_two_parameter_series(self):
        # xi = 1 collapses (1)_r / r! to 1
        for x in np.linspace(-3, 3, 7):
            p = PrabhakarParams(alpha=0.8, eta=1.3, xi=1, zeta=1)
            direct = sum(x ** r / G(0.8 * r + 1.3) for r in range(300))
            assert ml_prabhakar(p, x) == pytest.approx(direct, rel=1e-10, abs=1e-12)

    def test_negative_integer_xi_is_finite_sum(self):
        p = PrabhakarParams(alpha=0.7, eta=0.9, xi=-3, zeta=1)
        x = 2.4
        want = sum(x ** r * pochhammer(-3, r) / (G(r + 1) * G(0.7 * r + 0.9))
                   for r in range(4))
        assert ml_prabhakar(p, x) == pytest.approx(want, rel=1e-13)

    def test_laplace_pair_identity(self):
        # int_0^inf t^(eta-1) e^(-pt) E(zeta t^alpha) dt = p^-eta (1-zeta p^-alpha)^-xi
        p = PrabhakarParams(alpha=0.7, eta=1.2, xi=1.5, zeta=-1.0)
        s = 2.0
        got = forward_laplace(lambda t: t ** 0.2 * ml_prabhakar(p, -t ** 0.7), s)
        want = s ** -1.2 * (1 + s ** -0.7) ** -1.5
        assert got == pytest.approx(want, rel=1e-8)

    def test_large_negative_argument_fallback(self):
        # cancellation regime: cross-check against extended-precision sum
        # (series peak near exp(667), so the float64 path must divert)
        import mpmath as mp
        p = PrabhakarParams(alpha=0.6, eta=1.0, xi=1.0, zeta=1)
        x = -50.0
        with mp.workdps(400):
            want = float(sum(mp.mpf(x) ** r * mp.rf(1.0, r)
                             / (mp.factorial(r) * mp.gamma(mp.mpf(6) / 10 * r + 1))
                             for r in range(5000)))
        assert ml_prabhakar(p, x) == pytest.approx(want, rel=1e-6)

    def test_rejects_nonpositive_alpha(self):
        with pytest.raises(InvalidParams):
            PrabhakarParams(alpha=0.0, eta=1.0, xi=1.0, zeta=1.0)


class TestWright:
    def test_a_zero_is_exponential(self):
        for x in np.linspace(-5, 5, 11):
            assert wright(WrightParams(0, 1), x) == pytest.approx(math.exp(x), rel=1e-10)

    def test_origin_value(self):
        assert wright(WrightParams(-0.5, 0.5), 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-14)

    def test_gaussian_reduction_value(self):
        # the diffusion solution at alpha=1, x=t=lambda=1 gives e^(-1/4)/sqrt(pi)
        want = math.exp(-0.25) / math.sqrt(math.pi)
        assert wright(WrightParams(-0.5, 0.5), -1.0) == pytest.approx(want, rel=1e-12)

    def test_boundary_region_enforced(self):
        with pytest.raises(InvalidParams):
            wright(WrightParams(-1.0, 0.5), 1.5)
        with pytest.raises(InvalidParams):
            wright(WrightParams(-1.0, -0.5), 0.5)
        with pytest.raises(InvalidParams):
            wright(WrightParams(-1.5, 1.0), 0.5)

    def test_a_minus_one_binomial_form(self):
        # reflection turns the a=-1 series into the binomial one:
        # W(-1, 1/2; x) = (1+x)^(-1/2) / sqrt(pi)
        assert wright(WrightParams(-1.0, 0.5), 0.3) == pytest.approx(
            (1.3) ** -0.5 / math.sqrt(math.pi), rel=1e-12)
        # at b = 1 every r >= 1 term sits on a Gamma pole and vanishes
        assert wright(WrightParams(-1.0, 1.0), 0.3) == pytest.approx(1.0, rel=1e-14)


class TestGeneralizedWright:
    def test_full_cancellation_gives_exp(self):
        g = GenWrightSpec(upper=((1, 1), (1, 1)), lower=((1, 1), (1, 1)))
        for x in (-2.0, 0.5, 3.0):
            assert generalized_wright(g, x) == pytest.approx(math.exp(x), rel=1e-12)

    def test_value_at_zero(self):
        g = GenWrightSpec(upper=((0.7, 1), (2.2, 0.5)), lower=((1.4, 1), (0.9, 2)))
        want = G(0.7) * G(2.2) / (G(1.4) * G(0.9))
        assert generalized_wright(g, 0.0) == pytest.approx(want, rel=1e-14)

    def test_numerator_pole_is_error(self):
        g = GenWrightSpec(upper=((0.0, 1.0), (1, 1)), lower=((1, 1), (1, 1)))
        with pytest.raises(GammaPole):
            generalized_wright(g, 0.5)

    def test_denominator_pole_zeroes_term(self):
        # lower (0,1): k=0 term vanishes, series = sum_{k>=1} x^k/(k! Gamma(k))
        g = GenWrightSpec(upper=((1, 0), (1, 0)), lower=((0.0, 1.0), (1, 0)))
        x = 0.8
        want = sum(x ** k / (G(k + 1) * G(k)) for k in range(1, 60))
        assert generalized_wright(g, x) == pytest.approx(want, rel=1e-12)

    def test_fourier_solution_two_representations_agree(self):
        # solution transform at (c beta^2 t^(g+n), lambda t^nu) = (0.2, 0.3),
        # delta = 1, gamma = nu = 0.4: Prabhakar form vs double-series form
        A, B, delta, gn, nu = 0.2, 0.3, 1.0, 0.8, 0.4
        form1 = sum((-A) ** r * ml_prabhakar(
            PrabhakarParams(alpha=nu, eta=r * gn + 1.0, xi=r * delta, zeta=1), -B)
            for r in range(80))
        form2 = ml_prabhakar(PrabhakarParams(alpha=gn, eta=1.0, xi=1.0, zeta=1), -A)
        for m in range(1, 60):
            g = GenWrightSpec(upper=((1.0, 1.0), (float(m), delta)),
                              lower=((0.0, delta), (1.0 + nu * m, gn)))
            term = (-B) ** m / math.factorial(m) * generalized_wright(g, -A)
            form2 += term
            if abs(term) < 1e-17:
                break
        assert form1 == pytest.approx(form2, rel=1e-12)


SAIGO_POINTS = [
    (1.5, 0.7, 0.9, 2.0, -1.0, 1.0),
    (1.0, 0.5, 0.6, 1.2, -0.8, 2.0),
    (0.7, 0.9, 1.4, 0.5, 0.5, 0.5),
    (2.5, 0.4, 0.3, 3.0, -2.0, 1.3),
    (0.5, 0.6, 0.8, 1.0, -1.0, 0.7),
]


class TestPrabhakarConvolve:
    @pytest.mark.parametrize("beta,alpha,theta,xi,zeta,t", SAIGO_POINTS)
    def test_convolution_identity(self, beta, alpha, theta, xi, zeta, t):
        p = PrabhakarParams(alpha=alpha, eta=theta, xi=xi, zeta=zeta)
        got = prabhakar_convolve(beta, p, theta, t)
        closed = PrabhakarParams(alpha=alpha, eta=theta + beta, xi=-xi, zeta=zeta)
        want = G(beta) * t ** (theta + beta - 1.0) * ml_prabhakar(closed, zeta * t ** alpha)
        assert got == pytest.approx(want, rel=1e-8)

    def test_xi_zero_riemann_liouville(self):
        # kernel collapses to the power law: Gamma(beta)/Gamma(beta+theta) t^(beta+theta-1)
        beta, theta, t = 1.3, 0.6, 1.7
        p = PrabhakarParams(alpha=0.9, eta=theta, xi=0.0, zeta=-2.0)
        got = prabhakar_convolve(beta, p, theta, t)
        want = G(beta) / G(beta + theta) * t ** (beta + theta - 1.0) * G(theta)
        # the identity includes the kernel's own 1/Gamma(theta)
        assert got == pytest.approx(want / G(theta), rel=1e-9)

    def test_unit_power(self):
        beta, alpha, theta, xi, zeta, t = 1.0, 0.6, 0.8, 1.4, -1.2, 0.9
        p = PrabhakarParams(alpha=alpha, eta=theta, xi=xi, zeta=zeta)
        got = prabhakar_convolve(beta, p, theta, t)
        closed = PrabhakarParams(alpha=alpha, eta=theta + 1.0, xi=-xi, zeta=zeta)
        want = t ** theta * ml_prabhakar(closed, zeta * t ** alpha)
        assert got == pytest.approx(want, rel=1e-9)

    def test_theta_consistency(self):
        # the auxiliary order is free: the identity holds at any admissible theta
        beta, alpha, xi, zeta, t = 1.2, 0.7, 1.5, -1.0, 1.0
        for theta in (0.45, 1.1):
            p = PrabhakarParams(alpha=alpha, eta=theta, xi=xi, zeta=zeta)
            got = prabhakar_convolve(beta, p, theta, t)
            closed = PrabhakarParams(alpha=alpha, eta=theta + beta, xi=-xi, zeta=zeta)
            want = G(beta) * t ** (theta + beta - 1.0) * ml_prabhakar(closed, zeta * t ** alpha)
            assert got == pytest.approx(want, rel=1e-8)

    def test_rejects_bad_orders(self):
        p = PrabhakarParams(alpha=0.5, eta=1.0, xi=1.0, zeta=1.0)
        with pytest.raises(InvalidParams):
            prabhakar_convolve(0.0, p, 1.0, 1.0)
        with pytest.raises(InvalidParams):
            prabhakar_convolve(1.0, p, -0.2, 1.0)


class TestApplyRegularizedD:
    def test_constant_maps_to_zero(self):
        p = PrabhakarParams(alpha=0.6, eta=0.7, xi=1.3, zeta=-1.0)
        for t in (0.5, 1.0, 2.0):
            got = apply_regularized_D(lambda s: 4.2 / s, 4.2, p, t)
            assert abs(got) < 1e-9

    def test_caputo_reduction_on_identity_function(self):
        # xi = 0, f(t) = t: Caputo derivative of order 1/2 is t^(1/2)/Gamma(3/2)
        p = PrabhakarParams(alpha=0.6, eta=0.5, xi=0.0, zeta=-1.0)
        got = apply_regularized_D(lambda s: 1.0 / s ** 2, 0.0, p, 1.0)
        assert got == pytest.approx(1.0 / G(1.5), rel=1e-8)

    def test_integer_xi_matches_caputo_combination(self):
        # (nu, gamma+nu, n, -lam) on f(t)=t equals the binomial Caputo sum
        gamma_, nu, lam, n, t = 0.5, 0.2, 1.0, 2, 1.3
        p = PrabhakarParams(alpha=nu, eta=gamma_ + nu, xi=n, zeta=-lam)
        got = apply_regularized_D(lambda s: 1.0 / s ** 2, 0.0, p, t)
        want = sum(math.comb(n, r) * lam ** r
                   * t ** (1.0 - (gamma_ - nu * (r - 1))) / G(2.0 - (gamma_ - nu * (r - 1)))
                   for r in range(n + 1))
        assert got == pytest.approx(want, rel=1e-7)

    def test_wright_operator_series_small_zeta(self):
        # the formal representation in its convergent regime: for f = t^(beta-1),
        # Gamma(xi+1) sum_r (-zeta)^r / (r! Gamma(xi-r+1)) J^(alpha r) then d^eta
        # equals the unregularized operator obtained by Laplace inversion
        alpha, eta, xi, zeta, beta, t = 0.6, 0.7, 1.4, 0.05, 2.0, 0.9
        series = 0.0
        for r in range(60):
            coef = G(xi + 1.0) * (-zeta) ** r / (G(r + 1.0) * G(xi - r + 1.0))
            if coef == 0.0 and r > xi:
                continue
            series += coef * G(beta) / G(beta + alpha * r - eta) * t ** (beta - 1.0 + alpha * r - eta)
        via_inversion = invert_laplace(
            lambda s: s ** eta * (1.0 - zeta * s ** -alpha) ** xi * G(beta) * s ** -beta,
            t, InversionConfig(method=Method.FIXED_TALBOT))
        assert series == pytest.approx(via_inversion, rel=1e-6)
