"""Solution evaluation for the one-dimensional problem: Fourier series,
Wright closed form, density by inversion, and the multi-term expansion."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from fracstoch.errors import InvalidParams, SeriesDiverges
from fracstoch.laplace import analytic_transform, invert_laplace
from fracstoch.params import (InversionConfig, Method, PrabhakarParams,
                              TimeChangeParams, TransformId)
from fracstoch.pde import (caputo_monomial, density_g, density_g_report,
                           diffusion_wright, g_hat_series, multiterm_caputo_monomial,
                           multiterm_expand, problem_admissible)
from fracstoch.specfun import apply_regularized_D, ml_prabhakar


class TestFourierSeries:
    def test_unit_at_zero_frequency(self):
        tc = TimeChangeParams(0.5, 0.2, 1.0)
        assert g_hat_series(tc, 0.0, 2.3) == 1.0

    def test_delta_zero_is_mittag_leffler(self):
        tc = TimeChangeParams(0.5, 0.2, 0.0, c=1.3)
        beta, t = 0.8, 0.9
        got = g_hat_series(tc, beta, t)
        want = ml_prabhakar(PrabhakarParams(alpha=0.7, eta=1.0, xi=1.0, zeta=1.0),
                            -1.3 * beta ** 2 * t ** 0.7)
        assert got == pytest.approx(want, rel=1e-10)

    def test_matches_transform_inversion(self):
        tc = TimeChangeParams(0.4, 0.4, 1.0)
        beta, t = 1.0, 0.5
        got = g_hat_series(tc, beta, t)
        want = invert_laplace(
            lambda s: analytic_transform(TransformId.G_FOURIER_LAPLACE, tc,
                                         (tc.c * beta ** 2, s)), t)
        assert got == pytest.approx(want, rel=1e-5)

    def test_divergence_carries_index(self):
        tc = TimeChangeParams(0.5, 0.2, 1.0)
        with pytest.raises(SeriesDiverges) as err:
            g_hat_series(tc, 8.0, 30.0)
        assert err.value.term_index is not None

    @given(st.floats(0.05, 1.5), st.floats(0.1, 2.0))
    @settings(max_examples=25, deadline=None)
    def test_bounded_by_one(self, beta, t):
        # a characteristic function of a real random variable
        tc = TimeChangeParams(0.45, 0.25, 1.0)
        try:
            val = g_hat_series(tc, beta, t)
        except SeriesDiverges:
            return
        assert val <= 1.0 + 1e-10


class TestDiffusionWright:
    def test_origin_gaussian_value(self):
        assert diffusion_wright(1.0, 1.0, 0.0, 1.0) == pytest.approx(
            1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-12)

    def test_gaussian_reduction(self):
        for x in np.linspace(-3, 3, 10):
            got = diffusion_wright(1.0, 1.0, x, 1.0)
            want = math.exp(-x * x / 4.0) / (2.0 * math.sqrt(math.pi))
            assert got == pytest.approx(want, abs=1e-10)

    def test_symmetry(self):
        for x in (0.3, 1.1, 2.2):
            assert diffusion_wright(0.8, 1.0, x, 1.0) == diffusion_wright(0.8, 1.0, -x, 1.0)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    def test_normalization(self, alpha):
        total, _ = integrate.quad(lambda x: diffusion_wright(alpha, 1.0, x, 1.0),
                                  -np.inf, np.inf, limit=300)
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_wave_endpoint_rejected(self):
        with pytest.raises(InvalidParams):
            diffusion_wright(2.0, 1.0, 0.5, 1.0)


class TestDensityG:
    def test_heat_kernel(self):
        # delta=0, gamma+nu=1 is the classical heat equation
        tc = TimeChangeParams(0.5, 0.5, 0.0, c=1.0)
        for x in (0.0, 0.5, 1.0, 2.0):
            for t in (0.5, 1.0):
                got = density_g(tc, x, t)
                want = math.exp(-x * x / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
                assert got == pytest.approx(want, abs=1e-6)

    def test_matches_wright_route(self):
        # delta=0, gamma+nu=alpha: same solution through the Wright form
        tc = TimeChangeParams(0.4, 0.4, 0.0, c=1.0)
        for x in (0.2, 0.7, 1.5):
            got = density_g(tc, x, 1.2)
            want = diffusion_wright(0.8, 1.0, x, 1.2)
            assert got == pytest.approx(want, rel=1e-5, abs=1e-8)

    def test_symmetry(self):
        tc = TimeChangeParams(0.4, 0.4, 1.0)
        assert density_g(tc, 0.9, 1.0) == density_g(tc, -0.9, 1.0)

    def test_normalization_telegraph(self):
        tc = TimeChangeParams(0.4, 0.4, 1.0)
        total, _ = integrate.quad(lambda x: density_g(tc, x, 1.0), -8.0, 8.0,
                                  limit=200, epsabs=1e-8, epsrel=1e-6)
        assert total == pytest.approx(1.0, abs=1e-4)

    def test_wave_regime_uses_talbot(self):
        tc = TimeChangeParams(0.9, 0.9, 0.0)
        rep = density_g_report(tc, 0.0, 1.0,
                               InversionConfig(method=Method.GAVER_STEHFEST))
        assert rep.method is Method.FIXED_TALBOT
        assert rep.clamped >= 0.0

    def test_fourier_quadrature_reproduces_series(self):
        # int e^(i beta x) g(x, t) dx recovers the Fourier-side series
        tc = TimeChangeParams(0.4, 0.4, 1.0)
        t, beta = 0.8, 0.9
        got, _ = integrate.quad(lambda x: 2.0 * math.cos(beta * x) * density_g(tc, x, t),
                                0.0, 9.0, limit=200, epsabs=1e-8, epsrel=1e-7)
        want = g_hat_series(tc, beta, t)
        assert got == pytest.approx(want, abs=1e-4)


class TestMultiterm:
    def test_pure_diffusion_wave(self):
        assert multiterm_expand(0, 1.0, 0.5, 0.2) == [(1.0, 0.7)]

    def test_fractional_telegraph(self):
        assert multiterm_expand(1, 2.5, 0.5, 0.2) == [(1.0, 0.7), (2.5, 0.5)]

    def test_three_term_display(self):
        got = multiterm_expand(2, 1.0, 0.5, 0.2)
        assert got == [(1.0, 0.7), (2.0, 0.5), (1.0, 0.3)]

    def test_lambda_powers(self):
        got = multiterm_expand(2, 2.0, 0.6, 0.15)
        assert got == [(1.0, pytest.approx(0.75)), (4.0, pytest.approx(0.6)),
                       (4.0, pytest.approx(0.45))]

    def test_rejects_nonpositive_orders(self):
        # n nu >= gamma+nu is the same thing as a non-positive last order
        with pytest.raises(InvalidParams):
            multiterm_expand(4, 1.0, 0.5, 0.2)
        with pytest.raises(InvalidParams):
            multiterm_expand(2, 1.0, 0.2, 0.25)

    def test_wave_telegraph_admissibility(self):
        problem_admissible(1.0, 1.0, 1.0)
        problem_admissible(1.0, 1.0, 0.5)
        with pytest.raises(InvalidParams):
            problem_admissible(1.0, 1.0, 1.5)
        problem_admissible(0.9, 0.9, 1.5)
        with pytest.raises(InvalidParams):
            problem_admissible(0.9, 0.9, 2.0)   # delta nu >= gamma+nu

    def test_caputo_monomial_values(self):
        # order 1/2 of t: t^(1/2) Gamma(2)/Gamma(3/2)
        assert caputo_monomial(0.5, 1.0, 1.0) == pytest.approx(
            1.0 / math.gamma(1.5), rel=1e-14)
        # constants are annihilated
        assert caputo_monomial(0.5, 0.0, 1.0) == 0.0
        # order in (1,2] annihilates linear monomials too
        assert caputo_monomial(1.5, 1.0, 1.0) == 0.0

    def test_operator_matches_expansion_on_monomials(self):
        # integer-exponent kernel applied to t equals the expanded
        # Caputo combination
        gamma_, nu, lam, n = 0.5, 0.2, 1.5, 2
        for t in (0.6, 1.0, 1.7):
            got = apply_regularized_D(
                lambda s: 1.0 / s ** 2, 0.0,
                PrabhakarParams(alpha=nu, eta=gamma_ + nu, xi=n, zeta=-lam), t)
            want = multiterm_caputo_monomial(n, lam, gamma_, nu, 1.0, t)
            assert got == pytest.approx(want, rel=1e-6)
