"""Analytic solution evaluation for the one-dimensional Cauchy problem:
Fourier-side series, Wright closed form, density reconstruction by
inversion, and the integer-order multi-term expansion."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gamma as _gamma

from .errors import InvalidParams, NonConvergent
from .laplace import (InversionConfig, Method, TransformId, analytic_transform,
                      invert_laplace, prabhakar_series_xlaplace)
from .params import TimeChangeParams, WrightParams
from .specfun import wright


def g_hat_series(tc: TimeChangeParams, beta: float, t: float) -> float:
    """Fourier transform of the solution at frequency beta and time t.

    sum_r (-c beta^2 t^(gamma+nu))^r E^(r delta)_(nu, r(gamma+nu)+1)
    (-lambda t^nu); exactly 1 at beta = 0.  Divergence outside the
    empirical convergence region raises SeriesDiverges with the failing
    term index.
    """
    tc.require_analytic()
    if tc.delta < 0:
        raise InvalidParams("series solution needs delta >= 0")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if beta == 0.0:
        return 1.0
    return prabhakar_series_xlaplace(tc, tc.c * beta * beta, t)


def diffusion_wright(alpha: float, lambda_scale: float, x: float, t: float) -> float:
    """Fundamental solution of the fractional diffusion-wave problem:
    W_(-alpha/2, 1-alpha/2)(-|x| / (lambda t^(alpha/2))) / (2 lambda t^(alpha/2)).

    Reduces to the Gaussian kernel at alpha = 1.  The alpha = 2 endpoint
    is a distributional (d'Alembert) limit, not a function value, and is
    rejected.
    """
    if not (0.0 < alpha < 2.0):
        raise InvalidParams("alpha must lie in (0, 2); alpha = 2 has no pointwise density")
    if not lambda_scale > 0:
        raise InvalidParams("lambda_scale must be > 0")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    spread = lambda_scale * t ** (alpha / 2.0)
    y = abs(x) / spread
    try:
        w = wright(WrightParams(a=-alpha / 2.0, b=1.0 - alpha / 2.0), -y)
    except NonConvergent:
        # far tail: the same function written through the one-sided
        # stable density, whose evaluator is robust at large arguments
        from ._stable import stable_pdf_standard
        beta = alpha / 2.0
        w = float(stable_pdf_standard(beta, y ** (-1.0 / beta))[0]
                  * y ** (-(beta + 1.0) / beta) / beta)
    return w / (2.0 * spread)


@dataclass(frozen=True)
class DensityValue:
    """Raw inversion value plus the reporting view and method used."""

    raw: float
    clamped: float
    method: Method


def density_g_report(tc: TimeChangeParams, x: float, t: float,
                     cfg: InversionConfig | None = None) -> DensityValue:
    """Solution density g(x, t) by inverting its closed-form t-Laplace
    transform; symmetric in x.

    Gaver-Stehfest degrades near the wave limit, so requests for it with
    gamma+nu >= 1.5 are switched to Talbot; the method actually used is
    recorded in the result.  ``clamped`` zeroes small negative inversion
    noise; accuracy comparisons should use ``raw``.
    """
    tc.require_analytic()
    if tc.delta < 0:
        raise InvalidParams("density evaluation needs delta >= 0")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    cfg = cfg or InversionConfig()
    method = cfg.method
    if method is Method.GAVER_STEHFEST and tc.order_sum >= 1.5:
        method = Method.FIXED_TALBOT
        cfg = InversionConfig(method=method, order=0,
                              tolerance=cfg.tolerance, cross_check=False)
    raw = invert_laplace(
        lambda s: analytic_transform(TransformId.G_X_LAPLACE, tc, (x, s)), t, cfg)
    raw = float(raw.real) if isinstance(raw, complex) else float(raw)
    return DensityValue(raw=raw, clamped=max(raw, 0.0), method=method)


def density_g(tc: TimeChangeParams, x: float, t: float,
              cfg: InversionConfig | None = None) -> float:
    """Raw (unclamped) solution density; see :func:`density_g_report`."""
    return density_g_report(tc, x, t, cfg).raw


def problem_admissible(gamma: float, nu: float, delta: float) -> None:
    """Admissibility of the order triple for the one-dimensional problem.

    Interior orders need delta*nu < gamma+nu <= 2; the wave-telegraph
    endpoint gamma = nu = 1 is admissible only for delta <= 1.
    """
    if not (0.0 < gamma <= 1.0 and 0.0 < nu <= 1.0):
        raise InvalidParams("gamma and nu must lie in (0, 1]")
    if gamma == 1.0 and nu == 1.0:
        if delta > 1.0:
            raise InvalidParams("wave-telegraph orders gamma = nu = 1 need delta <= 1")
        return
    if not delta * nu < gamma + nu <= 2.0:
        raise InvalidParams("orders must satisfy delta*nu < gamma+nu <= 2")


def multiterm_expand(n: int, lambda_rate: float, gamma: float, nu: float
                     ) -> list[tuple[float, float]]:
    """Caputo multi-term form of the integer-order problem:
    [(C(n,r) lambda^r, gamma - nu (r-1)) for r = 0..n].

    n = 0 is the pure diffusion-wave term, n = 1 the fractional
    telegraph pair.
    """
    if n < 0 or int(n) != n:
        raise InvalidParams("n must be a non-negative integer")
    if not lambda_rate > 0:
        raise InvalidParams("lambda_rate must be > 0")
    if not n * nu < gamma + nu <= 2.0:
        raise InvalidParams("orders must satisfy n*nu < gamma+nu <= 2")
    terms = []
    for r in range(int(n) + 1):
        order = gamma - nu * (r - 1)
        if order <= 0:
            raise InvalidParams(f"term r={r} has non-positive order {order}")
        terms.append((math.comb(int(n), r) * lambda_rate ** r, order))
    return terms


def caputo_monomial(order: float, power: float, t: float) -> float:
    """Caputo derivative of t^power, order in (0, 2].

    Gamma(power+1)/Gamma(power+1-order) t^(power-order); powers at or
    below the integer part of the order are annihilated.
    """
    if not (0.0 < order <= 2.0):
        raise InvalidParams("order must lie in (0, 2]")
    if power < 0:
        raise InvalidParams("power must be >= 0")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    ceil_needed = 1.0 if order <= 1.0 else 2.0
    if power <= ceil_needed - 1.0:
        return 0.0
    return _gamma(power + 1.0) / _gamma(power + 1.0 - order) * t ** (power - order)


def multiterm_caputo_monomial(n: int, lambda_rate: float, gamma: float, nu: float,
                              power: float, t: float) -> float:
    """The expanded multi-term operator applied to t^power."""
    return sum(coef * caputo_monomial(order, power, t)
               for coef, order in multiterm_expand(n, lambda_rate, gamma, nu))
