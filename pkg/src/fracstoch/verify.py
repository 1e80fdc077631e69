"""Cross-check battery: Monte Carlo estimates against closed transforms,
and quadrature identities against their closed forms.

The ``fast`` tier runs every family at reduced sample counts (seconds);
``full`` runs at the counts used for acceptance (minutes).  Results are
deterministic in (tier, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import gamma as _gamma

from . import laplace, levy, pde, stoch
from .params import (BrownianDrift, InversionConfig, Method, Poisson,
                     PrabhakarParams, TimeChangeParams, TransformId)
from .rng import Stream
from .specfun import ml_prabhakar, prabhakar_convolve


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str          # "pass" | "fail"
    observed: float
    target: float
    tolerance: float
    method: str


def _bool_result(name, observed, target, tolerance, method) -> CheckResult:
    ok = abs(observed - target) <= tolerance
    return CheckResult(name, "pass" if ok else "fail",
                       float(observed), float(target), float(tolerance), method)


def run_suite(tier: str = "fast", seed: int = 0, threads: int | None = None
              ) -> list[CheckResult]:
    if tier not in ("fast", "full"):
        raise ValueError("tier must be 'fast' or 'full'")
    full = tier == "full"
    n_big = 100_000 if full else 10_000
    n_ks = 10_000 if full else 2_000
    res = 1e-3 if full else 2e-3
    stream = Stream(seed=seed).child("verify", tier)
    out: list[CheckResult] = []

    # Laplace-pair identity of the Prabhakar function
    p = PrabhakarParams(alpha=0.7, eta=1.5, xi=2.0, zeta=-1.0)
    s0 = 2.0
    got = laplace.forward_laplace(
        lambda t: t ** (p.eta - 1.0) * ml_prabhakar(p, -t ** p.alpha), s0)
    want = s0 ** (-p.eta) * (1.0 + s0 ** (-p.alpha)) ** (-p.xi)
    out.append(_bool_result("ml-laplace-pair", got, want, 1e-8 * abs(want),
                            "quadrature-vs-closed-form"))

    # convolution identity
    got = prabhakar_convolve(1.5, PrabhakarParams(0.7, 1.0, 2.0, -1.0), 0.9, 1.0)
    want = _gamma(1.5) * ml_prabhakar(PrabhakarParams(0.7, 2.4, -2.0, -1.0), -1.0)
    out.append(_bool_result("convolution-identity", got, want, 1e-6 * abs(want),
                            "weighted-quadrature"))

    # both inversion methods on a known pair
    for method, order in ((Method.FIXED_TALBOT, 32), (Method.GAVER_STEHFEST, 14)):
        got = laplace.invert_laplace(
            lambda s: 1.0 / (s + 1.0), 1.0,
            InversionConfig(method=method, order=order, cross_check=False))
        out.append(_bool_result(f"inversion-{method.value}", got, math.exp(-1.0),
                                3e-6, method.value))

    # driver Laplace functional
    tc = TimeChangeParams(0.5, 0.2, 1.0)
    v = stoch.frakV_marginal(tc, 1.0, n_big, stream.child("v"))
    for z in (0.5, 1.0, 2.0):
        vals = np.exp(-z * v)
        target = math.exp(-(z ** tc.order_sum * (1 + z ** -tc.nu) ** tc.delta))
        out.append(_bool_result(f"driver-laplace-z{z}", vals.mean(), target,
                                3.0 * vals.std(ddof=1) / math.sqrt(n_big),
                                "mc-vs-exponent"))

    # inverse process vs transform inversion
    e = stoch.inverse_E_batch(tc, 1.0, res, n_big, stream.child("e"))
    vals = np.exp(-e)
    target = laplace.invert_laplace(
        lambda s: laplace.analytic_transform(TransformId.H_XS, tc, (1.0, s)), 1.0)
    out.append(_bool_result("inverse-laplace-functional", vals.mean(), float(target),
                            3.0 * vals.std(ddof=1) / math.sqrt(n_big),
                            "mc-vs-inversion"))

    # duality indicators
    x0 = 0.8
    vx = stoch.frakV_marginal(tc, x0, n_ks, stream.child("dual-v"))
    e2 = stoch.inverse_E_batch(tc, 1.0, res, n_ks, stream.child("dual-e"))
    lhs = float((e2 > x0).mean())
    rhs = float((vx < 1.0).mean())
    band = 3.0 * math.sqrt(lhs * (1 - lhs) / n_ks + rhs * (1 - rhs) / n_ks)
    out.append(_bool_result("inverse-duality", lhs, rhs, band, "mc-indicators"))

    # subordination composition (distributional)
    tc2 = TimeChangeParams(0.4, 0.2, 0.7)
    ed = stoch.inverse_E_batch(tc2, 1.0, res, n_ks, stream.child("sub-e"))
    kd = stoch.sample_K_batch(tc2, 1.0, res, n_ks, stream.child("sub-k"))
    frac = tc2.delta / tc2.n
    comp = (kd / stoch._kernels.stable_standard(frac, n_ks,
                                                stream.child("sub-l").generator)) ** frac
    pval = stats.ks_2samp(ed, comp).pvalue
    out.append(CheckResult("subordination-ks", "pass" if pval > 0.01 else "fail",
                           float(pval), 0.01, 0.0, "two-sample-ks"))

    # time-changed Brownian second moment at delta=0
    tc0 = TimeChangeParams(0.5, 0.2, 0.0)
    x = levy.time_changed_batch(BrownianDrift(a=0.0, c=1.0), tc0, 0.0, 1.0, res,
                                n_big, stream.child("bm"))
    vals = x * x
    target = 2.0 / _gamma(1.0 + tc0.order_sum)
    out.append(_bool_result("brownian-x2-moment", vals.mean(), target,
                            3.0 * vals.std(ddof=1) / math.sqrt(n_big),
                            "mc-vs-series-moment"))

    # characteristic function of the time-changed Poisson process
    spec = Poisson(rate=2.0)
    xs = levy.time_changed_batch(spec, tc, 0.0, 1.0, res, n_big, stream.child("cf"))
    cf = np.exp(1j * 1.0 * xs)
    psi = levy.psi_symbol(spec, 1.0)
    target = complex(laplace.invert_laplace(
        lambda s: laplace.analytic_transform(TransformId.G_FOURIER_LAPLACE, tc,
                                             (psi, s)), 1.0))
    out.append(_bool_result("poisson-cf-re", cf.real.mean(), target.real,
                            max(3.0 * cf.real.std(ddof=1) / math.sqrt(n_big), 2e-3),
                            "mc-vs-inversion"))
    out.append(_bool_result("poisson-cf-im", cf.imag.mean(), target.imag,
                            max(3.0 * cf.imag.std(ddof=1) / math.sqrt(n_big), 2e-3),
                            "mc-vs-inversion"))

    # solution consistency: series vs transform inversion
    tcp = TimeChangeParams(0.4, 0.4, 1.0)
    got = pde.g_hat_series(tcp, 1.0, 0.5)
    want = laplace.invert_laplace(
        lambda s: laplace.analytic_transform(TransformId.G_FOURIER_LAPLACE, tcp,
                                             (tcp.c * 1.0, s)), 0.5)
    out.append(_bool_result("solution-series-vs-inversion", got, float(want),
                            1e-5 * abs(want), "series-vs-inversion"))

    # Wright closed form against the Gaussian kernel
    got = pde.diffusion_wright(1.0, 1.0, 1.0, 1.0)
    want = math.exp(-0.25) / (2.0 * math.sqrt(math.pi))
    out.append(_bool_result("wright-gaussian", got, want, 1e-10, "series-vs-closed-form"))

    return out
