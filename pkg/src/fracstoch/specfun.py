"""Generalized Mittag-Leffler and Wright functions, the associated
convolution operator, and the regularized derivative built on it."""

from __future__ import annotations

import math

from scipy import integrate
from scipy.special import rgamma

from .errors import GammaPole, InvalidParams, NonConvergent, QuadratureFailure
from .params import GenWrightSpec, InversionConfig, PrabhakarParams, WrightParams

_REL_TOL = 1e-15
_CONSECUTIVE = 3
_TERM_CAP = 10_000
_CANCELLATION_CAP = 1e12


def pochhammer(xi: float, r: int) -> float:
    """Rising factorial (xi)_r = xi (xi+1) ... (xi+r-1), with (xi)_0 = 1."""
    if r < 0 or int(r) != r:
        raise InvalidParams("pochhammer order r must be a non-negative integer")
    out = 1.0
    for k in range(int(r)):
        out *= xi + k
    return out


def _sum_with_stopping(terms) -> float:
    """Sum a term iterator under the relative-tail stopping rule."""
    total = 0.0
    peak = 0.0
    quiet = 0
    for count, term in enumerate(terms):
        total += term
        peak = max(peak, abs(term))
        if not math.isfinite(total):
            raise NonConvergent("series not evaluable in float64")
        if abs(term) < _REL_TOL * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= _CONSECUTIVE:
                # judge cancellation on the settled sum, not transient zeros
                if peak > _CANCELLATION_CAP * max(abs(total), 1e-300):
                    raise NonConvergent(
                        "catastrophic cancellation: series not evaluable in float64")
                return total
        else:
            quiet = 0
        if count >= _TERM_CAP:
            raise NonConvergent(f"series exceeded {_TERM_CAP} terms")
    return total


def ml_prabhakar(p: PrabhakarParams, x: float) -> float:
    """Three-parameter Mittag-Leffler sum_r x^r (xi)_r / (r! Gamma(alpha r + eta)).

    Negative integer xi truncates the sum exactly.  When the alternating
    series loses more than half the mantissa the value is recovered by
    numerically inverting its Laplace-transform pair instead.
    """
    xi = p.xi
    if xi < 0 and xi == int(xi):
        # finite sum, exact: (xi)_r vanishes beyond r = -xi
        total = 0.0
        coef = 1.0
        for r in range(int(-xi) + 1):
            total += coef * float(rgamma(p.alpha * r + p.eta))
            coef *= x * (xi + r) / (r + 1)
        return total

    total = 0.0
    peak = 0.0
    quiet = 0
    coef = 1.0
    lost = False
    for r in range(_TERM_CAP + 1):
        if not math.isfinite(coef):
            lost = True
            break
        term = coef * float(rgamma(p.alpha * r + p.eta))
        if not math.isfinite(term):
            lost = True
            break
        total += term
        peak = max(peak, abs(term))
        if abs(term) < _REL_TOL * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= _CONSECUTIVE:
                # judge cancellation on the settled sum, not transient zeros
                if peak > _CANCELLATION_CAP * max(abs(total), 1e-300):
                    lost = True
                    break
                return total
        else:
            quiet = 0
        coef *= x * (xi + r) / (r + 1)
    else:
        raise NonConvergent(f"Prabhakar series exceeded {_TERM_CAP} terms")
    if x >= 0:
        raise NonConvergent("catastrophic cancellation outside the fallback region")
    # alternating-series cancellation: invert the transform pair instead,
    # int_0^inf t^(eta-1) e^(-pt) E(x t^alpha) dt = p^-eta (1 - x p^-alpha)^-xi at t=1
    from .laplace import invert_laplace
    from .params import Method

    return invert_laplace(
        lambda s: s ** (-p.eta) * (1.0 - x * s ** (-p.alpha)) ** (-xi),
        1.0,
        InversionConfig(method=Method.FIXED_TALBOT),
    )


def wright(w: WrightParams, x: float) -> float:
    """Wright series sum_r x^r / (r! Gamma(a r + b)).

    Entire for a > -1; on the boundary a = -1 convergence needs b > 0
    and |x| < 1 (enforced).
    """
    if w.a < -1.0:
        raise InvalidParams(f"Wright index a must be >= -1, got {w.a}")
    if w.a == -1.0 and not (w.b > 0 and abs(x) < 1.0):
        raise InvalidParams("a = -1 requires b > 0 and |x| < 1")

    def terms():
        coef = 1.0
        r = 0
        while True:
            if not math.isfinite(coef):
                yield math.inf
            yield coef * float(rgamma(w.a * r + w.b))
            coef *= x / (r + 1)
            r += 1

    return _sum_with_stopping(terms())


def _is_nonpositive_integer(z: float) -> bool:
    return z <= 0.0 and z == int(z)


def generalized_wright(g: GenWrightSpec, x: float) -> float:
    """Generalized Wright sum_k x^k/k! prod Gamma(a+alpha k) / prod Gamma(b+beta k).

    Denominator poles zero out the term; numerator poles are errors.
    """
    def terms():
        coef = 1.0
        k = 0
        while True:
            if not math.isfinite(coef):
                yield math.inf
            num = 1.0
            for a, al in g.upper:
                z = a + al * k
                if _is_nonpositive_integer(z):
                    raise GammaPole(
                        f"numerator Gamma({z}) at series index {k}")
                num *= math.gamma(z)
            den = 1.0
            for b, be in g.lower:
                den *= float(rgamma(b + be * k))
            yield coef * num * den
            coef *= x / (k + 1)
            k += 1

    return _sum_with_stopping(terms())


def prabhakar_convolve(power: float, p: PrabhakarParams, theta: float, t: float,
                       tol: float = 1e-12) -> float:
    """int_0^t (t-y)^(theta-1) E^(-xi)_(alpha,theta)[zeta (t-y)^alpha] y^(power-1) dy.

    The kernel carries the negated-xi convention: ``p.xi`` is the xi of
    the identity, the series runs with -xi.  Both endpoint power
    singularities are absorbed into weighted Gauss-Jacobi-type rules
    (QUADPACK's algebraic weighting), splitting at the midpoint.
    """
    if not power > 0:
        raise InvalidParams("power (beta) must be > 0")
    if not theta > 0:
        raise InvalidParams("theta must be > 0")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    kernel_p = PrabhakarParams(alpha=p.alpha, eta=theta, xi=-p.xi, zeta=p.zeta)

    def left(y):   # weight y^(power-1) supplied by the rule
        u = t - y
        return u ** (theta - 1.0) * ml_prabhakar(kernel_p, p.zeta * u ** p.alpha)

    def right(u):  # substituted u = t - y; weight u^(theta-1) supplied
        return (t - u) ** (power - 1.0) * ml_prabhakar(kernel_p, p.zeta * u ** p.alpha)

    half = 0.5 * t
    i1, e1 = integrate.quad(left, 0.0, half, weight="alg", wvar=(power - 1.0, 0.0),
                            epsabs=tol, epsrel=tol, limit=250)
    i2, e2 = integrate.quad(right, 0.0, half, weight="alg", wvar=(theta - 1.0, 0.0),
                            epsabs=tol, epsrel=tol, limit=250)
    total = i1 + i2
    if e1 + e2 > 1e-6 * max(1.0, abs(total)):
        raise QuadratureFailure(
            f"convolution error estimate {e1 + e2:.2e} exceeds tolerance")
    return total


def apply_regularized_D(f_transform, f_at_zero: float, p: PrabhakarParams,
                        t: float, cfg: InversionConfig | None = None) -> float:
    """Regularized generalized derivative of f at t, from its transform.

    Inverts s^eta (1 - zeta s^-alpha)^xi f~(s) - f(0+) s^(eta-1)
    (1 - zeta s^-alpha)^xi.  With xi = 0 this is the Caputo derivative
    of order eta; constants map to 0 identically.
    """
    p.require_kernel_orders()
    from .laplace import invert_laplace

    def transform(s):
        factor = (1.0 - p.zeta * s ** (-p.alpha)) ** p.xi
        return s ** p.eta * factor * f_transform(s) - f_at_zero * s ** (p.eta - 1.0) * factor

    return invert_laplace(transform, t, cfg)
