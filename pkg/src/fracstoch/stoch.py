"""Samplers and densities for stable subordinators, the weighted-sum
process they generate, and its inverse (hitting-time) processes."""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from ._stable import stable_pdf_standard
from .errors import InvalidParams, QuadratureFailure
from .params import SamplePath, TimeChangeParams
from .rng import Stream


def sample_stable_increment(alpha: float, dt: float, stream: Stream) -> float:
    """One increment of the alpha-stable subordinator over a span dt.

    Laplace transform exp(-dt z^alpha); self-similar, so the draw is
    dt^(1/alpha) times a standard variate.  alpha = 1 degenerates to
    deterministic drift dt.
    """
    if not (0.0 < alpha <= 1.0):
        raise InvalidParams("stable index must lie in (0, 1]")
    if not dt > 0:
        raise InvalidParams("dt must be > 0")
    if alpha == 1.0:
        return float(dt)
    return float(dt ** (1.0 / alpha)
                 * _kernels.stable_standard(alpha, 1, stream.generator)[0])


def stable_increments(alpha: float, dt: float, n: int, stream: Stream) -> np.ndarray:
    """Batch version of :func:`sample_stable_increment`."""
    if not (0.0 < alpha <= 1.0):
        raise InvalidParams("stable index must lie in (0, 1]")
    if alpha == 1.0:
        return np.full(n, float(dt))
    return dt ** (1.0 / alpha) * _kernels.stable_standard(alpha, n, stream.generator)


def combo_components(tc: TimeChangeParams, subordinated: bool = True):
    """Stable orders, binomial weights, and outer clock index of the
    weighted-sum construction.

    With ``subordinated`` the outer clock of index delta/n is included
    (0 means a degenerate clock, i.e. integer delta); without it the
    plain weighted sum is returned (the process whose hitting time feeds
    the subordination identity).
    """
    tc.require_simulation()
    gn = tc.order_sum
    if tc.delta == 0:
        return np.array([gn]), np.array([1.0]), 0.0
    n = tc.n
    r = np.arange(n + 1)
    if tc.delta == n:
        orders = gn - r * tc.nu
        outer = 0.0
    else:
        orders = gn * n / tc.delta - r * tc.nu
        outer = tc.delta / n if subordinated else 0.0
    weights = np.array([math.comb(n, int(k)) for k in r], dtype=float)
    if np.any(orders <= 0) or np.any(orders > 1.0 + 1e-12):
        raise InvalidParams(f"component stable orders {orders} leave (0, 1]")
    return np.minimum(orders, 1.0), weights, outer


def frakV_increments(tc: TimeChangeParams, dt, stream: Stream) -> np.ndarray:
    """Independent increments of the time-change driver over spans ``dt``.

    Laplace transform per span: exp(-dt z^(gamma+nu) (1+z^-nu)^delta).
    """
    orders, weights, outer = combo_components(tc)
    return _kernels.combo_increments(np.asarray(dt, dtype=float), orders, weights,
                                     outer, stream.generator)


def sample_frakV_path(tc: TimeChangeParams, grid, stream: Stream) -> SamplePath:
    """Sample the driver on a grid starting at 0 (monotone path)."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1 or grid[0] != 0.0:
        raise InvalidParams("grid must be one-dimensional and start at 0")
    if np.any(np.diff(grid) <= 0):
        raise InvalidParams("grid must be strictly increasing")
    inc = frakV_increments(tc, np.diff(grid), stream)
    values = np.concatenate(([0.0], np.cumsum(inc)))
    return SamplePath(times=grid, values=values, monotone=True)


def frakV_marginal(tc: TimeChangeParams, t: float, n: int, stream: Stream) -> np.ndarray:
    """n independent samples of the driver at time t."""
    if not t > 0:
        raise InvalidParams("t must be > 0")
    return frakV_increments(tc, np.full(n, float(t)), stream)


def inverse_E_batch(tc: TimeChangeParams, t: float, resolution: float, n: int,
                    stream: Stream) -> np.ndarray:
    """n first-passage samples of the inverse process at time t.

    Bracket width equals ``resolution`` (midpoint reported, bias at most
    resolution/2).
    """
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if not resolution > 0:
        raise InvalidParams("resolution must be > 0")
    orders, weights, outer = combo_components(tc)
    return _kernels.first_passage_batch(float(t), float(resolution), n,
                                        orders, weights, outer, stream.generator)


def sample_inverse_E(tc: TimeChangeParams, t: float, resolution: float,
                     stream: Stream) -> float:
    """One sample of the inverse (hitting-time) process at time t."""
    return float(inverse_E_batch(tc, t, resolution, 1, stream)[0])


def inverse_stable_batch(delta: float, t: float, n: int, stream: Stream) -> np.ndarray:
    """Grid-free samples of the inverse stable subordinator at time t.

    Uses the scaling identity L_t = (t / V)^delta with V a standard
    delta-stable variate; Laplace functional E exp(-z L_t) is the
    classical Mittag-Leffler function E_delta(-z t^delta).
    """
    if not (0.0 < delta <= 1.0):
        raise InvalidParams("delta must lie in (0, 1]")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if delta == 1.0:
        return np.full(n, float(t))
    return (t / _kernels.stable_standard(delta, n, stream.generator)) ** delta


def sample_inverse_stable_exact(delta: float, t: float, stream: Stream) -> float:
    """One exact sample of the inverse delta-stable subordinator at t."""
    return float(inverse_stable_batch(delta, t, 1, stream)[0])


def sample_K_batch(tc: TimeChangeParams, t: float, resolution: float, n: int,
                   stream: Stream) -> np.ndarray:
    """First-passage samples of the plain weighted-sum process (no outer
    clock); composing with an independent inverse (delta/n)-stable clock
    reproduces the inverse process in law."""
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if not resolution > 0:
        raise InvalidParams("resolution must be > 0")
    orders, weights, _ = combo_components(tc, subordinated=False)
    return _kernels.first_passage_batch(float(t), float(resolution), n,
                                        orders, weights, 0.0, stream.generator)


def sample_K(tc: TimeChangeParams, t: float, resolution: float,
             stream: Stream) -> float:
    return float(sample_K_batch(tc, t, resolution, 1, stream)[0])


def stable_density(alpha: float, x: float, t: float) -> float:
    """Density of the alpha-stable subordinator value at time t.

    Self-similar reduction to unit time, then inversion of
    exp(-s^alpha) in the value variable (contour quadrature) or its
    convergent descending series, chosen pointwise.
    """
    if not (0.0 < alpha < 1.0):
        raise InvalidParams("alpha must lie in (0, 1)")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if x <= 0:
        return 0.0
    scale = t ** (-1.0 / alpha)
    return float(stable_pdf_standard(alpha, x * scale)[0] * scale)


def inverse_stable_density(alpha: float, x: float, t: float) -> float:
    """Density of the inverse alpha-stable subordinator level at time t."""
    if not (0.0 < alpha < 1.0):
        raise InvalidParams("alpha must lie in (0, 1)")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if x <= 0:
        return 0.0
    return float(t / alpha * x ** (-1.0 - 1.0 / alpha)
                 * stable_pdf_standard(alpha, t * x ** (-1.0 / alpha))[0])


_PANEL_X, _PANEL_W = np.polynomial.legendre.leggauss(24)


def _panel_quad(f_vec, lo: float, hi: float, panels: int, grade: str = "left") -> float:
    """Gauss-Legendre panel quadrature of a vectorized integrand.

    ``grade`` clusters panel edges where the integrand has boundary
    structure: "left" squares toward lo, "both" clusters at both ends.
    """
    if hi <= lo:
        return 0.0
    u = np.linspace(0.0, 1.0, panels + 1)
    if grade == "left":
        edges = lo + (hi - lo) * u ** 2
    elif grade == "both":
        edges = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * u))
    elif grade == "log":
        if lo <= 0:
            raise ValueError("log grading needs lo > 0")
        edges = np.geomspace(lo, hi, panels + 1)
    else:
        edges = lo + (hi - lo) * u
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * _PANEL_X[None, :]).ravel()
    wts = (half[:, None] * _PANEL_W[None, :]).ravel()
    return float(np.dot(wts, np.asarray(f_vec(pts), dtype=float)))


def k_density(tc: TimeChangeParams, x: float, t: float) -> float:
    """Density of the two-order hitting time by the explicit convolution
    of inverse-stable and stable densities.

    Defined for n <= 1.  The degenerate n = 0 case is the
    inverse-(gamma+nu)-stable density itself; for n = 1 the two stable
    orders are gamma+nu and nu, and the t-Laplace transform is
    (1/s)(s^(gamma+nu) + s^nu) exp(-x (s^(gamma+nu) + s^nu)).
    """
    if tc.n > 1:
        raise InvalidParams("explicit density needs n <= 1")
    if not tc.order_sum < 1.0:
        raise InvalidParams("explicit density needs gamma+nu < 1")
    if not t > 0:
        raise InvalidParams("t must be > 0")
    if x <= 0:
        return 0.0
    a1 = tc.order_sum
    if tc.n == 0:
        return inverse_stable_density(a1, x, t)
    a2 = tc.nu

    def piece(a, b, panels):
        # int_0^t l_a(x, y) v_b(t-y, x) dy: the hitting-time factor has a
        # boundary layer of width x^(1/a) at y=0 followed by a power
        # profile, the stable factor one of width x^(1/b) at y=t with a
        # power tail inward; each structure gets its own scaled,
        # appropriately graded panel quadrature
        s_a = x ** (1.0 / a)
        s_b = x ** (1.0 / b)
        half_t = 0.5 * t
        y1 = min(30.0 * s_a, half_t)

        def f_vec(y):
            y = np.asarray(y)
            lv = y / a * x ** (-1.0 - 1.0 / a) * stable_pdf_standard(a, y * x ** (-1.0 / a))
            vv = x ** (-1.0 / b) * stable_pdf_standard(b, (t - y) * x ** (-1.0 / b))
            return lv * vv

        def right_vec(w):
            # w = (t - y) / x^(1/b), the stable factor in standard form
            w = np.asarray(w)
            y = t - s_b * w
            return (stable_pdf_standard(b, w)
                    * (y / a * x ** (-1.0 - 1.0 / a)
                       * stable_pdf_standard(a, y * x ** (-1.0 / a))))

        total = _panel_quad(lambda u: s_a * f_vec(s_a * u), 0.0, y1 / s_a, panels)
        if y1 < half_t:
            total += _panel_quad(f_vec, y1, half_t, panels, grade="log")
        w_top = half_t / s_b
        total += _panel_quad(right_vec, 0.0, min(30.0, w_top), panels)
        if w_top > 30.0:
            total += _panel_quad(right_vec, 30.0, w_top, panels, grade="log")
        return total

    coarse = piece(a1, a2, 12) + piece(a2, a1, 12)
    fine = piece(a1, a2, 24) + piece(a2, a1, 24)
    if abs(fine - coarse) > 1e-4 * max(1.0, abs(fine)):
        raise QuadratureFailure("hitting-time density quadrature did not converge")
    return fine
