"""Pure-numpy implementations of the sampling hot kernels.

The compiled extension in ``_core`` mirrors this module; either backend
may be active (see ``fracstoch._kernels``).  Draw order differs between
backends, so runs are reproducible per backend, not across them.
"""

from __future__ import annotations

import numpy as np

from ..errors import HorizonExceeded

NAME = "numpy"


def stable_standard(alpha: float, n: int, generator: np.random.Generator) -> np.ndarray:
    """n positive alpha-stable variates with E exp(-s X) = exp(-s^alpha).

    Kanter's representation: a single uniform on (0, pi) and a single
    unit exponential per draw.  alpha must lie in (0, 1).
    """
    u = generator.uniform(0.0, np.pi, n)
    e = generator.standard_exponential(n)
    su = np.sin(u)
    return (np.sin(alpha * u) / su ** (1.0 / alpha)
            * (np.sin((1.0 - alpha) * u) / e) ** (1.0 / alpha - 1.0))


def combo_increments(
    dt: np.ndarray,
    orders: np.ndarray,
    weights: np.ndarray,
    outer: float,
    generator: np.random.Generator,
) -> np.ndarray:
    """Increments over spans ``dt`` of the weighted sum of stable
    subordinators run at a common clock.

    The clock is the identity when ``outer`` is 0, otherwise an
    independent outer-stable increment of index ``outer``.  Component
    ``r`` contributes an increment of the stable subordinator of index
    ``orders[r]`` over the clock span scaled by ``weights[r]``; an order
    of exactly 1 degenerates to pure drift.
    """
    dt = np.asarray(dt, dtype=float)
    if outer:
        w = dt ** (1.0 / outer) * stable_standard(outer, dt.size, generator)
    else:
        w = dt
    out = np.zeros_like(w)
    for a, c in zip(orders, weights):
        if a == 1.0:
            out = out + c * w
        else:
            out = out + (c * w) ** (1.0 / a) * stable_standard(float(a), w.size, generator)
    return out


def first_passage_batch(
    level: float,
    resolution: float,
    n_paths: int,
    orders: np.ndarray,
    weights: np.ndarray,
    outer: float,
    generator: np.random.Generator,
    max_steps: int | None = None,
) -> np.ndarray:
    """First times the summed-subordinator path exceeds ``level``.

    The walk advances on a fixed grid of width ``resolution``; the
    reported time is the midpoint of the bracketing step, so the bias is
    at most resolution/2.  Steps are never redrawn: refining a crossing
    increment with fresh finer draws would erase jump-driven crossings
    and distort the law.
    """
    if max_steps is None:
        # crossing time concentrates below ~level^(1/max order); scale with it
        amax = float(np.max(orders))
        max_steps = int(5e7 / max(n_paths, 1)) + int(200.0 * max(level, 1.0) ** (1.0 / amax) / resolution)
    s = np.zeros(n_paths)
    v = np.zeros(n_paths)
    out = np.empty(n_paths)
    active = np.arange(n_paths)
    steps = 0
    while active.size:
        inc = combo_increments(np.full(active.size, resolution), orders, weights, outer, generator)
        nv = v[active] + inc
        crossed = nv >= level
        done = active[crossed]
        out[done] = s[done] + 0.5 * resolution
        alive = active[~crossed]
        s[alive] += resolution
        v[alive] = nv[~crossed]
        active = alive
        steps += 1
        if steps > max_steps:
            raise HorizonExceeded(
                f"{active.size} of {n_paths} paths failed to cross {level} "
                f"within {steps} steps of {resolution}"
            )
    return out
