"""Parameter records shared across the special-function, transform and
stochastic layers, plus the Levy process catalog."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams


@dataclass(frozen=True)
class PrabhakarParams:
    """Quadruple (alpha, eta, xi, zeta) of the generalized Mittag-Leffler
    kernel x -> sum_r x^r (xi)_r / (r! Gamma(alpha r + eta)) scaled by zeta.

    ``alpha`` must be positive for every evaluation; ``eta`` must be
    positive wherever the kernel enters a convolution (checked at the
    operator call sites, not here, since the regularization term uses
    eta <= 0 legitimately).
    """

    alpha: float
    eta: float
    xi: float
    zeta: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise InvalidParams(f"alpha must be > 0, got {self.alpha}")

    def require_kernel_orders(self) -> None:
        if not self.eta > 0:
            raise InvalidParams(f"kernel exponent eta must be > 0, got {self.eta}")


@dataclass(frozen=True)
class WrightParams:
    """Index pair (a, b) of the Wright series sum_r x^r / (r! Gamma(a r + b))."""

    a: float
    b: float


@dataclass(frozen=True)
class GenWrightSpec:
    """Upper/lower parameter lists of the generalized Wright series.

    ``upper`` holds (a_m, alpha_m) pairs entering numerator Gammas,
    ``lower`` holds (b_j, beta_j) pairs entering denominator Gammas.
    """

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.upper or not self.lower:
            raise InvalidParams("upper and lower parameter lists must be non-empty")
        object.__setattr__(self, "upper", tuple((float(a), float(al)) for a, al in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(be)) for b, be in self.lower))


@dataclass(frozen=True)
class TimeChangeParams:
    """Orders (gamma, nu, delta) of the time change, with rate and diffusivity.

    ``n`` is the ceiling of delta (and equals delta when delta is a
    non-negative integer).  ``lambda_rate`` enters only the PDE-facing
    transforms; the stochastic constructions fix the rate at 1.
    """

    gamma: float
    nu: float
    delta: float
    lambda_rate: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise InvalidParams(f"gamma must lie in (0,1), got {self.gamma}")
        if not (0.0 < self.nu < 1.0):
            raise InvalidParams(f"nu must lie in (0,1), got {self.nu}")
        if not self.delta > -0.5:
            raise InvalidParams(f"delta must exceed -1/2, got {self.delta}")
        if not self.lambda_rate > 0:
            raise InvalidParams(f"lambda_rate must be > 0, got {self.lambda_rate}")
        if self.c == 0:
            raise InvalidParams("diffusivity c must be nonzero")

    @property
    def n(self) -> int:
        """Ceiling of delta; 0 for delta == 0."""
        if self.delta < 0:
            raise InvalidParams("n undefined for negative delta")
        return math.ceil(self.delta)

    @property
    def order_sum(self) -> float:
        return self.gamma + self.nu

    def require_simulation(self) -> None:
        """Constraints for pathwise constructions (Theorem-level regime)."""
        if self.delta < 0:
            raise InvalidParams("simulation requires delta >= 0")
        if not self.delta * self.nu < self.order_sum <= 1.0:
            raise InvalidParams(
                f"simulation mode needs delta*nu < gamma+nu <= 1, got "
                f"delta*nu={self.delta * self.nu}, gamma+nu={self.order_sum}"
            )
        n = self.n
        if n > 0 and self.delta != n and self.order_sum * n / self.delta > 1.0 + 1e-12:
            # non-integer delta: every inner stable order must be <= 1
            raise InvalidParams(
                f"subordinated construction needs gamma+nu <= delta/n, got "
                f"gamma+nu={self.order_sum}, delta/n={self.delta / n}"
            )

    def require_analytic(self) -> None:
        """Constraints for transform evaluation (delta in (-1/2,0) allowed)."""
        if not self.delta * self.nu < self.order_sum <= 2.0:
            raise InvalidParams(
                f"analytic mode needs delta*nu < gamma+nu <= 2, got "
                f"delta*nu={self.delta * self.nu}, gamma+nu={self.order_sum}"
            )


@dataclass(frozen=True)
class SamplePath:
    """A time grid with process values; ``monotone`` marks subordinator paths."""

    times: np.ndarray
    values: np.ndarray
    monotone: bool = False

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.shape != values.shape:
            raise InvalidParams("times and values must have equal length")
        if times.size and not np.all(np.diff(times) > 0):
            raise InvalidParams("times must be strictly increasing")
        if self.monotone:
            if times.size and times[0] != 0.0:
                raise InvalidParams("monotone paths must start at time 0")
            if values.size and values[0] != 0.0:
                raise InvalidParams("monotone paths must start at value 0")
            if values.size and np.any(np.diff(values) < 0):
                raise InvalidParams("monotone flag set but values decrease")


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo point estimate with its standard error."""

    mean: float
    stderr: float
    n_samples: int

    def __post_init__(self):
        if self.n_samples <= 0:
            raise InvalidParams("n_samples must be positive")
        if self.stderr < 0:
            raise InvalidParams("stderr must be non-negative")


class Method(enum.Enum):
    GAVER_STEHFEST = "gaver-stehfest"
    FIXED_TALBOT = "fixed-talbot"


@dataclass(frozen=True)
class InversionConfig:
    """Numerical Laplace inversion settings.

    ``order`` is the Gaver-Stehfest term count (even, default 14) or the
    Talbot node count (default 32) depending on ``method``.
    """

    method: Method = Method.FIXED_TALBOT
    order: int = 0          # 0 -> method default
    tolerance: float = 1e-5
    cross_check: bool = True

    def __post_init__(self):
        if self.order < 0:
            raise InvalidParams("order must be positive")
        if self.method is Method.GAVER_STEHFEST and self.order and self.order % 2:
            raise InvalidParams("Gaver-Stehfest order must be even")
        if not self.tolerance > 0:
            raise InvalidParams("tolerance must be positive")

    @property
    def effective_order(self) -> int:
        if self.order:
            return self.order
        return 14 if self.method is Method.GAVER_STEHFEST else 32


class TransformId(enum.Enum):
    """Closed-form transform catalog (see :func:`fracstoch.laplace.analytic_transform`)."""

    H_XS = "h-xs"                          # double Laplace of h(x,t)
    H_TS = "h-ts"                          # t-Laplace of h(x,.)
    H_X_SERIES = "h-x-series"              # x-Laplace of h(.,t), Prabhakar series
    E_DENS_TS = "e-dens-ts"                # t-Laplace of the inverse-process density
    K_TS = "k-ts"                          # t-Laplace of the n=1 telegraph-type density
    G_FOURIER_LAPLACE = "g-fourier-laplace"
    G_X_LAPLACE = "g-x-laplace"


@dataclass(frozen=True)
class LevySpec:
    """Base record for the Levy catalog; concrete variants below."""

    dim: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidParams("dim must be a positive integer")


@dataclass(frozen=True)
class BrownianDrift(LevySpec):
    """Brownian motion with drift; covariance Q = 2c * Identity so that the
    generator is a <grad, .> + c Laplacian."""

    a: tuple[float, ...] | float = 0.0
    c: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if not self.c > 0:
            raise InvalidParams("diffusivity c must be > 0")
        a = self.a
        if np.isscalar(a):
            a = (float(a),) * self.dim
        else:
            a = tuple(float(v) for v in a)
        if len(a) != self.dim:
            raise InvalidParams("drift vector length must equal dim")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class IsotropicStable(LevySpec):
    """Isotropic stable process with symbol scale*|xi|^(2 alpha_s)."""

    alpha_s: float = 0.5
    scale: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if not (0.0 < self.alpha_s <= 1.0):
            raise InvalidParams("alpha_s must lie in (0, 1]")
        if not self.scale > 0:
            raise InvalidParams("scale must be > 0")


@dataclass(frozen=True)
class Poisson(LevySpec):
    """Unit-jump Poisson counting process on the non-negative lattice."""

    rate: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.dim != 1:
            raise InvalidParams("Poisson variant is one-dimensional")
        if not self.rate > 0:
            raise InvalidParams("rate must be > 0")


@dataclass(frozen=True)
class CompensatedPoisson(LevySpec):
    """Poisson process minus its mean, rate * t."""

    rate: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.dim != 1:
            raise InvalidParams("CompensatedPoisson variant is one-dimensional")
        if not self.rate > 0:
            raise InvalidParams("rate must be > 0")
