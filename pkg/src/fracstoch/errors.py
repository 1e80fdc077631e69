"""Exception types raised by the numerical and stochastic layers."""


class FracstochError(Exception):
    """Base class for all package-specific failures."""


class InvalidParams(FracstochError, ValueError):
    """Parameters outside the admissible range of an operation."""


class NonConvergent(FracstochError):
    """A series hit its term cap before meeting the stopping rule."""


class GammaPole(FracstochError):
    """A numerator Gamma factor was evaluated at a non-positive integer."""


class SeriesDiverges(FracstochError):
    """Series evaluation detected sustained term growth.

    The index of the offending term is stored in ``term_index``.
    """

    def __init__(self, message: str, term_index: int | None = None):
        super().__init__(message)
        self.term_index = term_index


class QuadratureFailure(FracstochError):
    """Adaptive quadrature could not reach the requested tolerance."""


class InversionFailure(FracstochError):
    """Numerical Laplace inversion failed or cross-method check tripped."""


class HorizonExceeded(FracstochError):
    """A first-passage simulation failed to cross its level within the cap."""


class StepTooLarge(FracstochError):
    """Requested SDE step exceeds the stability bound.

    Never raised by the built-in Euler scheme, which refines the step
    automatically; exposed for callers implementing their own schemes.
    """
