"""Fractional-calculus operators of Prabhakar type, stable-subordinator
time changes, and transform-verified Monte Carlo for time-changed Levy
processes."""

from . import laplace, levy, pde, specfun, stoch
from ._kernels import BACKEND
from .errors import (FracstochError, GammaPole, HorizonExceeded, InvalidParams,
                     InversionFailure, NonConvergent, QuadratureFailure,
                     SeriesDiverges, StepTooLarge)
from .params import (BrownianDrift, CompensatedPoisson, GenWrightSpec,
                     InversionConfig, IsotropicStable, LevySpec, McEstimate,
                     Method, Poisson, PrabhakarParams, SamplePath,
                     TimeChangeParams, TransformId, WrightParams)
from .rng import Stream, master_stream

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "laplace", "levy", "pde", "specfun", "stoch",
    "FracstochError", "GammaPole", "HorizonExceeded", "InvalidParams",
    "InversionFailure", "NonConvergent", "QuadratureFailure", "SeriesDiverges",
    "StepTooLarge",
    "BrownianDrift", "CompensatedPoisson", "GenWrightSpec", "InversionConfig",
    "IsotropicStable", "LevySpec", "McEstimate", "Method", "Poisson",
    "PrabhakarParams", "SamplePath", "TimeChangeParams", "TransformId",
    "WrightParams", "Stream", "master_stream",
]
