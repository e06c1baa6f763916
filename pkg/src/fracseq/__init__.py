"""Fractional difference equations on exponentially weighted sequence spaces."""

from .binomial import ConvolutionKernel, binom, falling_factorial, make_kernel, partial_sum
from .operators import (
    caputo_delta,
    forward_difference,
    frac_power,
    frac_sum,
    gl_delta,
    rl_delta,
)
from .sequences import WeightedSequence, chi_geq, convolve, delta, shift, weighted_norm
from .solver import IvpSpec, residual, solve_caputo, solve_gl, solve_rl
from .stability import (
    StabilityClass,
    StabilityVerdict,
    SymbolCurve,
    binom_estimate_margin,
    causal_radius,
    classify_spectrum,
    invertibility_check,
    matignon_boundary,
    matignon_check,
    spectral_radius,
    spectrum,
    symbol,
    symbol_curve,
)
from .ztransform import (
    SupportDiagnostic,
    inverse_ztransform,
    multiplication_equivalence_check,
    parseval_check,
    positive_support_test,
    ztransform,
)

__version__ = "0.1.0"

__all__ = [
    "ConvolutionKernel",
    "IvpSpec",
    "StabilityClass",
    "StabilityVerdict",
    "SupportDiagnostic",
    "SymbolCurve",
    "WeightedSequence",
    "binom",
    "binom_estimate_margin",
    "caputo_delta",
    "causal_radius",
    "chi_geq",
    "classify_spectrum",
    "convolve",
    "delta",
    "falling_factorial",
    "forward_difference",
    "frac_power",
    "frac_sum",
    "gl_delta",
    "inverse_ztransform",
    "invertibility_check",
    "make_kernel",
    "matignon_boundary",
    "matignon_check",
    "multiplication_equivalence_check",
    "parseval_check",
    "partial_sum",
    "positive_support_test",
    "residual",
    "rl_delta",
    "shift",
    "solve_caputo",
    "solve_gl",
    "solve_rl",
    "spectral_radius",
    "spectrum",
    "symbol",
    "symbol_curve",
    "weighted_norm",
    "ztransform",
]
