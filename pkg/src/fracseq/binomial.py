"""Generalized binomial coefficients and the kernels of the backward-difference powers.

The coefficient sequence c_k = (-1)^k C(alpha, k), k >= 0, is the impulse
response of the causal operator (1 - tau^{-1})^alpha; every other module
builds on it.  All coefficients are produced by the multiplicative
recurrence c_{k+1} = c_k (k - alpha)/(k + 1), never through factorials or
gamma values of large arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvolutionKernel",
    "binom",
    "falling_factorial",
    "make_kernel",
    "partial_sum",
]


def _check_exponent(alpha) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"exponent must be finite, got {alpha!r}")
    return alpha


def _check_count(n, name: str = "n") -> int:
    if isinstance(n, float) and not n.is_integer():
        raise ValueError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise ValueError(f"{name} must be nonnegative, got {n}")
    return n


@dataclass(frozen=True)
class ConvolutionKernel:
    """Truncated one-sided kernel with coeffs[k] = (-1)^k C(alpha, k), k = 0..N.

    coeffs[0] is always 1; for alpha in (0, 1) every later entry is negative,
    for alpha < 0 every entry is positive (fractional-sum kernel).
    """

    alpha: float
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @property
    def truncation(self) -> int:
        """Largest retained index N."""
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)


def binom(alpha: float, n: int) -> float:
    """Binomial coefficient C(alpha, n) = alpha (alpha-1) ... (alpha-n+1) / n!.

    Evaluated as a product of n factors (alpha - i)/(i + 1); C(alpha, 0) = 1.
    """
    alpha = _check_exponent(alpha)
    n = _check_count(n)
    out = 1.0
    for i in range(n):
        out *= (alpha - i) / (i + 1)
    return out


def falling_factorial(x: float, n: float) -> float:
    """Falling factorial x^(n) = Gamma(x + 1) / Gamma(x - n + 1).

    For integer n >= 0 the plain product x (x-1) ... (x-n+1) is used, which is
    the finite limiting value even where the gamma quotient is pole-over-pole.
    Non-integer n (needed for exponents like -(1 + alpha)) falls back to the
    gamma quotient; a numerator pole with no cancelling denominator pole
    raises a ValueError, a denominator-only pole yields 0.
    """
    x = float(x)
    nf = float(n)
    if not (math.isfinite(x) and math.isfinite(nf)):
        raise ValueError("falling factorial requires finite arguments")
    if nf.is_integer():
        m = _check_count(int(nf), name="n")
        out = 1.0
        for i in range(m):
            out *= x - i
        return out
    try:
        num = math.gamma(x + 1.0)
    except ValueError:
        raise ValueError(
            f"falling factorial has a gamma pole at x + 1 = {x + 1.0!r} "
            "with no cancelling pole"
        ) from None
    try:
        den = math.gamma(x - nf + 1.0)
    except ValueError:
        return 0.0
    return num / den


def make_kernel(alpha: float, trunc: int) -> ConvolutionKernel:
    """Kernel of (1 - tau^{-1})^alpha truncated at index ``trunc``."""
    alpha = _check_exponent(alpha)
    trunc = _check_count(trunc, name="trunc")
    if trunc == 0:
        return ConvolutionKernel(alpha, np.ones(1))
    k = np.arange(trunc, dtype=float)
    factors = np.concatenate(([1.0], (k - alpha) / (k + 1.0)))
    return ConvolutionKernel(alpha, np.cumprod(factors))


def partial_sum(alpha: float, n: int) -> float:
    """Sum_{k=0}^{n} (-1)^k C(alpha, k), which equals (-1)^n C(alpha - 1, n)."""
    alpha = _check_exponent(alpha)
    n = _check_count(n)
    total = 1.0
    c = 1.0
    for k in range(n):
        c *= (k - alpha) / (k + 1)
        total += c
    return total
