"""Causal fractional difference operators.

Five operators, all causal convolutions with binomial kernels:

* ``frac_power``: (1 - tau^{-1})^alpha on Z-windows, any real alpha;
* ``frac_sum``: the fractional sum on N-windows (order alpha > 0), whose
  kernel (-1)^k C(-alpha, k) is positive;
* ``forward_difference``: u -> chi_N (tau - 1) u on Z-windows;
* ``rl_delta``: difference after fractional sum (Riemann-Liouville form);
* ``caputo_delta``: fractional sum after difference (Caputo form);
* ``gl_delta``: the h-step scaled variant (Grunwald-Letnikov form).

Sequences on N are represented as windows with start = 0; the zero
extension to Z is implicit.  Given inputs on 0..N, the two composite
operators return values on 0..N-1, the range where the stored window
determines them exactly.
"""

from __future__ import annotations

import numpy as np

from .binomial import make_kernel
from .sequences import WeightedSequence, convolve

__all__ = [
    "caputo_delta",
    "forward_difference",
    "frac_power",
    "frac_sum",
    "gl_delta",
    "rl_delta",
]


def _check_unit_interval(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {alpha}")
    return alpha


def _require_nat(v: WeightedSequence, min_len: int = 1) -> WeightedSequence:
    if v.start != 0:
        raise ValueError("expected a sequence on the natural-number window (start = 0)")
    if len(v) < min_len:
        raise ValueError(f"window too short, need at least {min_len} samples")
    return v


def frac_power(alpha: float, u: WeightedSequence, trunc: int | None = None) -> WeightedSequence:
    """Apply (1 - tau^{-1})^alpha, i.e. convolve with its binomial kernel.

    ``trunc`` is the kernel truncation length and defaults to len(u), which
    makes every output entry n with n - u.start <= len(u) exact.
    """
    if trunc is None:
        trunc = len(u)
    return convolve(make_kernel(alpha, trunc), u)


def frac_sum(alpha: float, v: WeightedSequence) -> WeightedSequence:
    """Fractional sum of order alpha > 0 on the window 0..N.

    Entry n is sum_{k=0}^{n} (-1)^k C(-alpha, k) v_{n-k}, the restriction to
    N of (1 - tau^{-1})^{-alpha} applied to the zero-extended sequence.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise ValueError(f"fractional sum needs a positive order, got {alpha}")
    _require_nat(v)
    full = convolve(make_kernel(-alpha, len(v) - 1), v)
    return WeightedSequence(0, full.values[: len(v)], v.rho)


def forward_difference(u: WeightedSequence) -> WeightedSequence:
    """u -> chi_N (tau - 1) u: entry n is u_{n+1} - u_n for n >= 0, zero below.

    The last window entry sees the implicit zero beyond the window; for
    truncated data that entry is a boundary artifact.
    """
    d = u.dim
    zero = np.zeros((1, d), dtype=complex)
    nxt = np.vstack([u.values, zero])
    cur = np.vstack([zero, u.values])
    out = nxt - cur
    start = u.start - 1
    inds = np.arange(start, start + len(out))
    out[inds < 0] = 0.0
    return WeightedSequence(start, out, u.rho)


def rl_delta(alpha: float, v: WeightedSequence) -> WeightedSequence:
    """Riemann-Liouville fractional difference: difference after fractional sum.

    For v on 0..N returns (Delta (fractional sum of order 1-alpha) v) on
    0..N-1; the impulse response is the alpha-kernel shifted one step left.
    """
    alpha = _check_unit_interval(alpha)
    _require_nat(v, min_len=2)
    s = frac_sum(1.0 - alpha, v)
    return WeightedSequence(0, s.values[1:] - s.values[:-1], v.rho)


def caputo_delta(alpha: float, v: WeightedSequence) -> WeightedSequence:
    """Caputo fractional difference: fractional sum after difference.

    For v on 0..N returns values on 0..N-1.  Differencing first removes the
    initial level, so constants are annihilated.
    """
    alpha = _check_unit_interval(alpha)
    _require_nat(v, min_len=2)
    dv = WeightedSequence(0, v.values[1:] - v.values[:-1], v.rho)
    return frac_sum(1.0 - alpha, dv)


def gl_delta(alpha: float, h: float, v: WeightedSequence) -> WeightedSequence:
    """Grunwald-Letnikov difference on the grid h*N.

    Entry n (time t = n h) is h^{-alpha} sum_{k=0}^{n} (-1)^k C(alpha, k)
    v_{n-k}; with h = 1 this is the alpha-power operator restricted to N.
    """
    alpha = _check_unit_interval(alpha)
    h = float(h)
    if not h > 0:
        raise ValueError(f"step size must be positive, got {h}")
    _require_nat(v)
    full = convolve(make_kernel(alpha, len(v) - 1), v)
    return WeightedSequence(0, h ** (-alpha) * full.values[: len(v)], v.rho)
