"""Truncated circle transform of finitely supported sequences.

Forward transform: samples of F(z) = sum_k x_k z^{-k} at the M uniform
points z_j = rho e^{2 pi i j / M} of the circle of radius rho.  For a
finite window the sum is exact.

Inverse transform: x_k = rho^k (1/M) sum_j F(z_j) e^{2 pi i j k / M}, the
plain angular DFT inversion; exact whenever the window length does not
exceed M (otherwise aliasing folds distinct indices together and the call
is refused).

Uniform angular sampling makes every quadrature here trapezoidal, which is
exact for the trigonometric polynomials produced by finite windows.  The
positive-support test estimates the growth of circle integrals along
increasing radii: a term at a negative index -m inflates the integral like
mu^{2m}, while a sequence supported on N has non-increasing integrals.
Any finite ladder of radii makes this a heuristic, so the result also
carries the literal window support for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import WeightedSequence, shift

__all__ = [
    "SupportDiagnostic",
    "inverse_ztransform",
    "multiplication_equivalence_check",
    "parseval_check",
    "positive_support_test",
    "ztransform",
]


def _samples_on_circle(x: WeightedSequence, radius: float, m: int) -> np.ndarray:
    ks = x.indices.astype(float)
    js = np.arange(m)
    phases = np.exp(-2j * np.pi * np.outer(js, ks) / m)
    return (phases * radius ** (-ks)[None, :]) @ x.values


def ztransform(x: WeightedSequence, rho: float | None = None, samples: int = 256) -> np.ndarray:
    """Values of sum_k x_k z^{-k} at z_j = rho e^{2 pi i j / M}, shape (M, d).

    ``rho`` defaults to the weight the sequence carries.
    """
    rho = x.rho if rho is None else float(rho)
    if not rho > 0:
        raise ValueError(f"radius must be positive, got {rho}")
    m = int(samples)
    if m < 1:
        raise ValueError("need at least one sample")
    return _samples_on_circle(x, rho, m)


def inverse_ztransform(samples_on_circle, rho: float, window: tuple[int, int]) -> WeightedSequence:
    """Recover the window [a, b] from M equally spaced circle samples.

    Exact for sequences supported inside the window when b - a + 1 <= M;
    longer windows alias and are rejected.
    """
    vals = np.asarray(samples_on_circle, dtype=complex)
    if vals.ndim == 1:
        vals = vals.reshape(-1, 1)
    rho = float(rho)
    if not rho > 0:
        raise ValueError(f"radius must be positive, got {rho}")
    a, b = int(window[0]), int(window[1])
    if b < a:
        raise ValueError("empty window")
    m = len(vals)
    if b - a + 1 > m:
        raise ValueError(
            f"aliasing: window length {b - a + 1} exceeds the {m} samples"
        )
    ks = np.arange(a, b + 1, dtype=float)
    js = np.arange(m)
    phases = np.exp(2j * np.pi * np.outer(ks, js) / m)
    out = (phases @ vals) / m * (rho**ks)[:, None]
    return WeightedSequence(a, out, rho)


def parseval_check(x: WeightedSequence, rho: float | None = None, samples: int = 4096) -> float:
    """Relative gap between ||x||^2 in the weighted norm and the circle mean.

    The transform is unitary, so (1/M) sum_j ||F(z_j)||^2 reproduces
    sum_k ||x_k||^2 rho^{-2k}; the return value is the relative error
    (defined as 0 for the zero sequence).
    """
    rho = x.rho if rho is None else float(rho)
    weights = rho ** (-2.0 * x.indices.astype(float))
    lhs = float(np.sum(np.abs(x.values) ** 2 * weights[:, None]))
    if lhs == 0.0:
        return 0.0
    f = ztransform(x, rho, samples)
    rhs = float(np.mean(np.sum(np.abs(f) ** 2, axis=1)))
    return abs(lhs - rhs) / lhs


def multiplication_equivalence_check(x: WeightedSequence, rho: float | None = None, samples: int = 4096) -> float:
    """Max gap between the transform of the shift and multiplication by z.

    Both sides are finite sums of the same powers, so the return value is
    roundoff-level for any finitely supported sequence.
    """
    rho = x.rho if rho is None else float(rho)
    m = int(samples)
    z = rho * np.exp(2j * np.pi * np.arange(m) / m)
    lhs = ztransform(shift(x, 1), rho, m)
    rhs = z[:, None] * ztransform(x, rho, m)
    return float(np.max(np.linalg.norm(lhs - rhs, axis=1))) if m else 0.0


@dataclass(frozen=True)
class SupportDiagnostic:
    """Outcome of the positive-support test.

    ``positive`` is the growth-heuristic verdict; ``literal_positive`` is
    the exact window check (no nonzero entry below index 0).  ``ratios``
    holds consecutive integral quotients, flagged where they exceed
    ``thresholds`` = (radius ratio)^2 - 0.1.
    """

    positive: bool
    literal_positive: bool
    radii: np.ndarray
    integrals: np.ndarray
    ratios: np.ndarray
    thresholds: np.ndarray

    @property
    def agrees(self) -> bool:
        return self.positive == self.literal_positive


def positive_support_test(
    x: WeightedSequence,
    rho: float | None = None,
    radii=None,
    samples: int = 4096,
) -> SupportDiagnostic:
    """Estimate whether spt x lies in N from circle-integral growth.

    Integrates ||F||^2 over circles of increasing radius (default ladder
    rho, 2 rho, 4 rho, 8 rho).  Growth of a consecutive pair by more than
    (radius ratio)^2 - 0.1 betrays a negative-index term and yields
    ``positive=False``; otherwise ``positive=True``.  Sequences supported
    on N have non-increasing integrals and can never be flagged.
    """
    rho = x.rho if rho is None else float(rho)
    if radii is None:
        radii = [rho, 2.0 * rho, 4.0 * rho, 8.0 * rho]
    radii = np.asarray([float(r) for r in radii])
    if len(radii) == 0:
        raise ValueError("empty radii list")
    if np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be positive and strictly increasing")
    m = int(samples)
    integrals = np.empty(len(radii))
    for i, mu in enumerate(radii):
        f = _samples_on_circle(x, mu, m)
        integrals[i] = 2.0 * np.pi * float(np.mean(np.sum(np.abs(f) ** 2, axis=1)))
    tiny = np.finfo(float).tiny
    ratios = integrals[1:] / np.maximum(integrals[:-1], tiny)
    ratios[integrals[1:] <= tiny] = 0.0
    thresholds = (radii[1:] / radii[:-1]) ** 2 - 0.1
    flagged = bool(np.any(ratios > thresholds))
    literal = bool(np.all(x.support() >= 0))
    return SupportDiagnostic(
        positive=not flagged,
        literal_positive=literal,
        radii=radii,
        integrals=integrals,
        ratios=ratios,
        thresholds=thresholds,
    )
