"""Operator symbol z (1 - 1/z)^alpha and Matignon-type stability analysis.

Under the circle transform the operator tau (1 - tau^{-1})^alpha acts as
multiplication by f(z) = z (1 - z^{-1})^alpha, so invertibility against a
matrix A comes down to whether the sampled curve f(S_rho) stays away from
the spectrum of A.  The binomial power uses the principal logarithm: for
|z| > 1 the point 1 - 1/z lies in the open right half of the disc of
radius 1 around 1, so the branch cut is never approached.

For real scalar coefficients the range of f over real |z| > 1 is
(-inf, -2^alpha) union (0, inf); the complementary closed interval
[-2^alpha, 0] therefore separates the stability classes:

* inside (-2^alpha, 0): the sufficient condition holds (SufficientStable);
* at 0 or -2^alpha exactly: Boundary;
* any other real value, or a complex value reached by f: NecessaryFail,
  with a witness point z solving f(z) = lambda;
* complex values the solver cannot reach: Indeterminate (the sufficient
  condition is only automated for the real scalar case).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "StabilityClass",
    "StabilityVerdict",
    "SymbolCurve",
    "binom_estimate_margin",
    "causal_radius",
    "classify_spectrum",
    "invertibility_check",
    "matignon_boundary",
    "matignon_check",
    "spectral_radius",
    "spectrum",
    "symbol",
    "symbol_curve",
]


class StabilityClass(enum.Enum):
    SUFFICIENT_STABLE = "SufficientStable"
    NECESSARY_FAIL = "NecessaryFail"
    BOUNDARY = "Boundary"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class StabilityVerdict:
    """Classification plus, for NecessaryFail, a witness z with f(z) = lambda."""

    classification: StabilityClass
    eigenvalue: complex | None = None
    witness: complex | None = None


@dataclass(frozen=True)
class SymbolCurve:
    """Samples of f on the circle of radius rho at angles 2 pi j / M."""

    rho: float
    alpha: float
    theta: np.ndarray
    z: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        for arr in (self.theta, self.z, self.f):
            arr.setflags(write=False)

    @property
    def samples(self) -> int:
        return len(self.theta)

    def to_csv(self, path) -> None:
        """Write ``theta,re_z,im_z,re_f,im_f`` rows."""
        def fmt(x: float) -> str:
            return format(float(x), ".17g")

        lines = ["theta,re_z,im_z,re_f,im_f"]
        for t, z, f in zip(self.theta, self.z, self.f):
            lines.append(
                ",".join([fmt(t), fmt(z.real), fmt(z.imag), fmt(f.real), fmt(f.imag)])
            )
        text = "\n".join(lines) + "\n"
        if hasattr(path, "write"):
            path.write(text)
        else:
            with open(path, "w", newline="") as fh:
                fh.write(text)


def _check_unit_interval(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {alpha}")
    return alpha


def _symbol_raw(z, alpha: float):
    return z * np.exp(alpha * np.log1p(-1.0 / z))


def symbol(z, alpha: float):
    """f(z) = z (1 - z^{-1})^alpha for |z| > 1, principal branch.

    Accepts a complex scalar or an array; raises if any point lies on or
    inside the unit circle.
    """
    zz = np.asarray(z, dtype=complex)
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise ValueError("exponent must be finite")
    if np.any(np.abs(zz) <= 1.0):
        raise ValueError("symbol is defined for |z| > 1 only")
    out = _symbol_raw(zz, alpha)
    return complex(out) if out.ndim == 0 else out


def symbol_curve(rho: float, alpha: float, samples: int = 4096) -> SymbolCurve:
    """Sample f on the circle of radius rho > 1 at ``samples`` uniform angles."""
    rho = float(rho)
    if not rho > 1.0:
        raise ValueError(f"radius must exceed 1, got {rho}")
    samples = int(samples)
    if samples < 8:
        raise ValueError("need at least 8 samples")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    z = rho * np.exp(1j * theta)
    return SymbolCurve(rho, float(alpha), theta, z, _symbol_raw(z, float(alpha)))


def binom_estimate_margin(rho: float, alpha: float, samples: int = 4096) -> float:
    """min_j |(1 - z_j^{-1})^alpha| - (1 - rho^{-1})^alpha over the circle.

    Nonnegative up to roundoff for alpha in (0, 1); the minimum sits at the
    positive real axis where equality holds.
    """
    alpha = _check_unit_interval(alpha)
    rho = float(rho)
    if not rho > 1.0:
        raise ValueError(f"radius must exceed 1, got {rho}")
    theta = 2.0 * np.pi * np.arange(int(samples)) / int(samples)
    z = rho * np.exp(1j * theta)
    mags = np.abs(np.exp(alpha * np.log1p(-1.0 / z)))
    return float(np.min(mags) - (1.0 - 1.0 / rho) ** alpha)


def spectrum(a) -> np.ndarray:
    """Eigenvalues of a square complex matrix (scalars count as 1 x 1)."""
    mat = np.atleast_2d(np.asarray(a, dtype=complex))
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix entries must be finite")
    return np.linalg.eigvals(mat)


def spectral_radius(a) -> float:
    return float(np.max(np.abs(spectrum(a))))


def _growth(mu: float, alpha: float) -> float:
    # f restricted to the positive real axis; strictly increasing on (1, inf)
    return mu * (1.0 - 1.0 / mu) ** alpha


def causal_radius(a, alpha: float) -> float:
    """Smallest rho* >= 1 with mu (1 - 1/mu)^alpha > r(A) for all mu > rho*.

    Beyond rho* the lower bound |f(z)| >= mu (1 - 1/mu)^alpha clears the
    spectral radius, so the shifted operator is invertible with causal
    inverse on every larger circle.  Bisection on the increasing real
    profile, resolved to machine precision.
    """
    alpha = _check_unit_interval(alpha)
    r = spectral_radius(a)
    if r == 0.0:
        return 1.0
    lo, hi = 1.0, 2.0
    while _growth(hi, alpha) <= r:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _growth(mid, alpha) > r:
            hi = mid
        else:
            lo = mid
    return hi


def _refine_min_distance(lam: complex, rho: float, alpha: float, theta0: float, width: float) -> float:
    # golden-section minimization of |f(rho e^{i theta}) - lam| near theta0
    inv = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = theta0 - width, theta0 + width

    def g(t: float) -> float:
        return abs(_symbol_raw(rho * np.exp(1j * t), alpha) - lam)

    c, d = b - inv * (b - a), a + inv * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(80):
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - inv * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + inv * (b - a)
            gd = g(d)
    return min(gc, gd)


def invertibility_check(a, rho: float, alpha: float, samples: int = 4096, tol: float | None = None):
    """Distance test between the sampled curve f(S_rho) and the spectrum of A.

    Returns (invertible, min_distance).  Each eigenvalue gets the threshold
    ``tol`` or, when tol is None, 1e-9 (1 + |lambda|); a distance below the
    threshold conservatively reports non-invertible, since exact curve
    crossings cannot be certified from samples.
    """
    alpha = _check_unit_interval(alpha)
    curve = symbol_curve(rho, alpha, samples)
    width = 2.0 * np.pi / curve.samples
    invertible = True
    overall = np.inf
    for lam in spectrum(a):
        coarse = np.abs(curve.f - lam)
        j = int(np.argmin(coarse))
        dist = min(float(coarse[j]), _refine_min_distance(lam, curve.rho, alpha, float(curve.theta[j]), width))
        threshold = tol if tol is not None else 1e-9 * (1.0 + abs(lam))
        if dist < threshold:
            invertible = False
        overall = min(overall, dist)
    return invertible, float(overall)


def matignon_boundary(alpha: float) -> float:
    """Left endpoint -2^alpha of the real stability interval [-2^alpha, 0]."""
    return -(2.0 ** _check_unit_interval(alpha))


def _solve_real(target: float, alpha: float) -> complex:
    # real-axis preimage of target under f; target in (0, inf) or (-inf, -2^alpha)
    if target > 0:
        def g(mu: float) -> float:
            return _growth(mu, alpha)
        sign = 1.0
        goal = target
    else:
        def g(mu: float) -> float:
            return mu * (1.0 + 1.0 / mu) ** alpha
        sign = -1.0
        goal = -target
    lo, hi = 1.0 + 1e-15, 2.0
    while g(hi) <= goal:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if g(mid) > goal:
            hi = mid
        else:
            lo = mid
    return complex(sign * 0.5 * (lo + hi), 0.0)


def _symbol_deriv(z: complex, alpha: float) -> complex:
    w = 1.0 - 1.0 / z
    return np.exp((alpha - 1.0) * np.log1p(-1.0 / z)) * (w + alpha / z)


def _newton_search(lam: complex, alpha: float, tol: float) -> complex | None:
    # damped Newton on f(z) = lam from a deterministic grid of starts
    radii = (1.05, 1.2, 1.5, 2.0, 4.0, 8.0, 16.0, max(4.0, 4.0 * abs(lam)))
    angles = 2.0 * np.pi * np.arange(16) / 16.0
    for r in radii:
        for t in angles:
            z = r * np.exp(1j * t)
            for _ in range(100):
                err = _symbol_raw(z, alpha) - lam
                if abs(err) <= tol:
                    return complex(z)
                dz = err / _symbol_deriv(z, alpha)
                step = 1.0
                znew = z - dz
                halvings = 0
                while abs(znew) <= 1.0 + 1e-12 and halvings < 60:
                    step *= 0.5
                    znew = z - step * dz
                    halvings += 1
                if abs(znew) <= 1.0 + 1e-12:
                    break
                z = znew
            if abs(_symbol_raw(z, alpha) - lam) <= tol and abs(z) > 1.0:
                return complex(z)
    return None


def matignon_check(lam, alpha: float, tol: float | None = None) -> StabilityVerdict:
    """Classify a scalar coefficient lambda for asymptotic stability.

    Real lambda is decided by the closed-form interval [-2^alpha, 0]
    (endpoints compared exactly).  Non-real lambda is searched for a
    preimage under f; finding one proves the necessary condition fails,
    otherwise the verdict stays Indeterminate because the sufficient
    condition is not automated off the real axis.
    """
    alpha = _check_unit_interval(alpha)
    lam = complex(lam)
    tol = 1e-11 * (1.0 + abs(lam)) if tol is None else float(tol)
    bound = matignon_boundary(alpha)
    if lam.imag == 0.0:
        x = lam.real
        if x == 0.0 or x == bound:
            return StabilityVerdict(StabilityClass.BOUNDARY, eigenvalue=lam)
        if bound < x < 0.0:
            return StabilityVerdict(StabilityClass.SUFFICIENT_STABLE, eigenvalue=lam)
        return StabilityVerdict(
            StabilityClass.NECESSARY_FAIL,
            eigenvalue=lam,
            witness=_solve_real(x, alpha),
        )
    z = _newton_search(lam, alpha, tol)
    if z is not None:
        return StabilityVerdict(StabilityClass.NECESSARY_FAIL, eigenvalue=lam, witness=z)
    return StabilityVerdict(StabilityClass.INDETERMINATE, eigenvalue=lam)


def classify_spectrum(a, alpha: float, tol: float | None = None) -> list[StabilityVerdict]:
    """Per-eigenvalue Matignon classification of a matrix coefficient."""
    return [matignon_check(lam, alpha, tol=tol) for lam in spectrum(a)]
