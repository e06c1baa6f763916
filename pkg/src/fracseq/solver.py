"""Explicit causal solvers for fractional initial value problems.

The three problem kinds share one forward recursion built from the positive
weights w_m = (-1)^m C(-alpha, m):

* Riemann-Liouville:  u_0 = x,  u_{n+1} = w_{n+1} x + sum_{k=0}^n w_{n-k} F(u)_k
* Caputo:             u_0 = x,  u_{n+1} = x         + sum_{k=0}^n w_{n-k} F(u)_k
* Grunwald-Letnikov:  the Riemann-Liouville recursion with F replaced by
  h^alpha F; the n-th entry belongs to time t = n h.

F is either linear (a d x d matrix or a scalar) or a pointwise map applied
entrywise; either way F(u)_k depends on u_k alone, so the recursion is
explicit.  The full convolution memory is kept: a solve costs O(steps^2 d).
F is evaluated on the natural-number window only (F(u)_n = 0 for n < 0);
for pointwise maps with f(0) != 0 this is the defining convention here.

``residual`` re-evaluates the solved equation through the independent
convolution path and returns the defect on indices -1..N-1, which is zero
exactly when the input solves the problem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .binomial import make_kernel
from .sequences import WeightedSequence

__all__ = ["IvpSpec", "residual", "solve_caputo", "solve_gl", "solve_rl"]

KINDS = ("rl", "caputo", "gl")


def _apply_rhs(rhs, vec: np.ndarray) -> np.ndarray:
    if rhs is None:
        return np.zeros_like(vec)
    if callable(rhs):
        out = np.asarray(rhs(vec), dtype=complex).reshape(-1)
        if out.shape != vec.shape:
            raise ValueError("pointwise right-hand side changed the dimension")
        return out
    mat = np.asarray(rhs, dtype=complex)
    if mat.ndim == 0:
        return mat * vec
    return mat @ vec


def _check_rhs(rhs, dim: int):
    if rhs is None or callable(rhs):
        return rhs
    mat = np.asarray(rhs, dtype=complex)
    if mat.ndim == 0:
        return mat
    if mat.shape != (dim, dim):
        raise ValueError(f"matrix right-hand side must be {dim} x {dim}, got {mat.shape}")
    return mat


@dataclass(frozen=True)
class IvpSpec:
    """Problem description for the explicit solvers.

    ``rhs`` is None (F = 0), a complex scalar or (d, d) matrix, or a
    callable mapping a d-vector to a d-vector.  Only matrix/scalar
    right-hand sides survive the JSON round trip.
    """

    kind: str
    alpha: float
    x0: np.ndarray
    rhs: np.ndarray | Callable | None = None
    steps: int = 1
    h: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 0.0 < float(self.alpha) < 1.0:
            raise ValueError(f"order must lie in (0, 1), got {self.alpha}")
        if int(self.steps) < 1:
            raise ValueError("steps must be at least 1")
        if not float(self.h) > 0:
            raise ValueError(f"step size must be positive, got {self.h}")
        x0 = np.atleast_1d(np.asarray(self.x0, dtype=complex))
        if x0.ndim != 1:
            raise ValueError("initial value must be a vector")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "rhs", _check_rhs(self.rhs, len(x0)))
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "h", float(self.h))

    @property
    def dim(self) -> int:
        return len(self.x0)

    @classmethod
    def from_json(cls, text: str | dict) -> "IvpSpec":
        """Parse {"kind", "alpha", "x0": [[re, im], ...], "A": ... | null,
        "steps", "h"}; "A" is a nested list of [re, im] pairs."""
        data = json.loads(text) if isinstance(text, str) else dict(text)
        x0 = np.array([complex(re, im) for re, im in data["x0"]])
        a = data.get("A")
        rhs = None
        if a is not None:
            rhs = np.array(
                [[complex(re, im) for re, im in row] for row in a], dtype=complex
            )
        return cls(
            kind=data["kind"],
            alpha=float(data["alpha"]),
            x0=x0,
            rhs=rhs,
            steps=int(data["steps"]),
            h=float(data.get("h", 1.0)),
        )

    def to_json(self) -> str:
        if callable(self.rhs):
            raise ValueError("pointwise right-hand sides have no JSON form")
        a = None
        if self.rhs is not None:
            mat = np.atleast_2d(np.asarray(self.rhs, dtype=complex))
            a = [[[v.real, v.imag] for v in row] for row in mat]
        return json.dumps(
            {
                "kind": self.kind,
                "alpha": self.alpha,
                "x0": [[v.real, v.imag] for v in self.x0],
                "A": a,
                "steps": self.steps,
                "h": self.h,
            }
        )


def _solve(spec: IvpSpec, kind: str) -> WeightedSequence:
    if spec.kind != kind:
        raise ValueError(f"spec.kind is {spec.kind!r}, expected {kind!r}")
    n_steps, d = spec.steps, spec.dim
    w = make_kernel(-spec.alpha, n_steps).coeffs
    scale = spec.h**spec.alpha if kind == "gl" else 1.0
    caputo = kind == "caputo"
    u = np.empty((n_steps + 1, d), dtype=complex)
    fvals = np.empty((n_steps, d), dtype=complex)
    u[0] = spec.x0
    for n in range(n_steps):
        fvals[n] = scale * _apply_rhs(spec.rhs, u[n])
        acc = w[n::-1] @ fvals[: n + 1]
        u[n + 1] = (u[0] if caputo else w[n + 1] * u[0]) + acc
    return WeightedSequence(0, u, rho=1.0)


def solve_rl(spec: IvpSpec) -> WeightedSequence:
    """Solve the Riemann-Liouville problem; returns u_0..u_steps on N."""
    return _solve(spec, "rl")


def solve_caputo(spec: IvpSpec) -> WeightedSequence:
    """Solve the Caputo problem; returns u_0..u_steps on N."""
    return _solve(spec, "caputo")


def solve_gl(spec: IvpSpec) -> WeightedSequence:
    """Solve the Grunwald-Letnikov problem; entry n belongs to time n h.

    With h = 1 the recursion coincides with the Riemann-Liouville one
    operation for operation, so the outputs are bitwise equal.
    """
    return _solve(spec, "gl")


def residual(kind: str, alpha: float, u: WeightedSequence, rhs, x0, h: float = 1.0) -> WeightedSequence:
    """Defect of the sequence equation on indices -1..N-1.

    Computes tau (1 - tau^{-1})^alpha u - F(u) - forcing for u on 0..N, where
    the forcing is the impulse at -1 carrying x (Riemann-Liouville and
    Grunwald-Letnikov, the latter also scaling F by h^alpha) or the
    alpha-power of the step from -1 carrying x (Caputo), evaluated in closed
    form through the kernel partial sums.  A solution makes every entry zero.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {alpha}")
    if u.start != 0:
        raise ValueError("expected a sequence on the natural-number window (start = 0)")
    if len(u) < 2:
        raise ValueError("window too short, need at least two samples")
    x0 = np.atleast_1d(np.asarray(x0, dtype=complex))
    if len(x0) != u.dim:
        raise ValueError("initial value dimension does not match the sequence")
    rhs = _check_rhs(rhs, u.dim)
    n_last = len(u) - 1  # u given on 0..N with N = n_last
    coeffs = make_kernel(alpha, len(u)).coeffs
    # (tau (1 - tau^{-1})^alpha u)_n = (c * u)_{n+1}, exact for n+1 <= trunc
    shifted = np.empty((n_last + 1, u.dim), dtype=complex)
    for j in range(u.dim):
        shifted[:, j] = np.convolve(coeffs, u.values[:, j])[: n_last + 1]
    scale = h**alpha if kind == "gl" else 1.0
    fvals = np.zeros((n_last + 1, u.dim), dtype=complex)
    for n in range(n_last):
        fvals[n + 1] = scale * _apply_rhs(rhs, u.values[n])
    res = shifted - fvals
    if kind == "caputo":
        # ((1 - tau^{-1})^alpha chi_{Z >= -1} x)_n = (sum_{k=0}^{n+1} c_k) x
        psums = np.cumsum(coeffs)[: n_last + 1]
        res -= psums[:, None] * x0[None, :]
    else:
        res[0] -= x0
    return WeightedSequence(-1, res, u.rho)
