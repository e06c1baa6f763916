"""Finitely supported vector-valued sequences on Z with an exponential weight.

A :class:`WeightedSequence` stores a dense window of complex d-vectors
starting at an integer index; indices outside the window read as the zero
vector.  The weight ``rho > 0`` tags the space the sequence is measured in:
the p-norm weighs index k by ``rho**(-k)``, so larger rho admits
faster-growing tails.  Windows are exact data, the weight is metadata;
arithmetic between sequences therefore insists on matching weights.

Membership facts used by callers: a single impulse lies in every weighted
space, a truncated step ``chi_geq`` only approximates a sequence that needs
``rho > 1`` to be summable.
"""

from __future__ import annotations

import re

import numpy as np

from .binomial import ConvolutionKernel

__all__ = [
    "WeightedSequence",
    "chi_geq",
    "convolve",
    "delta",
    "shift",
    "weighted_norm",
]

_HEADER_RE = re.compile(r"#\s*rho=(?P<rho>\S+)\s+dim=(?P<dim>\d+)")


def _as_vector(v) -> np.ndarray:
    vec = np.asarray(v, dtype=complex)
    if vec.ndim == 0:
        vec = vec.reshape(1)
    if vec.ndim != 1:
        raise ValueError("expected a scalar or a 1-d vector")
    return vec


def _as_window(values) -> np.ndarray:
    vals = np.array(values, dtype=complex)
    if vals.ndim == 1:
        vals = vals.reshape(-1, 1)
    if vals.ndim != 2 or vals.shape[1] < 1:
        raise ValueError("window values must form an (n, d) array")
    return vals


class WeightedSequence:
    """Dense window of a finitely supported sequence k -> x_k in C^d.

    Parameters
    ----------
    start : int
        Index of the first stored entry.
    values : array_like
        Window contents, shape (n, d); a 1-d array is treated as n scalars.
    rho : float
        Positive weight of the ambient sequence space.
    """

    __slots__ = ("_start", "_values", "_rho")

    def __init__(self, start: int, values, rho: float):
        rho = float(rho)
        if not rho > 0:
            raise ValueError(f"weight rho must be positive, got {rho}")
        vals = _as_window(values)
        vals.setflags(write=False)
        self._start = int(start)
        self._values = vals
        self._rho = rho

    @property
    def start(self) -> int:
        return self._start

    @property
    def stop(self) -> int:
        """One past the last stored index."""
        return self._start + len(self._values)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def rho(self) -> float:
        return self._rho

    @property
    def dim(self) -> int:
        return self._values.shape[1]

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self._start, self.stop)

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, k: int) -> np.ndarray:
        """Entry at absolute index k, the zero vector outside the window."""
        k = int(k)
        if self._start <= k < self.stop:
            return self._values[k - self._start]
        return np.zeros(self.dim, dtype=complex)

    def window_values(self, a: int, b: int) -> np.ndarray:
        """Entries on the inclusive index range [a, b], zero-padded."""
        if b < a:
            raise ValueError("empty index range")
        out = np.zeros((b - a + 1, self.dim), dtype=complex)
        lo = max(a, self._start)
        hi = min(b + 1, self.stop)
        if lo < hi:
            out[lo - a : hi - a] = self._values[lo - self._start : hi - self._start]
        return out

    def support(self) -> np.ndarray:
        """Indices whose entry is not the zero vector."""
        mask = np.any(self._values != 0, axis=1)
        return self.indices[mask]

    def _binary(self, other, sign):
        if not isinstance(other, WeightedSequence):
            return NotImplemented
        if other.rho != self._rho:
            raise ValueError(
                f"cannot mix weights rho={self._rho} and rho={other.rho}"
            )
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        a = min(self._start, other.start)
        b = max(self.stop, other.stop) - 1
        vals = self.window_values(a, b) + sign * other.window_values(a, b)
        return WeightedSequence(a, vals, self._rho)

    def __add__(self, other):
        return self._binary(other, 1.0)

    def __sub__(self, other):
        return self._binary(other, -1.0)

    def __mul__(self, scalar):
        return WeightedSequence(self._start, self._values * complex(scalar), self._rho)

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1.0)

    def __repr__(self) -> str:
        return (
            f"WeightedSequence(start={self._start}, len={len(self)}, "
            f"dim={self.dim}, rho={self._rho})"
        )

    def to_csv(self, path) -> None:
        """Write ``index, re_0, im_0, ..., re_{d-1}, im_{d-1}`` rows.

        The leading comment line carries the weight and the dimension.
        """
        def fmt(x: float) -> str:
            return format(float(x), ".17g")

        lines = [f"# rho={fmt(self._rho)} dim={self.dim}"]
        cols = ["index"]
        for j in range(self.dim):
            cols += [f"re_{j}", f"im_{j}"]
        lines.append(",".join(cols))
        for k, row in zip(self.indices, self._values):
            cells = [str(int(k))]
            for v in row:
                cells += [fmt(v.real), fmt(v.imag)]
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
        if hasattr(path, "write"):
            path.write(text)
        else:
            with open(path, "w", newline="") as fh:
                fh.write(text)

    @classmethod
    def from_csv(cls, path) -> "WeightedSequence":
        if hasattr(path, "read"):
            text = path.read()
        else:
            with open(path) as fh:
                text = fh.read()
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if len(lines) < 2:
            raise ValueError("sequence file needs a header and a column line")
        m = _HEADER_RE.match(lines[0])
        if m is None:
            raise ValueError("missing '# rho=... dim=...' header line")
        rho = float(m.group("rho"))
        dim = int(m.group("dim"))
        rows = []
        for ln in lines[2:]:
            cells = ln.split(",")
            if len(cells) != 1 + 2 * dim:
                raise ValueError(f"expected {1 + 2 * dim} columns, got {len(cells)}")
            idx = int(cells[0])
            vec = [
                complex(float(cells[1 + 2 * j]), float(cells[2 + 2 * j]))
                for j in range(dim)
            ]
            rows.append((idx, vec))
        if not rows:
            raise ValueError("sequence file has no data rows")
        indices = [r[0] for r in rows]
        start = indices[0]
        if indices != list(range(start, start + len(rows))):
            raise ValueError("window indices must be contiguous and ascending")
        return cls(start, np.array([r[1] for r in rows], dtype=complex), rho)


def delta(n: int, v, rho: float) -> WeightedSequence:
    """Impulse: value v at index n, zero elsewhere."""
    return WeightedSequence(n, _as_vector(v)[None, :], rho)


def chi_geq(n: int, v, rho: float, horizon: int) -> WeightedSequence:
    """Truncated step: value v at indices n..n+horizon, zero before n.

    The cutoff at n + horizon is storage truncation, not true support; the
    untruncated step lies in the weighted spaces only for rho > 1.
    """
    horizon = int(horizon)
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    vec = _as_vector(v)
    return WeightedSequence(n, np.tile(vec, (horizon + 1, 1)), rho)


def weighted_norm(x: WeightedSequence, p) -> float:
    """Weighted p-norm, p in {1, 2, inf}.

    (sum_k ||x_k||^p rho^{-pk})^(1/p) for finite p, sup_k ||x_k|| rho^{-k}
    for p = inf; exact for the stored finite window.
    """
    mags = np.linalg.norm(x.values, axis=1)
    weights = x.rho ** (-x.indices.astype(float))
    terms = mags * weights
    if p == 1:
        return float(np.sum(terms))
    if p == 2:
        return float(np.sqrt(np.sum(terms**2)))
    if p in (np.inf, float("inf"), "inf"):
        return float(np.max(terms)) if len(terms) else 0.0
    raise ValueError(f"only p in {{1, 2, inf}} is supported, got {p!r}")


def shift(x: WeightedSequence, n: int) -> WeightedSequence:
    """Left shift (tau^n x)_k = x_{k+n}; the window start moves to start - n."""
    return WeightedSequence(x.start - int(n), x.values, x.rho)


def convolve(c: ConvolutionKernel, u: WeightedSequence) -> WeightedSequence:
    """Causal convolution (c * u)_n = sum_k c_k u_{n-k}.

    The output window starts at u.start with length len(u) + c.truncation.
    Because the kernel is truncated, entry n is exact only while
    n - u.start <= c.truncation; later entries miss tail terms.
    """
    out = np.empty((len(u) + c.truncation, u.dim), dtype=complex)
    for j in range(u.dim):
        out[:, j] = np.convolve(c.coeffs, u.values[:, j])
    return WeightedSequence(u.start, out, u.rho)
