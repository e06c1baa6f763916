import json

import numpy as np
import pytest

from fracseq import (
    IvpSpec,
    WeightedSequence,
    make_kernel,
    partial_sum,
    residual,
    solve_caputo,
    solve_gl,
    solve_rl,
)


def implicit_form_oracle(kind, alpha, x0, mat, steps):
    """Independent recursion solving ((1 - tau^{-1})^alpha u)_{n+1} = F(u)_n
    (plus the initial-value correction term in the Caputo case) for u_{n+1}."""
    c = make_kernel(alpha, steps + 1).coeffs
    x0 = np.atleast_1d(np.asarray(x0, dtype=complex))
    u = np.empty((steps + 1, len(x0)), dtype=complex)
    u[0] = x0
    for n in range(steps):
        rhs = mat @ u[n] if mat is not None else np.zeros_like(x0)
        if kind == "caputo":
            rhs = rhs + partial_sum(alpha, n + 1) * u[0]
        hist = sum(c[k] * u[n + 1 - k] for k in range(1, n + 2))
        u[n + 1] = rhs - hist
    return u


def random_contraction(rng, d, bound=2.0):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    norm = np.linalg.norm(a, 2)
    return a * (bound * rng.uniform(0.2, 1.0) / norm)


def normalized_defect(r, u):
    """Max defect entry relative to the running trajectory scale.

    Row i of the defect (index n = i - 1) is a cancellation of terms built
    from u_0..u_i, so it is measured against max(1, sup_{k<=i} ||u_k||);
    in exact arithmetic every row is zero."""
    running = np.maximum.accumulate(np.linalg.norm(u.values, axis=1))
    scale = np.maximum(1.0, running[: len(r)])
    return float(np.max(np.linalg.norm(r.values, axis=1) / scale))


class TestSolveRl:
    def test_free_decay_is_inverse_kernel(self):
        spec = IvpSpec(kind="rl", alpha=0.5, x0=[1.0], steps=6)
        got = solve_rl(spec).values.ravel()
        assert np.allclose(got, make_kernel(-0.5, 6).coeffs, atol=0)

    def test_zero_initial_value_stays_zero(self):
        spec = IvpSpec(kind="rl", alpha=0.5, x0=[0.0], steps=10)
        assert np.all(solve_rl(spec).values == 0.0)

    def test_zero_matrix_equals_no_rhs(self):
        a = IvpSpec(kind="rl", alpha=0.3, x0=[1.0, 2.0], rhs=np.zeros((2, 2)), steps=8)
        b = IvpSpec(kind="rl", alpha=0.3, x0=[1.0, 2.0], rhs=None, steps=8)
        assert np.array_equal(solve_rl(a).values, solve_rl(b).values)

    def test_against_implicit_form_oracle(self):
        rng = np.random.default_rng(0)
        for alpha in (0.25, 0.5, 0.75):
            mat = random_contraction(rng, 3, bound=0.3)
            spec = IvpSpec(kind="rl", alpha=alpha, x0=rng.normal(size=3), rhs=mat, steps=60)
            expect = implicit_form_oracle("rl", alpha, spec.x0, mat, 60)
            got = solve_rl(spec).values
            assert np.max(np.abs(got - expect)) < 1e-10

    def test_kind_mismatch_rejected(self):
        spec = IvpSpec(kind="caputo", alpha=0.5, x0=[1.0], steps=4)
        with pytest.raises(ValueError):
            solve_rl(spec)

    def test_linearity_in_initial_value(self):
        rng = np.random.default_rng(1)
        mat = random_contraction(rng, 2)
        x1 = rng.normal(size=2)
        x2 = rng.normal(size=2)
        def run(x):
            return solve_rl(IvpSpec(kind="rl", alpha=0.4, x0=x, rhs=mat, steps=40)).values
        combined = run(x1 + 2.5 * x2)
        superposed = run(x1) + 2.5 * run(x2)
        assert np.max(np.abs(combined - superposed)) < 1e-12


class TestSolveCaputo:
    def test_no_rhs_stays_constant(self):
        spec = IvpSpec(kind="caputo", alpha=0.5, x0=[3.0, -1.0], steps=12)
        got = solve_caputo(spec).values
        assert np.all(got == np.array([3.0, -1.0], dtype=complex)[None, :])

    def test_scalar_decay_monotone_tail(self):
        spec = IvpSpec(kind="caputo", alpha=0.5, x0=[1.0], rhs=np.array([[-1.0]]), steps=400)
        mags = np.abs(solve_caputo(spec).values.ravel())
        assert np.all(np.diff(mags[20:]) < 0)
        assert mags[-1] < mags[20]

    def test_against_implicit_form_oracle(self):
        rng = np.random.default_rng(2)
        for alpha in (0.25, 0.5, 0.75):
            mat = random_contraction(rng, 2, bound=0.3)
            x0 = rng.normal(size=2)
            spec = IvpSpec(kind="caputo", alpha=alpha, x0=x0, rhs=mat, steps=60)
            expect = implicit_form_oracle("caputo", alpha, x0, mat, 60)
            got = solve_caputo(spec).values
            assert np.max(np.abs(got - expect)) < 1e-10


class TestSolveGl:
    def test_unit_step_bitwise_equals_rl(self):
        rng = np.random.default_rng(3)
        mat = random_contraction(rng, 2)
        x0 = rng.normal(size=2)
        gl = solve_gl(IvpSpec(kind="gl", alpha=0.5, x0=x0, rhs=mat, steps=50, h=1.0))
        rl = solve_rl(IvpSpec(kind="rl", alpha=0.5, x0=x0, rhs=mat, steps=50))
        assert np.array_equal(gl.values, rl.values)

    def test_step_four_matches_doubled_rhs(self):
        rng = np.random.default_rng(4)
        mat = random_contraction(rng, 2, bound=1.0)
        x0 = rng.normal(size=2)
        gl = solve_gl(IvpSpec(kind="gl", alpha=0.5, x0=x0, rhs=mat, steps=64, h=4.0))
        rl = solve_rl(IvpSpec(kind="rl", alpha=0.5, x0=x0, rhs=2.0 * mat, steps=64))
        assert np.max(np.abs(gl.values - rl.values)) < 1e-12

    def test_free_motion_independent_of_step(self):
        a = solve_gl(IvpSpec(kind="gl", alpha=0.5, x0=[1.0], steps=20, h=0.1))
        b = solve_gl(IvpSpec(kind="gl", alpha=0.5, x0=[1.0], steps=20, h=7.0))
        assert np.array_equal(a.values, b.values)


class TestResidual:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("kind", ["rl", "caputo"])
    def test_solution_passes(self, kind, alpha):
        rng = np.random.default_rng(5)
        mat = random_contraction(rng, 3)
        x0 = rng.normal(size=3)
        spec = IvpSpec(kind=kind, alpha=alpha, x0=x0, rhs=mat, steps=64)
        u = {"rl": solve_rl, "caputo": solve_caputo}[kind](spec)
        r = residual(kind, alpha, u, mat, x0)
        assert r.start == -1 and len(r) == 65
        assert normalized_defect(r, u) < 1e-10

    def test_gl_solution_passes(self):
        rng = np.random.default_rng(6)
        mat = random_contraction(rng, 2)
        x0 = rng.normal(size=2)
        spec = IvpSpec(kind="gl", alpha=0.5, x0=x0, rhs=mat, steps=48, h=3.0)
        u = solve_gl(spec)
        r = residual("gl", 0.5, u, mat, x0, h=3.0)
        assert normalized_defect(r, u) < 1e-10

    def test_perturbation_detected_causally(self):
        spec = IvpSpec(kind="rl", alpha=0.5, x0=[1.0], rhs=np.array([[-1.0]]), steps=16)
        u = solve_rl(spec)
        vals = u.values.copy()
        vals[3] += 1.0
        bad = WeightedSequence(0, vals, u.rho)
        r = residual("rl", 0.5, bad, np.array([[-1.0]]), [1.0])
        mags = np.abs(r.values.ravel())
        # defect first appears where the perturbed entry enters the equation
        assert np.all(mags[: 2 - r.start] < 1e-14)
        assert np.max(mags[2 - r.start :]) > 0.1

    def test_zero_everything(self):
        u = WeightedSequence(0, np.zeros(8), 1.0)
        r = residual("rl", 0.5, u, None, [0.0])
        assert np.all(r.values == 0.0)

    def test_window_too_short(self):
        with pytest.raises(ValueError):
            residual("rl", 0.5, WeightedSequence(0, np.ones(1), 1.0), None, [1.0])

    def test_pointwise_rhs(self):
        def cube(v):
            return -(v**3)

        spec = IvpSpec(kind="caputo", alpha=0.5, x0=[0.8], rhs=cube, steps=64)
        u = solve_caputo(spec)
        r = residual("caputo", 0.5, u, cube, [0.8])
        assert np.max(np.abs(r.values)) < 1e-10

    def test_shift_covariance_of_solution_operator(self):
        # tau^{-m} u solves the equation with forcing delta_{m-1} x
        rng = np.random.default_rng(7)
        mat = random_contraction(rng, 1, bound=0.3)
        x0 = rng.normal(size=1)
        spec = IvpSpec(kind="rl", alpha=0.5, x0=x0, rhs=mat, steps=32)
        u = solve_rl(spec)
        for m in (1, 3):
            w = WeightedSequence(m, u.values, u.rho)
            assert np.all(w.support() >= m)
            c = make_kernel(0.5, len(w)).coeffs
            conv = np.convolve(c, w.values[:, 0])
            # defect at n: (c*w)_{n+1} - A w_n - (delta_{m-1} x)_n for n = m-1..m+30
            ns = np.arange(m - 1, m + 31)
            lhs = conv[ns + 1 - m]
            rhs = np.array([(mat @ w[int(n)])[0] for n in ns], dtype=complex)
            rhs[0] += x0[0]
            assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestIvpSpec:
    def test_json_round_trip(self):
        mat = np.array([[1.0 + 2.0j, 0.0], [-0.5j, 0.25]])
        spec = IvpSpec(kind="caputo", alpha=0.5, x0=[1.0, -2.0j], rhs=mat, steps=7, h=2.0)
        again = IvpSpec.from_json(spec.to_json())
        assert again.kind == spec.kind
        assert again.alpha == spec.alpha
        assert np.array_equal(again.x0, spec.x0)
        assert np.array_equal(again.rhs, spec.rhs)
        assert again.steps == spec.steps and again.h == spec.h

    def test_null_matrix_means_no_rhs(self):
        text = json.dumps(
            {"kind": "rl", "alpha": 0.5, "x0": [[1.0, 0.0]], "A": None, "steps": 3, "h": 1.0}
        )
        assert IvpSpec.from_json(text).rhs is None

    def test_pointwise_rhs_has_no_json_form(self):
        spec = IvpSpec(kind="rl", alpha=0.5, x0=[1.0], rhs=lambda v: -v, steps=3)
        with pytest.raises(ValueError):
            spec.to_json()

    def test_validation(self):
        with pytest.raises(ValueError):
            IvpSpec(kind="euler", alpha=0.5, x0=[1.0], steps=3)
        with pytest.raises(ValueError):
            IvpSpec(kind="rl", alpha=1.5, x0=[1.0], steps=3)
        with pytest.raises(ValueError):
            IvpSpec(kind="rl", alpha=0.5, x0=[1.0], steps=0)
        with pytest.raises(ValueError):
            IvpSpec(kind="gl", alpha=0.5, x0=[1.0], steps=3, h=0.0)
        with pytest.raises(ValueError):
            IvpSpec(kind="rl", alpha=0.5, x0=[1.0, 2.0], rhs=np.ones((3, 3)), steps=3)


class TestCaputoForcingClosedForm:
    def test_partial_sums_match_truncated_step_convolution(self):
        # the closed-form forcing must agree with literally convolving the
        # kernel against the step from -1 on the exact region
        from fracseq import chi_geq, convolve

        alpha, n = 0.4, 24
        x = 1.7 - 0.3j
        coeffs = make_kernel(alpha, n + 2).coeffs
        closed = np.cumsum(coeffs)[: n + 1] * x
        step = chi_geq(-1, x, 2.0, 3 * n)
        conv = convolve(make_kernel(alpha, 3 * n), step)
        direct = conv.window_values(-1, n - 1)[:, 0]
        assert np.max(np.abs(closed - direct)) < 1e-14
