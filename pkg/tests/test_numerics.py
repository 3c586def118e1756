"""Tests for the finite-difference stencils, the fixed-step second-order ODE
solver and the cumulative quadrature with Hermite interpolation."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import quasimin as qm
from quasimin.numerics import Grid1D, cumulative_integral, fd_step, partial_derivs

SMALL = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


# ---------------------------------------------------------------------------
# One-dimensional stencils
# ---------------------------------------------------------------------------


class TestDerivatives:
    def test_first_derivative_of_sin(self):
        for t in (-1.2, 0.0, 0.7, 2.5):
            assert qm.derivative1(np.sin, t) == pytest.approx(math.cos(t), abs=1e-9)

    def test_second_derivative_of_exp(self):
        for t in (-0.5, 0.3, 1.1):
            assert qm.derivative2(np.exp, t) == pytest.approx(math.exp(t), abs=1e-8)

    def test_exact_on_low_degree_polynomials(self):
        """A five-point stencil differentiates quartics without truncation."""
        poly = lambda t: 2.0 + t - 0.5 * t**2 + 0.25 * t**3
        dpoly = lambda t: 1.0 - t + 0.75 * t**2
        d2poly = lambda t: -1.0 + 1.5 * t
        for t in (-0.8, 0.1, 1.3):
            assert qm.derivative1(poly, t) == pytest.approx(dpoly(t), abs=1e-10)
            assert qm.derivative2(poly, t) == pytest.approx(d2poly(t), abs=1e-9)

    def test_fourth_order_convergence(self):
        """Halving the step shrinks the truncation error about sixteenfold."""
        f, df, t = np.cos, lambda t: -math.sin(t), 0.9
        coarse = abs(qm.derivative1(f, t, step=0.1) - df(t))
        fine = abs(qm.derivative1(f, t, step=0.05) - df(t))
        assert coarse / fine == pytest.approx(16.0, rel=0.15)

    def test_vectorized_evaluation(self):
        ts = np.linspace(-1.0, 1.0, 7)
        out = qm.derivative1(np.sin, ts)
        assert out.shape == ts.shape
        assert np.max(np.abs(out - np.cos(ts))) < 1e-9

    @settings(max_examples=25)
    @given(a=SMALL, b=SMALL, t=SMALL)
    def test_linearity_of_the_stencil(self, a, b, t):
        f = lambda x: a * np.sin(x) + b * np.cos(x)
        combined = qm.derivative1(f, t)
        parts = a * qm.derivative1(np.sin, t) + b * qm.derivative1(np.cos, t)
        assert combined == pytest.approx(parts, abs=1e-10)

    def test_fd_step_grows_with_magnitude(self):
        assert fd_step(100.0) > fd_step(1.0)
        assert fd_step(0.0) > 0.0


class TestPartialDerivs:
    def test_jet_is_exact_on_cubic_charts(self):
        chart = lambda s, t: np.stack(
            np.broadcast_arrays(s**3, s * t, t**2, s + t), axis=-1
        ).astype(float)
        jet = partial_derivs(chart, (0.7, -0.4), order=2)
        s, t = 0.7, -0.4
        assert np.allclose(jet.value, [s**3, s * t, t**2, s + t], atol=1e-12)
        assert np.allclose(jet.d_s, [3 * s**2, t, 0, 1], atol=1e-9)
        assert np.allclose(jet.d_t, [0, s, 2 * t, 1], atol=1e-9)
        assert np.allclose(jet.d_ss, [6 * s, 0, 0, 0], atol=1e-7)
        assert np.allclose(jet.d_st, [0, 1, 0, 0], atol=1e-7)
        assert np.allclose(jet.d_tt, [0, 0, 2, 0], atol=1e-7)

    def test_mixed_partials_commute(self):
        chart = lambda s, t: np.stack(
            np.broadcast_arrays(np.sin(s) * np.cos(t), np.exp(0.3 * s * t)), axis=-1
        )
        jet_a = partial_derivs(chart, (0.4, 0.8), order=2)
        swapped = lambda s, t: chart(t, s)
        jet_b = partial_derivs(swapped, (0.8, 0.4), order=2)
        assert np.allclose(jet_a.d_st, jet_b.d_st, atol=1e-7)


# ---------------------------------------------------------------------------
# ODE solver
# ---------------------------------------------------------------------------


class TestSolveLode2:
    def test_exponential_bound(self):
        """b'' = b with b(0) = b'(0) = 1 stays within 1e-8 of e^t on [0, 1]."""
        sol = qm.solve_lode2(1, lambda t: 0.0 * np.asarray(t), 0.0, 1.0, 1.0, Grid1D(0.0, 1.0, 1e-3))
        ts = np.linspace(0.0, 1.0, 101)
        assert max(abs(sol.b(t) - math.exp(t)) for t in ts) <= 1e-8

    def test_oscillator_with_negative_sign(self):
        """b'' = -b with cosine data reproduces cos t."""
        sol = qm.solve_lode2(-1, lambda t: 0.0 * np.asarray(t), 0.0, 1.0, 0.0, Grid1D(-2.0, 2.0, 1e-3))
        for t in (-1.7, -0.3, 0.0, 0.9, 1.8):
            assert sol.b(t) == pytest.approx(math.cos(t), abs=1e-10)
            assert sol.db(t) == pytest.approx(-math.sin(t), abs=1e-9)

    def test_forced_equation_against_closed_form(self):
        """b'' = b + cos 3t, b(0) = 1, b'(0) = 0 -> 1.1 cosh t - 0.1 cos 3t."""
        sol = qm.solve_lode2(1, lambda t: np.cos(3.0 * np.asarray(t)), 0.0, 1.0, 0.0, Grid1D(0.0, 2.0, 1e-3))
        for t in (0.25, 0.8, 1.5, 2.0):
            want = 1.1 * math.cosh(t) - 0.1 * math.cos(3.0 * t)
            assert sol.b(t) == pytest.approx(want, abs=1e-9)

    def test_integration_backwards_from_interior_origin(self):
        sol = qm.solve_lode2(1, lambda t: 0.0 * np.asarray(t), 0.5, math.exp(0.5), math.exp(0.5), Grid1D(-1.0, 1.0, 1e-3))
        for t in (-0.9, 0.0, 0.5, 0.95):
            assert sol.b(t) == pytest.approx(math.exp(t), abs=1e-9)

    def test_second_derivative_consistency(self):
        """The reported d2b satisfies the equation it was integrated from."""
        rhs = lambda t: np.sin(np.asarray(t))
        sol = qm.solve_lode2(1, rhs, 0.0, 0.3, -0.2, Grid1D(0.0, 1.5, 1e-3))
        for t in (0.2, 0.7, 1.4):
            assert sol.d2b(t) == pytest.approx(sol.b(t) + math.sin(t), abs=1e-10)

    def test_observed_convergence_order_at_least_three(self):
        report = qm.ode_convergence()
        assert report["ratio"] >= 8.0

    @settings(max_examples=10, deadline=None)
    @given(b0=SMALL, db0=SMALL)
    def test_superposition_in_initial_data(self, b0, db0):
        """The homogeneous solution map is linear in (b0, b'0): it equals
        b0 cosh t + db0 sinh t for the sigma = +1 equation."""
        sol = qm.solve_lode2(1, lambda t: 0.0 * np.asarray(t), 0.0, b0, db0, Grid1D(0.0, 1.0, 1e-3))
        t = 0.8
        want = b0 * math.cosh(t) + db0 * math.sinh(t)
        assert sol.b(t) == pytest.approx(want, abs=1e-9)


# ---------------------------------------------------------------------------
# Cumulative quadrature and Hermite evaluation
# ---------------------------------------------------------------------------


class TestCumulativeIntegral:
    def test_sine_bound(self):
        """The running integral of cos t matches sin t to 1e-10."""
        F = cumulative_integral(np.cos, 0.0, Grid1D(0.0, 3.2, 1e-3))
        ts = np.linspace(0.0, 3.2, 101)
        assert max(abs(F(t) - math.sin(t)) for t in ts) <= 1e-10

    def test_lower_limit_anchors_the_constant(self):
        F = cumulative_integral(np.cos, 1.0, Grid1D(0.0, 3.0, 1e-3))
        assert F(1.0) == pytest.approx(0.0, abs=1e-14)
        assert F(2.0) == pytest.approx(math.sin(2.0) - math.sin(1.0), abs=1e-10)

    def test_evaluation_between_grid_nodes(self):
        F = cumulative_integral(np.exp, 0.0, Grid1D(0.0, 1.0, 1e-3))
        t = 0.5 + 0.25e-3  # deliberately off-node
        assert F(t) == pytest.approx(math.exp(t) - 1.0, abs=1e-10)

    def test_vectorized_evaluation(self):
        F = cumulative_integral(np.cos, 0.0, Grid1D(0.0, 2.0, 1e-3))
        ts = np.linspace(0.1, 1.9, 23)
        assert np.max(np.abs(F(ts) - np.sin(ts))) <= 1e-10

    @settings(max_examples=20, deadline=None)
    @given(
        a=SMALL,
        k=st.integers(min_value=1, max_value=4),
        t=st.floats(min_value=0.0, max_value=2.0),
    )
    def test_trig_antiderivatives(self, a, k, t):
        F = cumulative_integral(lambda x: a * np.cos(k * np.asarray(x)), 0.0, Grid1D(0.0, 2.0, 1e-3))
        assert F(t) == pytest.approx(a * math.sin(k * t) / k, abs=1e-9)
