"""Tests for the pointwise surface geometry: fundamental data, relative
nullity, the adapted pseudo-orthonormal frame and the structure coefficients.

The flat-ambient instance with m = 0, F = 1, b = -1 has the elementary closed
forms

    g = ds^2 - s^2 dt^2,   alpha(dt, dt) = s (1, 0, 0, 1),
    H = -(1 / 2s) (1, 0, 0, 1),

which anchor the exactness checks here.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import quasimin as qm
from quasimin.exceptions import NotQuasiMinimal, SingularPointError

NULL_DIR = np.array([1.0, 0.0, 0.0, 1.0])

COEF = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


# ---------------------------------------------------------------------------
# Fundamental data on the closed-form instance
# ---------------------------------------------------------------------------


class TestFundamentalData:
    def test_metric_is_diag_one_minus_s_squared(self, analytic_e42):
        for s, t in [(0.6, -0.8), (1.0, 0.0), (1.7, 0.9)]:
            fd = qm.fundamental_data(analytic_e42, (s, t))
            want = np.diag([1.0, -s * s])
            assert np.allclose(fd.metric, want, atol=1e-9 * max(1.0, s * s))
            assert np.allclose(fd.metric_inv @ fd.metric, np.eye(2), atol=1e-9)

    def test_alpha_components(self, analytic_e42):
        for s, t in [(0.7, 0.4), (1.5, -0.6)]:
            fd = qm.fundamental_data(analytic_e42, (s, t))
            assert np.allclose(fd.alpha_tt, s * NULL_DIR, atol=1e-8 * s)
            assert np.linalg.norm(fd.alpha_ss) < 1e-8
            assert np.linalg.norm(fd.alpha_st) < 1e-8

    def test_mean_curvature(self, analytic_e42):
        for s, t in [(0.55, 0.2), (1.9, -0.9)]:
            fd = qm.fundamental_data(analytic_e42, (s, t))
            assert np.allclose(fd.H, -NULL_DIR / (2.0 * s), atol=1e-9 / s)

    def test_alpha_bilinear_evaluation_matches_components(self, analytic_e42):
        fd = qm.fundamental_data(analytic_e42, (1.2, 0.3))
        x, y = np.array([0.5, -1.0]), np.array([2.0, 0.25])
        direct = (
            x[0] * y[0] * fd.alpha_ss
            + (x[0] * y[1] + x[1] * y[0]) * fd.alpha_st
            + x[1] * y[1] * fd.alpha_tt
        )
        assert np.allclose(fd.alpha(x, y), direct)

    def test_sphere_immersion_carries_position(self, trig_linear):
        fd = qm.fundamental_data(trig_linear, (0.7, 1.0))
        assert fd.c == 1
        assert fd.position is not None
        assert trig_linear.form.form_residual(fd.position) < 1e-9

    def test_flat_immersion_has_no_position(self, analytic_e42):
        fd = qm.fundamental_data(analytic_e42, (1.0, 0.0))
        assert fd.c == 0 and fd.position is None

    def test_normal_projection_kills_the_tangent_plane(self, trig_linear):
        fd = qm.fundamental_data(trig_linear, (0.6, 0.8))
        for v in (fd.f_s, fd.f_t, fd.position):
            assert np.linalg.norm(fd.normal_project(v)) < 1e-8 * max(1.0, np.linalg.norm(v))

    @settings(max_examples=20, deadline=None)
    @given(x0=COEF, x1=COEF, y0=COEF, y1=COEF, w0=COEF, w1=COEF)
    def test_shape_operator_duality(self, analytic_e42, x0, x1, y0, y1, w0, w1):
        """g(A_xi X, Y) = <alpha(X, Y), xi> for normal xi, all tangents."""
        fd = qm.fundamental_data(analytic_e42, (1.3, 0.45))
        xi = w0 * fd.normal_basis[0] + w1 * fd.normal_basis[1]
        A = fd.shape_operator(xi)
        x, y = np.array([x0, x1]), np.array([y0, y1])
        left = float((A @ x) @ fd.metric @ y)
        right = float(fd.space.inner(fd.alpha(x, y), xi))
        assert left == pytest.approx(right, abs=1e-7 * max(1.0, abs(right)))

    def test_induced_metric_agrees_with_fundamental_data(self, analytic_e42):
        pts = [(0.8, -0.7), (1.1, 0.2), (1.9, 0.9)]
        S = np.array([p[0] for p in pts])
        T = np.array([p[1] for p in pts])
        g = qm.induced_metric(analytic_e42, S, T)
        assert g.shape == (3, 2, 2)
        for i, p in enumerate(pts):
            fd = qm.fundamental_data(analytic_e42, p)
            assert np.allclose(g[i], fd.metric, atol=1e-9)


# ---------------------------------------------------------------------------
# Relative null space
# ---------------------------------------------------------------------------


class TestRelativeNullSpace:
    def test_classified_surface_has_exactly_one_direction(self, analytic_e42):
        dim, basis = qm.relative_null_space(analytic_e42, (1.2, -0.4))
        assert dim == 1
        assert basis.shape == (1, 2)
        fd = qm.fundamental_data(analytic_e42, (1.2, -0.4))
        for other in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
            assert np.linalg.norm(fd.alpha(basis[0], other)) < 1e-7

    def test_null_direction_is_the_s_line(self, analytic_e42):
        """For this chart the nullity foliation runs along d/ds."""
        _, basis = qm.relative_null_space(analytic_e42, (1.0, 0.5))
        assert abs(abs(basis[0][0]) - 1.0) < 1e-7
        assert abs(basis[0][1]) < 1e-7

    def test_totally_geodesic_plane_has_full_nullity(self, control_plane):
        dim, _ = qm.relative_null_space(control_plane, (0.5, 0.5))
        assert dim == 2

    def test_generic_graph_has_no_nullity(self, control_graph):
        dim, _ = qm.relative_null_space(control_graph, (1.2, 0.9))
        assert dim == 0

    def test_curved_families_also_report_dimension_one(self, trig_linear):
        dim, _ = qm.relative_null_space(trig_linear, (0.7, 1.0))
        assert dim == 1


# ---------------------------------------------------------------------------
# Adapted frame
# ---------------------------------------------------------------------------


class TestAdaptedFrame:
    @pytest.mark.parametrize("point", [(0.7, -0.5), (1.2, 0.0), (1.8, 0.8)])
    def test_frame_relations_on_flat_instance(self, analytic_e42, point):
        fr = qm.adapted_frame(analytic_e42, point)
        sp = fr.data.space
        eps = fr.epsilon
        # tangent part: unit, orthogonal, e1 spanning the null direction
        assert sp.inner(fr.e1, fr.e1) == pytest.approx(eps, abs=1e-9)
        assert sp.inner(fr.e2, fr.e2) == pytest.approx(-eps, abs=1e-9)
        assert sp.inner(fr.e1, fr.e2) == pytest.approx(0.0, abs=1e-9)
        # normal part: two null directions pairing to -1
        assert abs(sp.inner(fr.e3, fr.e3)) < 1e-9
        assert abs(sp.inner(fr.e4, fr.e4)) < 1e-9
        assert sp.inner(fr.e3, fr.e4) == pytest.approx(-1.0, abs=1e-9)
        for tangent in (fr.e1, fr.e2):
            assert abs(sp.inner(fr.e3, tangent)) < 1e-8
            assert abs(sp.inner(fr.e4, tangent)) < 1e-8

    def test_e3_is_minus_two_eps_H(self, analytic_e42):
        fr = qm.adapted_frame(analytic_e42, (1.1, 0.3))
        want = -2.0 * fr.epsilon * fr.data.H
        assert np.allclose(fr.e3, want, atol=1e-9)

    def test_e3_equals_alpha_of_e2_e2(self, analytic_e42):
        fr = qm.adapted_frame(analytic_e42, (1.4, -0.2))
        assert np.allclose(fr.e3, fr.data.alpha(fr.e2_coef, fr.e2_coef), atol=1e-7)

    def test_shape_operator_of_e3_vanishes(self, analytic_e42):
        fr = qm.adapted_frame(analytic_e42, (0.9, 0.6))
        assert np.linalg.norm(fr.data.shape_operator(fr.e3)) < 1e-8

    def test_epsilon_signs_per_family(self, family_zoo):
        want = {
            "E42-i": 1,
            "E42-ii": -1,
            "S42-trig": 1,
            "S42-hyp": -1,
            "S42-curve-timelike": 1,
            "S42-curve-spacelike": -1,
        }
        for tag, imm in family_zoo.items():
            s0 = 0.5 * (imm.s_range[0] + imm.s_range[1])
            t0 = 0.5 * (imm.t_range[0] + imm.t_range[1])
            fr = qm.adapted_frame(imm, (s0, t0))
            assert fr.epsilon == want[tag], tag

    def test_plane_is_rejected_for_excess_nullity(self, control_plane):
        with pytest.raises(NotQuasiMinimal, match="dimension 2"):
            qm.adapted_frame(control_plane, (0.5, 0.5))

    def test_graph_is_rejected_for_missing_nullity(self, control_graph):
        with pytest.raises(NotQuasiMinimal, match="dimension 0"):
            qm.adapted_frame(control_graph, (1.25, 0.9))

    def test_cylinder_is_rejected_for_nonlightlike_H(self):
        """A Lorentzian cylinder has nullity one but spacelike H, so the
        rejection comes from the causal-character check."""
        chart = lambda s, t: np.stack(
            np.broadcast_arrays(1.0 * s, 0.0 * s, np.cos(t), np.sin(t)), axis=-1
        )
        cyl = qm.Immersion(chart, qm.SpaceForm(0), (0.0, 1.0), (0.0, 1.0))
        with pytest.raises(NotQuasiMinimal, match="lightlike"):
            qm.adapted_frame(cyl, (0.5, 0.5))


# ---------------------------------------------------------------------------
# Structure coefficients
# ---------------------------------------------------------------------------


class TestStructureCoefficients:
    def test_closed_forms_on_flat_instance(self, analytic_e42):
        """phi = s, omega = -1/s, gamma = 0 when m = 0 and F is constant."""
        for s, t in [(0.7, -0.3), (1.3, 0.2), (1.9, 0.9)]:
            omega, gamma, phi = qm.structure_coefficients(analytic_e42, (s, t))
            assert phi == pytest.approx(s, abs=2e-6)
            assert omega == pytest.approx(-1.0 / s, abs=2e-6)
            assert gamma == pytest.approx(0.0, abs=2e-6)

    def test_noncanonical_chart_is_rejected(self, control_graph):
        """The graph chart has g_st != 0, so no nullity-adapted coordinates."""
        with pytest.raises((SingularPointError, NotQuasiMinimal)):
            qm.structure_coefficients(control_graph, (1.25, 0.9))
