"""Tests for the indefinite inner product, causal classification, kernel
extraction and the lightlike-partner construction."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import quasimin as qm
from quasimin.exceptions import DimensionMismatch, NullPlaneError

E42 = qm.IndefiniteSpace(4, 2)
E52 = qm.IndefiniteSpace(5, 2)
E31 = qm.IndefiniteSpace(3, 1)

COORD = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def vectors(dim: int):
    return st.lists(COORD, min_size=dim, max_size=dim).map(np.array)


# ---------------------------------------------------------------------------
# Inner product
# ---------------------------------------------------------------------------


class TestInnerProduct:
    def test_timelike_axes_come_first(self):
        """The first `index` coordinates carry the minus signs."""
        e = np.eye(4)
        assert E42.inner(e[0], e[0]) == -1.0
        assert E42.inner(e[1], e[1]) == -1.0
        assert E42.inner(e[2], e[2]) == 1.0
        assert E42.inner(e[3], e[3]) == 1.0

    def test_off_diagonal_pairs_vanish(self):
        e = np.eye(4)
        for i in range(4):
            for j in range(i + 1, 4):
                assert E42.inner(e[i], e[j]) == 0.0

    def test_known_lightlike_vector(self):
        v = np.array([1.0, 0.0, 0.0, 1.0])
        assert E42.inner(v, v) == 0.0

    def test_dimension_mismatch_is_rejected(self):
        with pytest.raises(DimensionMismatch):
            E42.inner(np.zeros(3), np.zeros(3))

    @given(u=vectors(4), v=vectors(4), w=vectors(4), a=COORD)
    def test_bilinearity_and_symmetry(self, u, v, w, a):
        left = E42.inner(u + a * w, v)
        right = E42.inner(u, v) + a * E42.inner(w, v)
        scale = max(1.0, abs(left), abs(right))
        assert abs(left - right) <= 1e-9 * scale
        assert E42.inner(u, v) == pytest.approx(E42.inner(v, u), abs=1e-12 * scale)

    @given(v=vectors(3))
    def test_norm2_matches_inner(self, v):
        assert E31.norm2(v) == pytest.approx(E31.inner(v, v))


# ---------------------------------------------------------------------------
# Causal character
# ---------------------------------------------------------------------------


class TestCausalCharacter:
    def test_spacelike(self):
        assert E42.causal_character([0, 0, 1, 0]) is qm.CausalCharacter.SPACELIKE

    def test_timelike(self):
        assert E42.causal_character([1, 0, 0, 0]) is qm.CausalCharacter.TIMELIKE

    def test_lightlike(self):
        assert E42.causal_character([1, 0, 0, 1]) is qm.CausalCharacter.LIGHTLIKE

    def test_zero(self):
        assert E42.causal_character(np.zeros(4)) is qm.CausalCharacter.ZERO

    def test_tolerance_window_reads_lightlike(self):
        """A vector whose self-pairing is tiny relative to its size is null."""
        v = np.array([1.0, 0.0, 0.0, 1.0 + 1e-12])
        assert E42.causal_character(v) is qm.CausalCharacter.LIGHTLIKE

    @given(
        v=st.lists(
            st.one_of(
                st.just(0.0),
                st.floats(min_value=1e-3, max_value=1e3),
                st.floats(min_value=-1e3, max_value=-1e-3),
            ),
            min_size=4,
            max_size=4,
        ).map(np.array)
    )
    def test_trichotomy_matches_norm_sign(self, v):
        """Components are either exactly zero or clearly above the absolute
        zero floor of the classifier, so the trichotomy is unambiguous."""
        q = E42.norm2(v)
        scale = float(np.dot(v, v))
        ch = E42.causal_character(v)
        if scale == 0.0:
            assert ch is qm.CausalCharacter.ZERO
        elif abs(q) > 1e-6 * scale:
            want = qm.CausalCharacter.SPACELIKE if q > 0 else qm.CausalCharacter.TIMELIKE
            assert ch is want
        else:
            assert ch in (
                qm.CausalCharacter.LIGHTLIKE,
                qm.CausalCharacter.SPACELIKE,
                qm.CausalCharacter.TIMELIKE,
            )


# ---------------------------------------------------------------------------
# Kernel
# ---------------------------------------------------------------------------


class TestKernel:
    def test_rank_one_rows_leave_codimension_one(self):
        rows = [np.array([1.0, 2.0, 2.0]), np.array([2.0, 4.0, 4.0])]
        basis = qm.kernel(rows)
        assert basis.shape == (2, 3)
        for b in basis:
            assert abs(np.dot(rows[0], b)) < 1e-12

    def test_empty_rows_give_identity(self):
        basis = qm.kernel([], dim=2)
        assert np.allclose(basis, np.eye(2))

    def test_full_rank_rows_give_empty_kernel(self):
        basis = qm.kernel([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
        assert basis.shape == (0, 2)

    def test_scale_floor_treats_noise_rows_as_zero(self):
        """Rows at the noise floor of a much larger problem should not rank."""
        noise = [np.array([1e-12, -3e-13]), np.array([2e-13, 5e-13])]
        anchored = qm.kernel(noise, dim=2, tol=1e-8, scale=1.0)
        assert anchored.shape == (2, 2)
        unanchored = qm.kernel(noise, dim=2, tol=1e-8)
        assert unanchored.shape[0] < 2

    def test_sign_convention_is_deterministic(self):
        basis = qm.kernel([np.array([0.0, 0.0, 1.0])])
        assert basis.shape == (2, 3)
        for b in basis:
            lead = b[np.argmax(np.abs(b) > 1e-14)]
            assert lead >= 0

    def test_dim_mismatch_raises(self):
        with pytest.raises(DimensionMismatch):
            qm.kernel([np.zeros(3)], dim=4)

    @given(
        direction=st.lists(
            st.floats(min_value=-5, max_value=5, allow_nan=False), min_size=3, max_size=3
        ).filter(lambda d: sum(x * x for x in d) > 0.01)
    )
    def test_kernel_annihilates_rows(self, direction):
        row = np.array(direction)
        basis = qm.kernel([row, 2.5 * row, -row])
        assert basis.shape[0] == 2
        for b in basis:
            assert abs(np.dot(row, b)) <= 1e-9 * np.linalg.norm(row)


# ---------------------------------------------------------------------------
# Lightlike partner
# ---------------------------------------------------------------------------


class TestLightlikePartner:
    def test_flat_model_plane(self):
        n1 = np.array([1.0, 0.0, 0.0, 1.0])
        basis = np.stack([n1, np.array([0.0, 0.0, 0.0, 1.0])])
        p = qm.lightlike_partner(n1, basis, E42)
        assert abs(E42.inner(p, p)) < 1e-10
        assert E42.inner(n1, p) == pytest.approx(-1.0, abs=1e-10)
        # p must lie in the plane it was asked for
        residual = p - np.linalg.lstsq(basis.T, p, rcond=None)[0] @ basis
        assert np.linalg.norm(residual) < 1e-9

    def test_partner_of_scaled_input_scales_inversely(self):
        n1 = np.array([1.0, 0.0, 0.0, 1.0])
        basis = np.stack([n1, np.array([0.0, 0.0, 0.0, 1.0])])
        p1 = qm.lightlike_partner(n1, basis, E42)
        p2 = qm.lightlike_partner(3.0 * n1, np.stack([3.0 * n1, basis[1]]), E42)
        assert np.allclose(p2, p1 / 3.0, atol=1e-10)

    def test_rejects_non_null_seed(self):
        with pytest.raises(NullPlaneError):
            qm.lightlike_partner(
                np.array([0.0, 0.0, 1.0, 0.0]),
                np.stack([np.array([0.0, 0.0, 1.0, 0.0]), np.array([1.0, 0.0, 0.0, 0.0])]),
                E42,
            )

    def test_rejects_totally_degenerate_plane(self):
        """Two orthogonal null directions span a plane with no partner."""
        n1 = np.array([1.0, 0.0, 0.0, 1.0])
        v2 = np.array([0.0, 1.0, 1.0, 0.0])
        with pytest.raises(NullPlaneError):
            qm.lightlike_partner(n1, np.stack([n1, v2]), E42)

    @settings(max_examples=30)
    @given(
        a=st.floats(min_value=0.2, max_value=3.0),
        b=st.one_of(
            st.floats(min_value=0.1, max_value=2.0),
            st.floats(min_value=-2.0, max_value=-0.1),
        ),
    )
    def test_partner_relations_hold_on_random_planes(self, a, b):
        """Planes spanned by a null seed and a vector pairing against it."""
        n1 = np.array([a, 0.0, 0.0, a])
        v2 = np.array([b, 0.0, 1.0, 0.0])
        p = qm.lightlike_partner(n1, np.stack([n1, v2]), E42)
        scale = float(np.dot(p, p))
        assert abs(E42.inner(p, p)) <= 1e-9 * max(1.0, scale)
        assert E42.inner(n1, p) == pytest.approx(-1.0, abs=1e-9)
