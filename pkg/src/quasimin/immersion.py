"""Differential calculus of parametrized surfaces in a space form.

A surface is a two-parameter chart (s, t) -> ambient coordinates.  All
geometric quantities come out of finite differences of the chart in the flat
ambient space: induced metric, second fundamental form (corrected to the
space form when it is curved), mean curvature vector, relative null space,
and the adapted lightlike frame that exists along quasi-minimal surfaces
with one-dimensional relative nullity.

Charts must be vectorized: they take broadcastable arrays (s, t) and return
an array whose last axis is the ambient dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import (
    DegenerateNullSpace,
    NotQuasiMinimal,
    SingularPointError,
)
from .linalg import IndefiniteSpace, kernel, lightlike_partner
from .numerics import _OFF1, _W1, ChartJet, fd_step, partial_derivs
from .space_forms import AmbientPoint, SpaceForm, intrinsic_second_fundamental_form

__all__ = [
    "SingularLocus",
    "Immersion",
    "FundamentalData",
    "AdaptedFrame",
    "fundamental_data",
    "relative_null_space",
    "adapted_frame",
    "structure_coefficients",
    "induced_metric",
]

#: |det g| below this times the Euclidean scale of the tangents counts as a
#: degenerate induced metric.
METRIC_DEGENERACY_TOL = 1e-10

#: Relative step for differentiating frame fields (mean curvature field).
FRAME_FIELD_STEP = 1e-4


@dataclass(frozen=True)
class SingularLocus:
    """A scalar condition whose zero set must be excluded from the chart."""

    label: str
    value: Callable  # (s, t) -> float, vanishing on the locus
    margin: float = 1e-2


@dataclass(frozen=True)
class Immersion:
    """A surface chart into a space form, with its domain bookkeeping."""

    chart: Callable
    form: SpaceForm
    s_range: tuple[float, float]
    t_range: tuple[float, float]
    singular_loci: tuple[SingularLocus, ...] = ()
    name: str = ""

    def singular_reason(self, s: float, t: float) -> str | None:
        """Label of a singular condition violated at (s, t), if any."""
        for locus in self.singular_loci:
            if abs(float(locus.value(s, t))) < locus.margin:
                return locus.label
        return None


@dataclass(frozen=True)
class FundamentalData:
    """First and second fundamental forms of an immersion at one point."""

    point: tuple[float, float]
    space: IndefiniteSpace
    c: int
    f_s: np.ndarray
    f_t: np.ndarray
    metric: np.ndarray        # 2x2, indices (s, t)
    metric_inv: np.ndarray
    alpha_ss: np.ndarray      # second fundamental form on coordinate fields,
    alpha_st: np.ndarray      # normal-valued, already intrinsic to the form
    alpha_tt: np.ndarray
    H: np.ndarray             # mean curvature vector, (1/2) trace_g alpha
    normal_basis: np.ndarray  # (2, dim) basis of the normal space in the form
    position: np.ndarray | None  # chart value; on the quadric when c != 0

    @property
    def alpha_matrix(self) -> np.ndarray:
        """alpha as a (2, 2, dim) array over coordinate indices."""
        return np.array(
            [[self.alpha_ss, self.alpha_st], [self.alpha_st, self.alpha_tt]]
        )

    def alpha(self, x, y) -> np.ndarray:
        """Bilinear evaluation of the second fundamental form on tangent
        coefficient vectors x, y (components along d/ds, d/dt)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (
            x[0] * y[0] * self.alpha_ss
            + (x[0] * y[1] + x[1] * y[0]) * self.alpha_st
            + x[1] * y[1] * self.alpha_tt
        )

    def shape_operator(self, xi) -> np.ndarray:
        """Matrix of A_xi in the coordinate basis: g(A_xi X, Y) = <alpha(X,Y), xi>."""
        xi = np.asarray(xi, dtype=float)
        m = np.array(
            [
                [self.space.inner(self.alpha_ss, xi), self.space.inner(self.alpha_st, xi)],
                [self.space.inner(self.alpha_st, xi), self.space.inner(self.alpha_tt, xi)],
            ]
        )
        return self.metric_inv @ m

    def push_forward(self, coef) -> np.ndarray:
        """Ambient vector of a tangent coefficient pair."""
        coef = np.asarray(coef, dtype=float)
        return coef[0] * self.f_s + coef[1] * self.f_t

    def normal_project(self, v) -> np.ndarray:
        """Component of ``v`` normal to the surface within the space form.

        Removes the span of the tangents and, for curved forms, of the
        position vector, by solving the corresponding Gram system.
        """
        v = np.asarray(v, dtype=float)
        span = [self.f_s, self.f_t]
        if self.position is not None:
            span.append(self.position)
        span = np.array(span)
        gram = np.array([[self.space.inner(a, b) for b in span] for a in span])
        rhs = np.array([self.space.inner(v, w) for w in span])
        coef = np.linalg.solve(gram, rhs)
        return v - coef @ span


def fundamental_data(imm: Immersion, p, step: float | None = None) -> FundamentalData:
    """Compute metric, second fundamental form, mean curvature and a normal
    basis at ``p = (s, t)`` by fourth-order finite differences of the chart.

    For curved forms the chart value is validated against the quadric and the
    raw (flat-ambient) second fundamental form is corrected to the one
    intrinsic to the space form.
    """
    jet = partial_derivs(imm.chart, p, order=2, step=step)
    space = imm.form.ambient
    f_s, f_t = jet.d_s, jet.d_t

    g_ss = space.inner(f_s, f_s)
    g_st = space.inner(f_s, f_t)
    g_tt = space.inner(f_t, f_t)
    metric = np.array([[g_ss, g_st], [g_st, g_tt]])
    det = g_ss * g_tt - g_st * g_st
    scale = float(np.dot(f_s, f_s)) * float(np.dot(f_t, f_t))
    if abs(det) <= METRIC_DEGENERACY_TOL * max(scale, 1e-300):
        raise SingularPointError(
            f"induced metric degenerates at (s, t) = ({p[0]:.6g}, {p[1]:.6g})"
        )
    metric_inv = np.array([[g_tt, -g_st], [-g_st, g_ss]]) / det

    position = None
    span = [f_s, f_t]
    fhat = None
    if imm.form.c != 0:
        fhat = AmbientPoint(jet.value, imm.form)
        position = fhat.coords
        span.append(position)
    span = np.array(span)
    gram = np.array([[space.inner(a, b) for b in span] for a in span])

    def intrinsic_alpha(f_ij: np.ndarray, g_ij: float) -> np.ndarray:
        rhs = np.array([space.inner(f_ij, w) for w in span])
        coef = np.linalg.solve(gram, rhs)
        alpha_hat = f_ij - coef[0] * f_s - coef[1] * f_t
        if fhat is None:
            return alpha_hat
        return intrinsic_second_fundamental_form(alpha_hat, g_ij, fhat)

    alpha_ss = intrinsic_alpha(jet.d_ss, g_ss)
    alpha_st = intrinsic_alpha(jet.d_st, g_st)
    alpha_tt = intrinsic_alpha(jet.d_tt, g_tt)

    H = 0.5 * (
        metric_inv[0, 0] * alpha_ss
        + 2.0 * metric_inv[0, 1] * alpha_st
        + metric_inv[1, 1] * alpha_tt
    )
    normal_basis = kernel([space.signs * w for w in span], dim=space.dim)

    return FundamentalData(
        point=(float(p[0]), float(p[1])),
        space=space,
        c=imm.form.c,
        f_s=f_s,
        f_t=f_t,
        metric=metric,
        metric_inv=metric_inv,
        alpha_ss=alpha_ss,
        alpha_st=alpha_st,
        alpha_tt=alpha_tt,
        H=H,
        normal_basis=normal_basis,
        position=position,
    )


def relative_null_space(
    imm: Immersion,
    p,
    rank_tol: float = 1e-8,
    data: FundamentalData | None = None,
    step: float | None = None,
) -> tuple[int, np.ndarray]:
    """Dimension and basis of {X tangent : alpha(X, Y) = 0 for all Y}.

    The null space is the kernel of the stacked linear map
    X -> (alpha(X, d/ds), alpha(X, d/dt)); basis rows are coefficient pairs
    in the coordinate basis, detected by SVD with a relative rank threshold.
    The metric norm anchors the threshold so that a second fundamental form
    that is pure numerical noise (a totally geodesic surface) reads as a full
    null space instead of a noise-ranked one.
    """
    fd = data if data is not None else fundamental_data(imm, p, step=step)
    rows = np.vstack(
        [
            np.stack([fd.alpha_ss, fd.alpha_st], axis=-1),
            np.stack([fd.alpha_st, fd.alpha_tt], axis=-1),
        ]
    )
    basis = kernel(rows, dim=2, tol=rank_tol, scale=float(np.linalg.norm(fd.metric)))
    return basis.shape[0], basis


@dataclass(frozen=True)
class AdaptedFrame:
    """Orthonormal tangent pair aligned with the relative null direction plus
    the lightlike normal pair it determines.

    Satisfies <e1,e1> = epsilon = -<e2,e2>, <e1,e2> = 0, <e3,e3> = <e4,e4> = 0,
    <e3,e4> = -1, with e3 = -2 * epsilon * H.
    """

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    e1_coef: np.ndarray
    e2_coef: np.ndarray
    epsilon: int
    data: FundamentalData


def adapted_frame(
    imm: Immersion,
    p,
    *,
    lightlike_tol: float = 1e-6,
    nonzero_tol: float = 1e-6,
    rank_tol: float = 1e-8,
    degenerate_tol: float = 1e-8,
    step: float | None = None,
    data: FundamentalData | None = None,
) -> AdaptedFrame:
    """Construct the adapted frame at ``p`` for a quasi-minimal surface with
    one-dimensional relative nullity.

    Raises NotQuasiMinimal when the nullity is not one or the mean curvature
    vector is zero / non-lightlike, and DegenerateNullSpace when the null
    direction itself is lightlike (no orthonormal alignment exists).
    """
    fd = data if data is not None else fundamental_data(imm, p, step=step)
    space = fd.space
    dim_null, basis = relative_null_space(imm, p, rank_tol=rank_tol, data=fd)
    if dim_null != 1:
        raise NotQuasiMinimal(
            f"relative null space has dimension {dim_null} at "
            f"(s, t) = ({p[0]:.6g}, {p[1]:.6g}); the frame needs dimension 1"
        )
    u_coef = basis[0]
    u = fd.push_forward(u_coef)
    q = space.inner(u, u)
    if abs(q) <= degenerate_tol * float(np.dot(u, u)):
        raise DegenerateNullSpace(
            "relative null direction is lightlike; no orthonormal frame aligns with it"
        )
    epsilon = 1 if q > 0 else -1
    root = math.sqrt(abs(q))
    e1_coef = u_coef / root
    e1 = u / root

    # Complete the tangent frame with the coordinate direction least aligned
    # with the null one, made orthogonal to e1.
    x_coef = np.array([0.0, 1.0]) if abs(u_coef[0]) >= abs(u_coef[1]) else np.array([1.0, 0.0])
    x = fd.push_forward(x_coef)
    w = x - epsilon * space.inner(x, e1) * e1
    w_coef = x_coef - epsilon * space.inner(x, e1) * e1_coef
    q2 = space.inner(w, w)
    if abs(q2) <= degenerate_tol * float(np.dot(w, w)) or (q2 > 0) == (q > 0):
        raise NotQuasiMinimal(
            "tangent metric does not have signature (1,1) across the null direction"
        )
    root2 = math.sqrt(abs(q2))
    e2 = w / root2
    e2_coef = w_coef / root2

    h_norm = float(np.linalg.norm(fd.H))
    if h_norm <= nonzero_tol:
        raise NotQuasiMinimal(
            f"mean curvature vector vanishes (Euclidean norm {h_norm:.3e})"
        )
    pairing_rel = abs(float(space.inner(fd.H, fd.H))) / (h_norm * h_norm)
    if pairing_rel > lightlike_tol:
        raise NotQuasiMinimal(
            f"mean curvature vector is not lightlike (relative pairing {pairing_rel:.3e})"
        )

    e3 = -2.0 * epsilon * fd.H
    e4 = lightlike_partner(e3, fd.normal_basis, space)
    return AdaptedFrame(
        e1=e1,
        e2=e2,
        e3=e3,
        e4=e4,
        e1_coef=e1_coef,
        e2_coef=e2_coef,
        epsilon=epsilon,
        data=fd,
    )


def structure_coefficients(
    imm: Immersion,
    p,
    frame: AdaptedFrame | None = None,
    *,
    step: float | None = None,
    frame_step: float = FRAME_FIELD_STEP,
    align_tol: float = 1e-6,
) -> tuple[float, float, float]:
    """Connection coefficients (omega, gamma) of the lightlike normal e3 along
    (e1, e2), plus the metric coefficient phi of the canonical chart.

    Requires the chart to be canonical for the relative nullity foliation:
    g(d/ds, d/ds) = +/-1 and g(d/ds, d/dt) = 0, so that the metric reads
    epsilon * (ds^2 - phi^2 dt^2).  omega and gamma are extracted by
    finite-differencing the smooth field -2*epsilon*H along the coordinate
    lines and pairing against e4 (using <e3, e4> = -1).
    """
    fr = frame if frame is not None else adapted_frame(imm, p, step=step)
    fd = fr.data
    g = fd.metric
    g_scale = math.sqrt(abs(g[0, 0] * g[1, 1])) or 1.0
    if abs(abs(g[0, 0]) - 1.0) > align_tol or abs(g[0, 1]) > align_tol * max(1.0, g_scale):
        raise SingularPointError(
            "chart is not canonical for the nullity foliation "
            "(need g_ss = +/-1 and g_st = 0)"
        )
    phi = math.sqrt(abs(g[1, 1]))

    s0, t0 = fd.point
    eps = float(fr.epsilon)

    def e3_field(s: float, t: float) -> np.ndarray:
        return -2.0 * eps * fundamental_data(imm, (s, t), step=step).H

    hs = frame_step * max(1.0, abs(s0))
    ht = frame_step * max(1.0, abs(t0))
    d_s = sum(w * e3_field(s0 + o * hs, t0) for w, o in zip(_W1, _OFF1)) / hs
    d_t = sum(w * e3_field(s0, t0 + o * ht) for w, o in zip(_W1, _OFF1)) / ht

    d_e1 = fr.e1_coef[0] * d_s + fr.e1_coef[1] * d_t
    d_e2 = fr.e2_coef[0] * d_s + fr.e2_coef[1] * d_t
    omega = -fd.space.inner(d_e1, fr.e4)
    gamma = -fd.space.inner(d_e2, fr.e4)
    return float(omega), float(gamma), float(phi)


def induced_metric(imm: Immersion, s, t, step: float | None = None) -> np.ndarray:
    """Induced metric as a (..., 2, 2) array over broadcast points.

    Vectorized over arbitrary leading shapes; used by the curvature residual
    machinery, which differentiates the metric field itself.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    s, t = np.broadcast_arrays(s, t)
    hs = fd_step(s) if step is None else np.full(s.shape, float(step))
    ht = fd_step(t) if step is None else np.full(t.shape, float(step))

    ss = np.concatenate(
        [np.stack([s + o * hs for o in _OFF1]), np.stack([s, s, s, s])]
    )
    tt = np.concatenate(
        [np.stack([t, t, t, t]), np.stack([t + o * ht for o in _OFF1])]
    )
    vals = np.asarray(imm.chart(ss, tt), dtype=float)
    f_s = np.tensordot(_W1, vals[:4], axes=(0, 0)) / hs[..., None]
    f_t = np.tensordot(_W1, vals[4:], axes=(0, 0)) / ht[..., None]

    signs = imm.form.ambient.signs
    g_ss = np.sum(signs * f_s * f_s, axis=-1)
    g_st = np.sum(signs * f_s * f_t, axis=-1)
    g_tt = np.sum(signs * f_t * f_t, axis=-1)
    out = np.empty(s.shape + (2, 2))
    out[..., 0, 0] = g_ss
    out[..., 0, 1] = g_st
    out[..., 1, 0] = g_st
    out[..., 1, 1] = g_tt
    return out
