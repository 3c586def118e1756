"""Certification of asserted surface properties from raw parametrizations.

Everything here consumes only an :class:`Immersion` (a chart plus its ambient
form) and checks, by finite differences at sample grids, that the surface
actually has the properties the constructors claim:

* the mean curvature vector is lightlike and nonzero,
* the relative null space is exactly one-dimensional,
* the adapted lightlike frame satisfies its inner-product table and the
  distinguished normal has vanishing shape operator,
* the Gauss, Codazzi and Ricci equations hold for the induced data.

The curvature checks are deliberately non-circular: the intrinsic curvature
tensor is rebuilt from finite differences of the induced metric alone, then
compared against the second-fundamental-form side.  Batched helpers evaluate
whole grids through single vectorized chart calls.

Convergence probes (`residual_convergence`, `ode_convergence`) rerun the same
residuals at a deliberately coarse step and at half that step, exposing the
fourth-order decay of the truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .exceptions import QuasiminError
from .immersion import (
    Immersion,
    adapted_frame,
    fundamental_data,
    induced_metric,
    relative_null_space,
)
from .numerics import _OFF1 as OFF1
from .numerics import _W1 as W1
from .numerics import _W2 as W2
from .numerics import Grid1D, fd_step, solve_lode2

__all__ = [
    "PointRecord",
    "CertificationReport",
    "sample_grid",
    "certify_quasi_minimal",
    "certify_positive_relative_nullity",
    "certify_adapted_frame",
    "certify_curvature_equations",
    "run_certifications",
    "residual_convergence",
    "ode_convergence",
]

_TINY = 1e-300


# --------------------------------------------------------------------------
# Report containers


@dataclass
class PointRecord:
    """Outcome of the checks at a single parameter point."""

    s: float
    t: float
    status: str  # "pass" | "fail" | "skipped"
    residuals: dict[str, float] = field(default_factory=dict)
    detail: str = ""

    def to_payload(self) -> dict:
        return {
            "s": float(self.s),
            "t": float(self.t),
            "status": self.status,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "detail": self.detail,
        }


@dataclass
class CertificationReport:
    """Aggregated result of one certification over a sample grid."""

    name: str
    family: str
    passed: bool
    tolerance: float
    points: list[PointRecord]
    summary: dict[str, float]

    @property
    def evaluated(self) -> int:
        return sum(1 for p in self.points if p.status != "skipped")

    def to_payload(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "passed": bool(self.passed),
            "tolerance": float(self.tolerance),
            "summary": {k: float(v) for k, v in self.summary.items()},
            "points": [p.to_payload() for p in self.points],
        }


def sample_grid(imm: Immersion, n_s: int, n_t: int) -> list[tuple[float, float]]:
    """Uniform inclusive grid over the immersion's parameter rectangle."""
    ss = np.linspace(imm.s_range[0], imm.s_range[1], int(n_s))
    ts = np.linspace(imm.t_range[0], imm.t_range[1], int(n_t))
    return [(float(s), float(t)) for s in ss for t in ts]


def _split_points(imm, points):
    """Separate evaluable points from those inside a singular-locus margin."""
    live: list[tuple[float, float]] = []
    skipped: list[PointRecord] = []
    for s, t in points:
        reason = imm.singular_reason(s, t)
        if reason is not None:
            skipped.append(PointRecord(s, t, "skipped", {}, reason))
        else:
            live.append((s, t))
    return live, skipped


def _finalize(name, imm, tol, records, skipped, summary) -> CertificationReport:
    points = records + skipped
    evaluated = [p for p in records if p.status != "skipped"]
    passed = bool(evaluated) and all(p.status == "pass" for p in evaluated)
    summary = dict(summary)
    summary["evaluated"] = float(len(evaluated))
    summary["skipped"] = float(len(skipped))
    return CertificationReport(
        name=name,
        family=imm.name,
        passed=passed,
        tolerance=float(tol),
        points=points,
        summary=summary,
    )


# --------------------------------------------------------------------------
# Batched differential helpers (single vectorized chart calls per stencil)


def _steps(coords, step):
    if step is not None:
        return np.full(np.shape(coords), float(step))
    return fd_step(np.asarray(coords, dtype=float))


def _batched_jet(chart, S, T, step=None):
    """Second-order jet of the chart over arrays of parameter points.

    Node layout matches the pointwise stencil: center, 4 per axis for first /
    second derivatives, 16 cross nodes for the mixed derivative — all pushed
    through one chart call.
    """
    S = np.asarray(S, dtype=float)
    T = np.asarray(T, dtype=float)
    S, T = np.broadcast_arrays(S, T)
    hs = _steps(S, step)
    ht = _steps(T, step)

    base = S.shape
    Ss = np.empty((25,) + base)
    Ts = np.empty((25,) + base)
    Ss[0], Ts[0] = S, T
    for a, o in enumerate(OFF1):
        Ss[1 + a], Ts[1 + a] = S + o * hs, T
        Ss[5 + a], Ts[5 + a] = S, T + o * ht
    for i, oi in enumerate(OFF1):
        for j, oj in enumerate(OFF1):
            Ss[9 + 4 * i + j] = S + oi * hs
            Ts[9 + 4 * i + j] = T + oj * ht

    vals = np.asarray(chart(Ss, Ts), dtype=float)  # (25, ..., dim)
    value = vals[0]
    f_s = np.tensordot(W1, vals[1:5], axes=1) / hs[..., None]
    f_t = np.tensordot(W1, vals[5:9], axes=1) / ht[..., None]
    # W2 runs over offsets (-2, -1, 0, 1, 2); the center sits at vals[0].
    axis_s = np.stack([vals[1], vals[2], vals[0], vals[3], vals[4]])
    axis_t = np.stack([vals[5], vals[6], vals[0], vals[7], vals[8]])
    f_ss = np.tensordot(W2, axis_s, axes=1) / (hs * hs)[..., None]
    f_tt = np.tensordot(W2, axis_t, axes=1) / (ht * ht)[..., None]
    cross = vals[9:25].reshape((4, 4) + vals.shape[1:])
    f_st = np.einsum("i,j,ij...->...", W1, W1, cross) / (hs * ht)[..., None]
    return {
        "value": value,
        "f_s": f_s,
        "f_t": f_t,
        "f_ss": f_ss,
        "f_st": f_st,
        "f_tt": f_tt,
    }


def _surface_span(imm, S, T, step=None):
    """Jet plus the span to project out of: tangents, and for a curved
    ambient also the position vector (its normal component carries the
    intrinsic correction of the second fundamental form)."""
    jet = _batched_jet(imm.chart, S, T, step)
    vecs = [jet["f_s"], jet["f_t"]]
    if imm.form.c != 0:
        vecs.append(jet["value"])
    span = np.stack(vecs, axis=-2)  # (..., k, dim)
    signs = imm.form.ambient.signs
    gram = np.einsum("...ad,...bd->...ab", span * signs, span)
    return jet, span, gram


def _project_normal(space, span, gram, V):
    """Normal component of a single field V of shape span.shape[:-2] + (dim,)."""
    rhs = np.einsum("...ad,...d->...a", span * space.signs, V)
    coef = np.linalg.solve(gram, rhs[..., None])[..., 0]
    return V - np.einsum("...a,...ad->...d", coef, span)


def _project_normal_stack(space, span, gram, V):
    """Normal components of a stack V of shape span.shape[:-2] + (v, dim)."""
    rhs = np.einsum("...ad,...vd->...av", span * space.signs, V)
    coef = np.linalg.solve(gram, rhs)  # (..., a, v)
    return V - np.einsum("...av,...ad->...vd", coef, span)


def _shifted(coords, h):
    """Stack the four first-derivative stencil offsets onto a new leading
    axis: result[a] = coords + OFF1[a] * h."""
    coords = np.asarray(coords, dtype=float)
    off = OFF1.reshape((4,) + (1,) * coords.ndim)
    return coords[None] + off * np.asarray(h)[None]


def _alpha_batch(imm, S, T, step=None):
    """Second fundamental form (with intrinsic correction in a curved
    ambient), metric, and projection data over arrays of points."""
    jet, span, gram = _surface_span(imm, S, T, step)
    space = imm.form.ambient
    g_ss = space.inner(jet["f_s"], jet["f_s"])
    g_st = space.inner(jet["f_s"], jet["f_t"])
    g_tt = space.inner(jet["f_t"], jet["f_t"])
    metric = np.stack(
        [
            np.stack([g_ss, g_st], axis=-1),
            np.stack([g_st, g_tt], axis=-1),
        ],
        axis=-2,
    )
    second = np.stack([jet["f_ss"], jet["f_st"], jet["f_tt"]], axis=-2)
    normal = _project_normal_stack(space, span, gram, second)
    a_ss, a_st, a_tt = normal[..., 0, :], normal[..., 1, :], normal[..., 2, :]
    alpha = np.stack(
        [
            np.stack([a_ss, a_st], axis=-2),
            np.stack([a_st, a_tt], axis=-2),
        ],
        axis=-3,
    )  # (..., i, j, dim)
    return {
        "jet": jet,
        "span": span,
        "gram": gram,
        "metric": metric,
        "metric_inv": np.linalg.inv(metric),
        "alpha": alpha,
    }


def christoffels_batch(imm, S, T, step=None):
    """Christoffel symbols Gamma[..., k, i, j] of the induced metric from
    fourth-order differences of the metric field."""
    S = np.asarray(S, dtype=float)
    T = np.asarray(T, dtype=float)
    S, T = np.broadcast_arrays(S, T)
    hs = _steps(S, step)
    ht = _steps(T, step)
    dg_s = sum(
        w * induced_metric(imm, S + o * hs, T, step=step) for w, o in zip(W1, OFF1)
    ) / hs[..., None, None]
    dg_t = sum(
        w * induced_metric(imm, S, T + o * ht, step=step) for w, o in zip(W1, OFF1)
    ) / ht[..., None, None]
    D = np.stack([dg_s, dg_t], axis=-3)  # (..., a, b, c) = d_a g_bc
    ginv = np.linalg.inv(induced_metric(imm, S, T, step=step))
    sym = D + np.moveaxis(D, [-3, -2, -1], [-1, -2, -3]) - np.swapaxes(D, -3, -2)
    return 0.5 * np.einsum("...kl,...ilj->...kij", ginv, sym)


def riemann_batch(imm, S, T, step=None):
    """Curvature tensor of the induced metric, R[..., i, j, k, l] being the
    component along basis vector l of R(d_i, d_j) d_k.  Built solely from the
    metric (independent of the second-fundamental-form pipeline)."""
    S = np.asarray(S, dtype=float)
    T = np.asarray(T, dtype=float)
    S, T = np.broadcast_arrays(S, T)
    hs = _steps(S, step)
    ht = _steps(T, step)
    gamma = christoffels_batch(imm, S, T, step=step)
    dgamma_s = sum(
        w * christoffels_batch(imm, S + o * hs, T, step=step) for w, o in zip(W1, OFF1)
    ) / hs[..., None, None, None]
    dgamma_t = sum(
        w * christoffels_batch(imm, S, T + o * ht, step=step) for w, o in zip(W1, OFF1)
    ) / ht[..., None, None, None]
    dgamma = np.stack([dgamma_s, dgamma_t], axis=-4)  # (..., a, k, i, j)
    term = np.moveaxis(dgamma, [-4, -3, -2, -1], [-4, -1, -3, -2])  # -> (i, j, k, l)
    quad = np.einsum("...lim,...mjk->...ijkl", gamma, gamma)
    rm = term + quad
    return rm - np.swapaxes(rm, -4, -3)


# --------------------------------------------------------------------------
# Certifications


def certify_quasi_minimal(
    imm: Immersion,
    grid: tuple[int, int] = (9, 9),
    tol: float = 1e-6,
    nonzero_floor: float = 1e-6,
    step: float | None = None,
    points: Sequence[tuple[float, float]] | None = None,
) -> CertificationReport:
    """Check that the mean curvature vector is lightlike (relative pairing
    residual <= tol) and nonzero (euclidean norm >= nonzero_floor) at every
    non-singular grid point."""
    pts = list(points) if points is not None else sample_grid(imm, *grid)
    live, skipped = _split_points(imm, pts)
    space = imm.form.ambient
    records = []
    max_rel, min_norm = 0.0, np.inf
    for s, t in live:
        try:
            data = fundamental_data(imm, (s, t), step=step)
        except QuasiminError as exc:
            records.append(PointRecord(s, t, "fail", {}, str(exc)))
            continue
        h = data.H
        norm = float(np.linalg.norm(h))
        rel = abs(float(space.inner(h, h))) / max(norm * norm, _TINY)
        ok = rel <= tol and norm >= nonzero_floor
        if ok:
            detail = ""
        elif norm < nonzero_floor:
            detail = f"mean curvature vector vanishes (Euclidean norm {norm:.3e})"
        else:
            detail = f"mean curvature vector is not lightlike (relative pairing {rel:.3e})"
        records.append(
            PointRecord(
                s,
                t,
                "pass" if ok else "fail",
                {"lightlike_rel": rel, "euclid_norm": norm},
                detail,
            )
        )
        max_rel = max(max_rel, rel)
        min_norm = min(min_norm, norm)
    summary = {
        "max_lightlike_rel": max_rel,
        "min_euclid_norm": 0.0 if min_norm is np.inf else min_norm,
    }
    return _finalize("quasi_minimal", imm, tol, records, skipped, summary)


def certify_positive_relative_nullity(
    imm: Immersion,
    grid: tuple[int, int] = (9, 9),
    rank_tol: float = 1e-8,
    exactly_one: bool = True,
    step: float | None = None,
    points: Sequence[tuple[float, float]] | None = None,
) -> CertificationReport:
    """Check the dimension of the relative null space at every grid point:
    exactly one on the classified families (``exactly_one``), or merely
    positive.  Also records how well the null direction annihilates the
    second fundamental form."""
    pts = list(points) if points is not None else sample_grid(imm, *grid)
    live, skipped = _split_points(imm, pts)
    records = []
    dims, max_ann = [], 0.0
    for s, t in live:
        try:
            data = fundamental_data(imm, (s, t), step=step)
            dim, basis = relative_null_space(imm, (s, t), rank_tol=rank_tol, data=data)
        except QuasiminError as exc:
            records.append(PointRecord(s, t, "fail", {}, str(exc)))
            continue
        ann = 0.0
        if dim > 0:
            scale = max(float(np.max(np.linalg.norm(data.alpha_matrix, axis=-1))), _TINY)
            for u in basis:
                for e in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
                    ann = max(ann, float(np.linalg.norm(data.alpha(u, e))) / scale)
        ok = dim == 1 if exactly_one else dim >= 1
        records.append(
            PointRecord(
                s,
                t,
                "pass" if ok else "fail",
                {"null_dim": float(dim), "annihilation": ann},
                "" if ok else f"relative null space has dimension {dim}",
            )
        )
        dims.append(dim)
        max_ann = max(max_ann, ann)
    summary = {
        "min_dim": float(min(dims)) if dims else -1.0,
        "max_dim": float(max(dims)) if dims else -1.0,
        "max_annihilation": max_ann,
    }
    return _finalize("positive_relative_nullity", imm, rank_tol, records, skipped, summary)


def _frame_residuals(imm, s, t, step=None, **frame_kwargs) -> dict[str, float]:
    """The inner-product table of the adapted frame plus the two structural
    identities (distinguished normal equals the second fundamental form on
    the unit spacelike direction; its shape operator vanishes)."""
    frame = adapted_frame(imm, (s, t), step=step, **frame_kwargs)
    data = frame.data
    space = data.space
    eps = float(frame.epsilon)
    e1, e2, e3, e4 = frame.e1, frame.e2, frame.e3, frame.e4
    n3 = float(np.linalg.norm(e3))
    n4 = float(np.linalg.norm(e4))

    def unit(v):
        return v / max(float(np.linalg.norm(v)), _TINY)

    a22 = data.alpha(frame.e2_coef, frame.e2_coef)
    shape3 = data.shape_operator(e3)
    shape4 = data.shape_operator(e4)
    return {
        "e1_norm": abs(float(space.inner(e1, e1)) - eps),
        "e2_norm": abs(float(space.inner(e2, e2)) + eps),
        "e1_e2": abs(float(space.inner(e1, e2))),
        "e3_null": abs(float(space.inner(e3, e3))) / max(n3 * n3, _TINY),
        "e4_null": abs(float(space.inner(e4, e4))) / max(n4 * n4, _TINY),
        "e3_e4": abs(float(space.inner(e3, e4)) + 1.0),
        "e3_tangent": max(
            abs(float(space.inner(unit(e3), unit(e1)))),
            abs(float(space.inner(unit(e3), unit(e2)))),
        ),
        "e4_tangent": max(
            abs(float(space.inner(unit(e4), unit(e1)))),
            abs(float(space.inner(unit(e4), unit(e2)))),
        ),
        "mean_alignment": float(np.linalg.norm(e3 - a22)) / max(n3, _TINY),
        "shape_vanishes": float(np.linalg.norm(shape3))
        / max(1.0, float(np.linalg.norm(shape4))),
    }


def certify_adapted_frame(
    imm: Immersion,
    grid: tuple[int, int] = (9, 9),
    tol: float = 1e-6,
    step: float | None = None,
    points: Sequence[tuple[float, float]] | None = None,
) -> CertificationReport:
    """Build the adapted lightlike frame at every grid point and check all
    its defining relations against ``tol``."""
    pts = list(points) if points is not None else sample_grid(imm, *grid)
    live, skipped = _split_points(imm, pts)
    records = []
    maxima: dict[str, float] = {}
    for s, t in live:
        try:
            res = _frame_residuals(imm, s, t, step=step)
        except QuasiminError as exc:
            records.append(PointRecord(s, t, "fail", {}, str(exc)))
            continue
        ok = all(v <= tol for v in res.values())
        records.append(
            PointRecord(
                s,
                t,
                "pass" if ok else "fail",
                res,
                "" if ok else "frame relation residual above tolerance",
            )
        )
        for k, v in res.items():
            maxima[k] = max(maxima.get(k, 0.0), v)
    summary = {f"max_{k}": v for k, v in maxima.items()}
    return _finalize("adapted_frame", imm, tol, records, skipped, summary)


def _gauss_residuals(imm, S, T, ab, step=None):
    """Relative sup-residual of the Gauss equation at each point of (S, T)."""
    rm = riemann_batch(imm, S, T, step=step)
    g = ab["metric"]
    ginv = ab["metric_inv"]
    alpha = ab["alpha"]
    signs = imm.form.ambient.signs
    c = float(imm.form.c)
    eye = np.eye(2)
    curv = c * (
        np.einsum("...jk,il->...ijkl", g, eye) - np.einsum("...ik,jl->...ijkl", g, eye)
    )
    pair = np.einsum("...abd,...jkd->...abjk", alpha * signs, alpha)
    shape = np.einsum("...la,...abjk->...lbjk", ginv, pair)
    p1 = np.moveaxis(shape, [-4, -3, -2, -1], [-1, -4, -3, -2])  # (i, j, k, l)
    rhs = curv + p1 - np.swapaxes(p1, -4, -3)
    diff = np.max(np.abs(rm - rhs), axis=(-4, -3, -2, -1))
    scale = np.maximum(
        1.0,
        np.maximum(
            np.max(np.abs(rm), axis=(-4, -3, -2, -1)),
            np.max(np.abs(rhs), axis=(-4, -3, -2, -1)),
        ),
    )
    return diff / scale


def _codazzi_residuals(imm, S, T, ab, step=None):
    """Relative residual of the Codazzi equation (normal-connection
    derivative of the second fundamental form is symmetric) per point."""
    S = np.asarray(S, dtype=float)
    T = np.asarray(T, dtype=float)
    S, T = np.broadcast_arrays(S, T)
    hs = _steps(S, step)
    ht = _steps(T, step)
    space = imm.form.ambient
    dal_s = sum(
        w * _alpha_batch(imm, S + o * hs, T, step=step)["alpha"]
        for w, o in zip(W1, OFF1)
    ) / hs[..., None, None, None]
    dal_t = sum(
        w * _alpha_batch(imm, S, T + o * ht, step=step)["alpha"]
        for w, o in zip(W1, OFF1)
    ) / ht[..., None, None, None]
    gamma = christoffels_batch(imm, S, T, step=step)
    alpha = ab["alpha"]
    span, gram = ab["span"], ab["gram"]
    worst = np.zeros(S.shape)
    for k in (0, 1):
        raw = dal_s[..., 1, k, :] - dal_t[..., 0, k, :]
        lead = _project_normal(space, span, gram, raw)
        corr = np.einsum("...m,...md->...d", gamma[..., :, 0, k], alpha[..., 1, :, :])
        corr = corr - np.einsum(
            "...m,...md->...d", gamma[..., :, 1, k], alpha[..., 0, :, :]
        )
        resid = np.linalg.norm(lead - corr, axis=-1)
        scale = np.maximum(
            1.0,
            np.maximum(np.linalg.norm(lead, axis=-1), np.linalg.norm(corr, axis=-1)),
        )
        worst = np.maximum(worst, resid / scale)
    return worst


def _ricci_residuals(imm, S, T, ab, step=None, norm_floor=0.05):
    """Relative residual of the Ricci equation per point, maximized over the
    usable normal test fields (projections of the ambient coordinate axes);
    also returns how many test fields were usable at each point."""
    S = np.asarray(S, dtype=float)
    T = np.asarray(T, dtype=float)
    S, T = np.broadcast_arrays(S, T)
    hs = _steps(S, step)
    ht = _steps(T, step)
    space = imm.form.ambient
    dim = space.dim
    signs = space.signs
    alpha = ab["alpha"]
    ginv = ab["metric_inv"]
    span_c, gram_c = ab["span"], ab["gram"]

    def xi_eval(const, Sv, Tv):
        _, span, gram = _surface_span(imm, Sv, Tv, step)
        V = np.broadcast_to(const, np.shape(Sv) + (dim,))
        return _project_normal(space, span, gram, V)

    def nabla_perp(const, axis, Sv, Tv):
        h = _steps(Sv if axis == 0 else Tv, step)
        if axis == 0:
            stacked = xi_eval(const, _shifted(Sv, h), np.broadcast_to(Tv, (4,) + np.shape(Tv)))
        else:
            stacked = xi_eval(const, np.broadcast_to(Sv, (4,) + np.shape(Sv)), _shifted(Tv, h))
        deriv = np.tensordot(W1, stacked, axes=1) / h[..., None]
        _, span, gram = _surface_span(imm, Sv, Tv, step)
        return _project_normal(space, span, gram, deriv)

    worst = np.zeros(S.shape)
    usable = np.zeros(S.shape)
    for K in range(dim):
        const = np.zeros(dim)
        const[K] = 1.0
        xi_c = xi_eval(const, S, T)
        norms = np.linalg.norm(xi_c, axis=-1)
        mask = norms >= norm_floor
        if not np.any(mask):
            continue
        # d_s of the field nabla^perp_t xi, then projected; and vice versa.
        eta_t = nabla_perp(const, 1, _shifted(S, hs), np.broadcast_to(T, (4,) + T.shape))
        eta_s = nabla_perp(const, 0, np.broadcast_to(S, (4,) + S.shape), _shifted(T, ht))
        d_s = np.tensordot(W1, eta_t, axes=1) / hs[..., None]
        d_t = np.tensordot(W1, eta_s, axes=1) / ht[..., None]
        lhs = _project_normal(space, span_c, gram_c, d_s) - _project_normal(
            space, span_c, gram_c, d_t
        )
        m = np.einsum("...ijd,...d->...ij", alpha * signs, xi_c)
        shape = np.einsum("...la,...aj->...lj", ginv, m)
        rhs = np.einsum("...l,...ld->...d", shape[..., :, 1], alpha[..., 0, :, :])
        rhs = rhs - np.einsum("...l,...ld->...d", shape[..., :, 0], alpha[..., :, 1, :])
        resid = np.linalg.norm(lhs - rhs, axis=-1)
        scale = np.maximum(
            1.0,
            np.maximum(np.linalg.norm(lhs, axis=-1), np.linalg.norm(rhs, axis=-1)),
        )
        rel = resid / scale
        worst = np.where(mask, np.maximum(worst, rel), worst)
        usable = usable + mask.astype(float)
    return worst, usable


def certify_curvature_equations(
    imm: Immersion,
    grid: tuple[int, int] = (9, 9),
    tol: float = 1e-4,
    step: float | None = None,
    points: Sequence[tuple[float, float]] | None = None,
) -> CertificationReport:
    """Check Gauss, Codazzi and Ricci at every non-singular grid point,
    rebuilding the intrinsic curvature from the metric alone."""
    pts = list(points) if points is not None else sample_grid(imm, *grid)
    live, skipped = _split_points(imm, pts)
    records = []
    maxima = {"gauss": 0.0, "codazzi": 0.0, "ricci": 0.0}
    if live:
        S = np.array([p[0] for p in live])
        T = np.array([p[1] for p in live])
        ab = _alpha_batch(imm, S, T, step=step)
        gauss = _gauss_residuals(imm, S, T, ab, step=step)
        codazzi = _codazzi_residuals(imm, S, T, ab, step=step)
        ricci, usable = _ricci_residuals(imm, S, T, ab, step=step)
        for idx, (s, t) in enumerate(live):
            res = {
                "gauss": float(gauss[idx]),
                "codazzi": float(codazzi[idx]),
                "ricci": float(ricci[idx]),
            }
            ok = all(v <= tol for v in res.values()) and usable[idx] >= 1
            detail = ""
            if usable[idx] < 1:
                detail = "no usable normal test field for the Ricci equation"
            elif not ok:
                detail = "curvature equation residual above tolerance"
            records.append(PointRecord(s, t, "pass" if ok else "fail", res, detail))
            for k in maxima:
                maxima[k] = max(maxima[k], res[k])
    summary = {f"max_{k}": v for k, v in maxima.items()}
    return _finalize("curvature_equations", imm, tol, records, skipped, summary)


def run_certifications(
    imm: Immersion,
    grid: tuple[int, int] = (9, 9),
    frame_tol: float = 1e-6,
    curvature_tol: float = 1e-4,
    rank_tol: float = 1e-8,
    step: float | None = None,
) -> dict[str, CertificationReport]:
    """Run all four certifications on a common grid."""
    return {
        "quasi_minimal": certify_quasi_minimal(imm, grid, tol=frame_tol, step=step),
        "positive_relative_nullity": certify_positive_relative_nullity(
            imm, grid, rank_tol=rank_tol, step=step
        ),
        "adapted_frame": certify_adapted_frame(imm, grid, tol=frame_tol, step=step),
        "curvature_equations": certify_curvature_equations(
            imm, grid, tol=curvature_tol, step=step
        ),
    }


# --------------------------------------------------------------------------
# Convergence probes


def _probe_points(imm, count=3):
    """A few interior points along the domain diagonal, skipping singular
    margins."""
    out = []
    for frac in np.linspace(0.3, 0.7, count):
        s = imm.s_range[0] + frac * (imm.s_range[1] - imm.s_range[0])
        t = imm.t_range[0] + frac * (imm.t_range[1] - imm.t_range[0])
        if imm.singular_reason(s, t) is None:
            out.append((float(s), float(t)))
    if not out:
        raise ValueError("no non-singular probe point found on the domain diagonal")
    return out


def _frame_truncation_residual(imm, pts, h):
    """Max over probe points of the truncation-dominated frame residuals
    (lightlike pairing, mean-curvature alignment, shape-operator decay) at an
    absolute finite-difference step h."""
    worst = 0.0
    for s, t in pts:
        res = _frame_residuals(
            imm, s, t, step=h, lightlike_tol=1.0, nonzero_tol=1e-9, rank_tol=1e-3
        )
        worst = max(worst, res["e3_null"], res["mean_alignment"], res["shape_vanishes"])
    return worst


def _curvature_truncation_residual(imm, pts, h):
    S = np.array([p[0] for p in pts])
    T = np.array([p[1] for p in pts])
    ab = _alpha_batch(imm, S, T, step=h)
    gauss = _gauss_residuals(imm, S, T, ab, step=h)
    codazzi = _codazzi_residuals(imm, S, T, ab, step=h)
    ricci, _ = _ricci_residuals(imm, S, T, ab, step=h)
    return float(max(np.max(gauss), np.max(codazzi), np.max(ricci)))


def residual_convergence(
    imm: Immersion,
    coarse: float = 0.04,
    factor: float = 2.0,
    probes: int = 3,
) -> dict:
    """Evaluate frame and curvature residuals at a deliberately coarse
    finite-difference step and at step/factor.  With fourth-order stencils
    the truncation error should drop by about factor**4."""
    pts = _probe_points(imm, probes)
    fine = coarse / factor
    frame_c = _frame_truncation_residual(imm, pts, coarse)
    frame_f = _frame_truncation_residual(imm, pts, fine)
    curv_c = _curvature_truncation_residual(imm, pts, coarse)
    curv_f = _curvature_truncation_residual(imm, pts, fine)
    return {
        "step_coarse": float(coarse),
        "step_fine": float(fine),
        "frame": {
            "coarse": float(frame_c),
            "fine": float(frame_f),
            "ratio": float(frame_c / max(frame_f, _TINY)),
        },
        "curvature": {
            "coarse": float(curv_c),
            "fine": float(curv_f),
            "ratio": float(curv_c / max(curv_f, _TINY)),
        },
    }


def ode_convergence(coarse: float = 0.1, factor: float = 2.0) -> dict:
    """Error of the profile-equation integrator against a closed form
    (b'' = b + cos 3t, b(0) = 1, b'(0) = 0 on [0, 2]) at two step sizes.
    The classical fourth-order scheme should shrink the error ~factor**4."""

    def rhs(t):
        return np.cos(3.0 * np.asarray(t, dtype=float))

    def closed(t):
        t = np.asarray(t, dtype=float)
        return 1.1 * np.cosh(t) - 0.1 * np.cos(3.0 * t)

    samples = np.linspace(0.0, 2.0, 101)

    def err(h):
        sol = solve_lode2(1, rhs, 0.0, 1.0, 0.0, Grid1D(0.0, 2.0, h))
        return float(np.max(np.abs(sol.b(samples) - closed(samples))))

    e_coarse = err(coarse)
    e_fine = err(coarse / factor)
    return {
        "step_coarse": float(coarse),
        "step_fine": float(coarse / factor),
        "coarse": e_coarse,
        "fine": e_fine,
        "ratio": float(e_coarse / max(e_fine, _TINY)),
    }
