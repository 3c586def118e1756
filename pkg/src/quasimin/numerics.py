"""Finite differences, a fixed-step second-order ODE solver, and cumulative
quadrature with dense output.

All stencils are classical fourth-order central differences on the offsets
(-2, -1, 0, 1, 2).  Dense outputs are cubic Hermite interpolants on the node
values and node derivatives, so they can be evaluated anywhere inside (and
slightly beyond) the node span.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "DEFAULT_FD_STEP",
    "Grid1D",
    "CubicHermite",
    "OdeSolution",
    "ChartJet",
    "fd_step",
    "derivative1",
    "derivative2",
    "partial_derivs",
    "solve_lode2",
    "cumulative_integral",
]

#: eps^(1/6): balances fourth-order truncation against roundoff for second
#: derivatives of smooth O(1) functions.
DEFAULT_FD_STEP = float(np.finfo(float).eps) ** (1.0 / 6.0)

# Fourth-order first-derivative stencil on offsets (-2, -1, 1, 2).
_OFF1 = np.array([-2.0, -1.0, 1.0, 2.0])
_W1 = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
# Fourth-order second-derivative stencil on offsets (-2, -1, 0, 1, 2).
_OFF2 = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
_W2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def fd_step(coord, base: float | None = None):
    """Differentiation step scaled by the coordinate magnitude."""
    h0 = DEFAULT_FD_STEP if base is None else float(base)
    return h0 * np.maximum(1.0, np.abs(coord))


def derivative1(fn: Callable, t, step: float | None = None):
    """First derivative of a scalar-or-vector valued callable, 4th order."""
    t = np.asarray(t, dtype=float)
    h = fd_step(t) if step is None else np.full(t.shape, float(step))
    vals = [np.asarray(fn(t + o * h), dtype=float) for o in _OFF1]
    acc = sum(w * v for w, v in zip(_W1, vals))
    h_shaped = h.reshape(h.shape + (1,) * (acc.ndim - h.ndim))
    out = acc / h_shaped
    return float(out) if out.ndim == 0 else out


def derivative2(fn: Callable, t, step: float | None = None):
    """Second derivative of a scalar-or-vector valued callable, 4th order."""
    t = np.asarray(t, dtype=float)
    h = fd_step(t) if step is None else np.full(t.shape, float(step))
    vals = [np.asarray(fn(t + o * h), dtype=float) for o in _OFF2]
    acc = sum(w * v for w, v in zip(_W2, vals))
    h_shaped = h.reshape(h.shape + (1,) * (acc.ndim - h.ndim))
    out = acc / h_shaped**2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ChartJet:
    """Value and partial derivatives of a two-parameter chart at one point."""

    s: float
    t: float
    value: np.ndarray
    d_s: np.ndarray
    d_t: np.ndarray
    d_ss: np.ndarray | None = None
    d_st: np.ndarray | None = None
    d_tt: np.ndarray | None = None


def partial_derivs(chart: Callable, p, order: int = 2, step: float | None = None) -> ChartJet:
    """Partial derivatives of ``chart(s, t)`` at ``p`` up to ``order`` (1 or 2).

    The chart must accept broadcastable array arguments and return an array
    whose last axis is the ambient dimension; all stencil points are gathered
    into a single vectorized evaluation.  With ``step=None`` the step in each
    direction is eps^(1/6) * max(1, |coordinate|); the chart must be evaluable
    on a neighborhood of radius twice the step.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    s0, t0 = float(p[0]), float(p[1])
    if step is None:
        hs = float(fd_step(s0))
        ht = float(fd_step(t0))
    else:
        hs = ht = float(step)

    pts_s = [(s0 + o * hs, t0) for o in _OFF1]
    pts_t = [(s0, t0 + o * ht) for o in _OFF1]
    pts = [(s0, t0)] + pts_s + pts_t
    if order == 2:
        cross = [(s0 + oi * hs, t0 + oj * ht) for oi in _OFF1 for oj in _OFF1]
        pts += cross
    ss = np.array([q[0] for q in pts])
    tt = np.array([q[1] for q in pts])
    vals = np.asarray(chart(ss, tt), dtype=float)

    value = vals[0]
    f_s = np.tensordot(_W1, vals[1:5], axes=(0, 0)) / hs
    f_t = np.tensordot(_W1, vals[5:9], axes=(0, 0)) / ht
    if order == 1:
        return ChartJet(s0, t0, value, f_s, f_t)

    col_s = np.stack([vals[1], vals[2], value, vals[3], vals[4]])
    col_t = np.stack([vals[5], vals[6], value, vals[7], vals[8]])
    f_ss = np.tensordot(_W2, col_s, axes=(0, 0)) / hs**2
    f_tt = np.tensordot(_W2, col_t, axes=(0, 0)) / ht**2
    grid = vals[9:].reshape(4, 4, -1)
    f_st = np.einsum("i,j,ijk->k", _W1, _W1, grid) / (hs * ht)
    return ChartJet(s0, t0, value, f_s, f_t, f_ss, f_st, f_tt)


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid specification on [t0, t1] with step h."""

    t0: float
    t1: float
    h: float

    def __post_init__(self):
        if not (self.t1 > self.t0):
            raise ValueError("grid requires t1 > t0")
        if not (0 < self.h <= self.t1 - self.t0):
            raise ValueError("grid step must be positive and at most the span")


class CubicHermite:
    """Piecewise cubic interpolant through (ts, ys) matching slopes dys.

    Evaluation outside the node span extrapolates with the boundary cubic;
    callers should only rely on a small overshoot (finite-difference stencils
    at the edge of the span).
    """

    def __init__(self, ts: np.ndarray, ys: np.ndarray, dys: np.ndarray):
        self.ts = np.asarray(ts, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        self.dys = np.asarray(dys, dtype=float)
        if self.ts.ndim != 1 or self.ts.size < 2:
            raise ValueError("need at least two nodes")
        if self.ys.shape != self.ts.shape or self.dys.shape != self.ts.shape:
            raise ValueError("node arrays must share a common shape")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.clip(np.searchsorted(self.ts, t, side="right") - 1, 0, self.ts.size - 2)
        h = self.ts[idx + 1] - self.ts[idx]
        u = (t - self.ts[idx]) / h
        u2 = u * u
        u3 = u2 * u
        h00 = 2.0 * u3 - 3.0 * u2 + 1.0
        h10 = u3 - 2.0 * u2 + u
        h01 = -2.0 * u3 + 3.0 * u2
        h11 = u3 - u2
        out = (
            h00 * self.ys[idx]
            + h10 * h * self.dys[idx]
            + h01 * self.ys[idx + 1]
            + h11 * h * self.dys[idx + 1]
        )
        return float(out) if out.ndim == 0 else out


def _node_range(t0: float, grid: Grid1D) -> tuple[int, int]:
    """Node counts below/above t0 so that t0 + k*h covers [grid.t0, grid.t1]."""
    n_dn = max(0, math.ceil((t0 - grid.t0) / grid.h - 1e-12))
    n_up = max(0, math.ceil((grid.t1 - t0) / grid.h - 1e-12))
    return n_dn, n_up


def _eval_scalar_fn(fn: Callable, ts: np.ndarray) -> np.ndarray:
    vals = np.asarray(fn(ts), dtype=float)
    if vals.shape != ts.shape:
        vals = np.array([float(fn(float(t))) for t in ts])
    if not np.all(np.isfinite(vals)):
        raise ValueError("scalar function returned a non-finite value")
    return vals


@dataclass(frozen=True)
class OdeSolution:
    """Dense solution of b'' = sigma*b + rhs(t) with b'' recovered from the ODE."""

    ts: np.ndarray
    bs: np.ndarray
    dbs: np.ndarray
    sigma: int
    rhs: Callable
    b: CubicHermite = field(init=False, repr=False)
    db: CubicHermite = field(init=False, repr=False)

    def __post_init__(self):
        d2 = self.sigma * self.bs + _eval_scalar_fn(self.rhs, self.ts)
        object.__setattr__(self, "b", CubicHermite(self.ts, self.bs, self.dbs))
        object.__setattr__(self, "db", CubicHermite(self.ts, self.dbs, d2))

    def d2b(self, t):
        return self.sigma * self.b(t) + self.rhs(t)


def solve_lode2(
    sigma: int,
    rhs: Callable,
    t0: float,
    b0: float,
    db0: float,
    grid: Grid1D,
) -> OdeSolution:
    """Integrate b'' = sigma*b + rhs(t), sigma in {-1, +1}, with one classical
    fourth-order Runge-Kutta sweep per direction from (t0, b0, db0).

    Nodes are t0 + k*h, extended far enough in both directions to cover the
    grid span, so t0 itself is always a node (it need not be an endpoint).
    """
    if sigma not in (-1, 1):
        raise ValueError("sigma must be -1 or +1")
    if not (grid.t0 - 1e-12 <= t0 <= grid.t1 + 1e-12):
        raise ValueError("t0 must lie inside the grid span")

    def deriv(t: float, b: float, p: float) -> tuple[float, float]:
        r = float(rhs(t))
        if not math.isfinite(r):
            raise ValueError(f"rhs returned a non-finite value at t={t!r}")
        return p, sigma * b + r

    def sweep(n_steps: int, h: float) -> tuple[list[float], list[float], list[float]]:
        ts, bs, ps = [t0], [b0], [db0]
        t, b, p = t0, b0, db0
        for _ in range(n_steps):
            k1b, k1p = deriv(t, b, p)
            k2b, k2p = deriv(t + h / 2.0, b + h / 2.0 * k1b, p + h / 2.0 * k1p)
            k3b, k3p = deriv(t + h / 2.0, b + h / 2.0 * k2b, p + h / 2.0 * k2p)
            k4b, k4p = deriv(t + h, b + h * k3b, p + h * k3p)
            b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
            p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
            t += h
            ts.append(t)
            bs.append(b)
            ps.append(p)
        return ts, bs, ps

    n_dn, n_up = _node_range(t0, grid)
    ts_up, bs_up, ps_up = sweep(n_up, grid.h)
    ts_dn, bs_dn, ps_dn = sweep(n_dn, -grid.h)
    ts = np.array(ts_dn[::-1] + ts_up[1:]) if n_dn else np.array(ts_up)
    bs = np.array(bs_dn[::-1] + bs_up[1:]) if n_dn else np.array(bs_up)
    ps = np.array(ps_dn[::-1] + ps_up[1:]) if n_dn else np.array(ps_up)
    if ts.size < 2:  # degenerate span: add one forward step for dense output
        ts_up, bs_up, ps_up = sweep(1, grid.h)
        ts, bs, ps = map(np.array, (ts_up, bs_up, ps_up))
    return OdeSolution(ts, bs, ps, sigma, rhs)


def cumulative_integral(g: Callable, t0: float, grid: Grid1D) -> CubicHermite:
    """Dense antiderivative F(t) = integral of g from t0, F(t0) = 0.

    Node increments use Simpson's rule on each step (with the midpoint
    evaluation); the dense output is the cubic Hermite interpolant through
    the node values with slopes g(t_k).
    """
    n_dn, n_up = _node_range(t0, grid)
    ks = np.arange(-n_dn, n_up + 1)
    ts = t0 + ks * grid.h
    g_nodes = _eval_scalar_fn(g, ts)
    g_mids = _eval_scalar_fn(g, (ts[:-1] + ts[1:]) / 2.0)
    increments = grid.h / 6.0 * (g_nodes[:-1] + 4.0 * g_mids + g_nodes[1:])
    fs = np.concatenate([[0.0], np.cumsum(increments)])
    fs -= fs[n_dn]  # anchor F(t0) = 0 exactly
    return CubicHermite(ts, fs, g_nodes)
