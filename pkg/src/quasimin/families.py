"""Constructors for the classified quasi-minimal surface families.

Six families are built here, two in the flat neutral 4-space and four in the
unit quadric of the neutral 5-space.  Each constructor checks the
non-vanishing condition that makes the family quasi-minimal (by sampling it
over the requested parameter span) and returns an :class:`Immersion` whose
chart is vectorized and evaluable on a padded neighborhood of the domain, so
finite-difference stencils near the boundary stay inside.

Also here: the Frenet apparatus for unit-speed curves on the Lorentzian unit
sphere in 3-space, and the closed-form coefficient charts (phi, omega, gamma)
that solve the intrinsic structure equations of the nullity foliation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import (
    InadmissibleFamily,
    NotArcLength,
    OffQuadricError,
    VanishingCurvature,
    WrongCausalType,
)
from .immersion import Immersion, SingularLocus
from .linalg import IndefiniteSpace
from .numerics import Grid1D, cumulative_integral, derivative1, derivative2, solve_lode2
from .space_forms import SpaceForm

__all__ = [
    "CONDITION_LABELS",
    "SphericalCurve",
    "frenet_apparatus",
    "timelike_circle",
    "spacelike_circle",
    "make_e42",
    "make_s42_trig",
    "make_s42_hyp",
    "make_s42_curve",
    "ChartCoefficients",
    "coefficient_chart",
    "chart_pde_residuals",
]

#: Absolute threshold under which a sampled admissibility condition counts as
#: vanishing (comfortably above the finite-difference noise in b'').
CONDITION_TOL = 1e-8

#: Human-readable non-vanishing conditions, keyed by family tag.  These exact
#: strings appear in error messages and in the CLI family listing.
CONDITION_LABELS = {
    "E42-i": "F = b''-b",
    "E42-ii": "F = b''-b",
    "S42-trig": "b''-b",
    "S42-hyp": "b''+b",
    "S42-curve-timelike": "b''-k*I[kb']-b",
    "S42-curve-spacelike": "b''-k*I[kb']+b",
}

_SCAN_SAMPLES = 512


def _pad(t_range: tuple[float, float]) -> float:
    """Margin added around the t-span so boundary stencils stay evaluable."""
    return 0.15 * (t_range[1] - t_range[0]) + 0.05


def _scan_condition(family: str, label: str, fn: Callable, t_range) -> None:
    """Raise InadmissibleFamily if ``fn`` vanishes anywhere on the t-span.

    Catches both near-zero samples and sign changes between samples; a
    crossing is refined by bisection so the report names the actual root.
    """
    ts = np.linspace(t_range[0], t_range[1], _SCAN_SAMPLES)
    vals = np.asarray(fn(ts), dtype=float)
    if vals.shape != ts.shape:
        vals = np.array([float(fn(float(t))) for t in ts])
    worst = int(np.argmin(np.abs(vals)))
    if abs(vals[worst]) <= CONDITION_TOL:
        raise InadmissibleFamily(family, label, ts[worst], vals[worst])
    crossings = np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]
    if crossings.size:
        i = int(crossings[0])
        lo, hi = float(ts[i]), float(ts[i + 1])
        flo = vals[i]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fmid = float(np.asarray(fn(mid), dtype=float))
            if flo * fmid <= 0.0:
                hi = mid
            else:
                lo, flo = mid, fmid
        root = 0.5 * (lo + hi)
        raise InadmissibleFamily(family, label, root, float(np.asarray(fn(root), dtype=float)))


def make_e42(
    kind: str,
    m: Callable,
    F: Callable,
    b_init: tuple[float, float],
    s_range: tuple[float, float],
    t_range: tuple[float, float],
    t0: float | None = None,
    ode_step: float = 1e-3,
) -> Immersion:
    """Flat-ambient family of kind "i" (spacelike null direction) or "ii"
    (timelike null direction).

    The profile b solves b'' - b = F from the initial data ``b_init`` at
    ``t0`` (default: left end of the t-span); F must be non-vanishing.  The
    chart is

        kind i:  (b s + J[m b'],  s sinh t + J[m cosh],  s cosh t + J[m sinh],  b s + J[m b'])
        kind ii: the middle two slots swapped,

    with J[g] the cumulative integral of g from t0.  The induced metric reads
    +/-(ds^2 - (s + m)^2 dt^2), so s + m(t) = 0 is a singular locus.
    """
    if kind not in ("i", "ii"):
        raise ValueError('kind must be "i" or "ii"')
    tag = f"E42-{kind}"
    if t0 is None:
        t0 = float(t_range[0])
    _scan_condition(tag, CONDITION_LABELS[tag], F, t_range)

    pad = _pad(t_range)
    grid = Grid1D(t_range[0] - pad, t_range[1] + pad, ode_step)
    b = solve_lode2(1, F, t0, float(b_init[0]), float(b_init[1]), grid)
    j_mdb = cumulative_integral(lambda t: m(t) * b.db(t), t0, grid)
    j_mcosh = cumulative_integral(lambda t: m(t) * np.cosh(t), t0, grid)
    j_msinh = cumulative_integral(lambda t: m(t) * np.sinh(t), t0, grid)

    def chart(s, t):
        s = np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        outer = b.b(t) * s + j_mdb(t)
        sinh_slot = s * np.sinh(t) + j_mcosh(t)
        cosh_slot = s * np.cosh(t) + j_msinh(t)
        if kind == "i":
            comps = (outer, sinh_slot, cosh_slot, outer)
        else:
            comps = (outer, cosh_slot, sinh_slot, outer)
        return np.stack(np.broadcast_arrays(*comps), axis=-1)

    locus = SingularLocus("s + m(t)", lambda s, t: s + m(t))
    return Immersion(
        chart=chart,
        form=SpaceForm(0),
        s_range=(float(s_range[0]), float(s_range[1])),
        t_range=(float(t_range[0]), float(t_range[1])),
        singular_loci=(locus,),
        name=tag,
    )


def make_s42_trig(
    b: Callable,
    s_range: tuple[float, float],
    t_range: tuple[float, float],
) -> Immersion:
    """Quadric family ruled by circular arcs:

        (b cos s, cos s sinh t, sin s, cos s cosh t, b cos s).

    Quasi-minimal exactly when b'' - b never vanishes; the chart excludes
    cos s = 0, where the rulings collapse.
    """
    tag = "S42-trig"
    _scan_condition(tag, CONDITION_LABELS[tag], lambda t: derivative2(b, t) - b(t), t_range)

    def chart(s, t):
        s = np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        cs = np.cos(s)
        outer = b(t) * cs
        comps = (outer, cs * np.sinh(t), np.sin(s), cs * np.cosh(t), outer)
        return np.stack(np.broadcast_arrays(*comps), axis=-1)

    locus = SingularLocus("cos s", lambda s, t: math.cos(s))
    return Immersion(
        chart=chart,
        form=SpaceForm(1),
        s_range=(float(s_range[0]), float(s_range[1])),
        t_range=(float(t_range[0]), float(t_range[1])),
        singular_loci=(locus,),
        name=tag,
    )


def make_s42_hyp(
    b: Callable,
    s_range: tuple[float, float],
    t_range: tuple[float, float],
) -> Immersion:
    """Quadric family ruled by hyperbolic arcs:

        (b cosh s, sinh s, cosh s cos t, cosh s sin t, b cosh s).

    Quasi-minimal exactly when b'' + b never vanishes.  The ruling factor
    cosh s has no zeros, so there is no singular locus.
    """
    tag = "S42-hyp"
    _scan_condition(tag, CONDITION_LABELS[tag], lambda t: derivative2(b, t) + b(t), t_range)

    def chart(s, t):
        s = np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        ch = np.cosh(s)
        outer = b(t) * ch
        comps = (outer, np.sinh(s), ch * np.cos(t), ch * np.sin(t), outer)
        return np.stack(np.broadcast_arrays(*comps), axis=-1)

    return Immersion(
        chart=chart,
        form=SpaceForm(1),
        s_range=(float(s_range[0]), float(s_range[1])),
        t_range=(float(t_range[0]), float(t_range[1])),
        singular_loci=(),
        name=tag,
    )


# --------------------------------------------------------------------------
# Curves on the Lorentzian unit sphere in 3-space of index 1


@dataclass(frozen=True)
class SphericalCurve:
    """A unit-speed curve on the Lorentzian unit sphere <x, x> = 1 in
    3-space of index 1, together with its Frenet data.

    ``kappa`` is the nonnegative curvature magnitude; ``normal`` is the unit
    normal in the sphere's tangent plane, spacelike for timelike curves and
    timelike for spacelike curves.  All callables are vectorized.
    """

    alpha: Callable
    kappa: Callable
    normal: Callable
    causal: str  # "timelike" | "spacelike"

    space = IndefiniteSpace(3, 1)


def frenet_apparatus(
    alpha: Callable,
    causal: str,
    t_range: tuple[float, float],
    samples: int = 257,
    arc_tol: float = 1e-6,
    sphere_tol: float = 1e-8,
    frenet_tol: float = 1e-6,
) -> SphericalCurve:
    """Derive Frenet data (curvature magnitude and unit normal) of a curve on
    the Lorentzian unit sphere by finite differences, validating the caller's
    declarations on a sample grid.

    The curve must satisfy <alpha, alpha> = 1 and <alpha', alpha'> = -1
    (timelike) or +1 (spacelike).  The acceleration relative to the sphere,
    alpha'' + alpha for spacelike curves and alpha'' - alpha for timelike
    ones, equals kappa * normal; the Frenet closure normal' = kappa * alpha'
    is verified as a residual.

    The derived callables carry finite-difference noise around 1e-9; curves
    feeding surface constructors should supply closed-form data instead (see
    :func:`timelike_circle` / :func:`spacelike_circle`).
    """
    if causal not in ("timelike", "spacelike"):
        raise ValueError('causal must be "timelike" or "spacelike"')
    space = SphericalCurve.space
    target = -1.0 if causal == "timelike" else 1.0
    sign = -1.0 if causal == "timelike" else 1.0  # kappa*N = alpha'' + sign*alpha

    ts = np.linspace(t_range[0], t_range[1], samples)
    a = np.asarray(alpha(ts), dtype=float)
    if a.shape != ts.shape + (3,):
        raise ValueError("alpha must map an array of shape (n,) to shape (n, 3)")
    sphere_res = np.max(np.abs(space.inner(a, a) - 1.0))
    if sphere_res > sphere_tol:
        raise OffQuadricError(
            f"curve leaves the unit Lorentz sphere (residual {sphere_res:.3e})"
        )

    da = derivative1(alpha, ts)
    speed2 = space.inner(da, da)
    if np.max(np.abs(speed2 - target)) > arc_tol:
        if np.max(np.abs(speed2 + target)) <= arc_tol:
            raise WrongCausalType(
                f"curve declared {causal} but its tangent has the opposite character"
            )
        raise NotArcLength(
            f"curve is not unit-speed: <alpha', alpha'> ranges over "
            f"[{speed2.min():.6g}, {speed2.max():.6g}], expected {target:+g}"
        )

    def accel(t):
        return derivative2(alpha, t) + sign * np.asarray(alpha(t), dtype=float)

    kn = accel(ts)
    q = space.inner(kn, kn)
    kappa_samples = np.sqrt(np.abs(q))
    if np.min(kappa_samples) <= 1e-6:
        raise VanishingCurvature(
            f"curvature magnitude drops to {np.min(kappa_samples):.3e}; "
            "the construction needs it non-vanishing"
        )
    # Normal character is forced by the Lorentzian tangent plane: spacelike
    # normal (q > 0) along timelike curves and vice versa.
    if causal == "timelike" and np.min(q) < 0:
        raise WrongCausalType("normal of a timelike curve must be spacelike")
    if causal == "spacelike" and np.max(q) > 0:
        raise WrongCausalType("normal of a spacelike curve must be timelike")

    def kappa(t):
        v = accel(t)
        q = space.inner(v, v)
        return np.sqrt(np.abs(q))

    def normal(t):
        v = accel(t)
        k = np.sqrt(np.abs(space.inner(v, v)))
        return v / np.asarray(k)[..., None]

    dn = derivative1(normal, ts)
    closure = np.max(np.linalg.norm(dn - kappa_samples[:, None] * da, axis=-1))
    if closure > frenet_tol:
        raise ValueError(
            f"Frenet closure normal' = kappa * alpha' fails (residual {closure:.3e})"
        )
    return SphericalCurve(alpha=alpha, kappa=kappa, normal=normal, causal=causal)


def timelike_circle(a: float) -> SphericalCurve:
    """Constant-curvature timelike circle on the Lorentz sphere:
    alpha = (a sinh(t/a), sqrt(1-a^2), a cosh(t/a)), 0 < a < 1, with
    kappa = sqrt(1-a^2)/a.  Frenet data is closed-form (no FD noise)."""
    a = float(a)
    if not 0.0 < a < 1.0:
        raise ValueError("timelike circle needs 0 < a < 1")
    bcoef = math.sqrt(1.0 - a * a)
    k = bcoef / a

    def alpha(t):
        tau = np.asarray(t, dtype=float) / a
        return np.stack(
            np.broadcast_arrays(a * np.sinh(tau), np.full_like(tau, bcoef), a * np.cosh(tau)),
            axis=-1,
        )

    def kappa(t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, k)
        return float(out) if out.ndim == 0 else out

    def normal(t):
        tau = np.asarray(t, dtype=float) / a
        return np.stack(
            np.broadcast_arrays(bcoef * np.sinh(tau), np.full_like(tau, -a), bcoef * np.cosh(tau)),
            axis=-1,
        )

    return SphericalCurve(alpha=alpha, kappa=kappa, normal=normal, causal="timelike")


def spacelike_circle(b: float) -> SphericalCurve:
    """Constant-curvature spacelike circle on the Lorentz sphere:
    alpha = (b, A cos(t/A), A sin(t/A)) with A = sqrt(1+b^2), b > 0, and
    kappa = b/A; the unit normal is timelike.  Closed-form Frenet data."""
    b = float(b)
    if b <= 0.0:
        raise ValueError("spacelike circle needs b > 0")
    a_coef = math.sqrt(1.0 + b * b)
    k = b / a_coef

    def alpha(t):
        tau = np.asarray(t, dtype=float) / a_coef
        return np.stack(
            np.broadcast_arrays(np.full_like(tau, b), a_coef * np.cos(tau), a_coef * np.sin(tau)),
            axis=-1,
        )

    def kappa(t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, k)
        return float(out) if out.ndim == 0 else out

    def normal(t):
        tau = np.asarray(t, dtype=float) / a_coef
        return np.stack(
            np.broadcast_arrays(np.full_like(tau, a_coef), b * np.cos(tau), b * np.sin(tau)),
            axis=-1,
        )

    return SphericalCurve(alpha=alpha, kappa=kappa, normal=normal, causal="spacelike")


def make_s42_curve(
    curve: SphericalCurve,
    b: Callable,
    s_range: tuple[float, float],
    t_range: tuple[float, float],
    eps_sign: int = 1,
    t0: float | None = None,
    ode_step: float = 1e-3,
) -> Immersion:
    """Quadric family swept from a unit-speed curve on the Lorentz sphere.

    With P = (b, alpha, b) and Q = (J[k b'], normal, J[k b']) (J the
    cumulative integral from t0, k the curve's curvature), the chart is

        timelike curve:  cos s * P + sin s * Q
        spacelike curve: cosh s * P + eps * sinh s * Q,   eps in {-1, +1},

    and lies on the unit quadric for any profile b.  Quasi-minimality needs
    b'' - k*J[k b'] -/+ b to be non-vanishing (sign by the curve's causal
    type); the ruling conformal factor (k sin s + cos s, respectively
    cosh s + eps*k sinh s) must not vanish and is tracked as a singular locus.
    """
    if eps_sign not in (-1, 1):
        raise ValueError("eps_sign must be -1 or +1")
    tag = f"S42-curve-{curve.causal}"
    if t0 is None:
        t0 = float(t_range[0])
    pad = _pad(t_range)
    grid = Grid1D(t_range[0] - pad, t_range[1] + pad, ode_step)
    j_kdb = cumulative_integral(lambda t: curve.kappa(t) * derivative1(b, t), t0, grid)

    cond_sign = -1.0 if curve.causal == "timelike" else 1.0

    def condition(t):
        return derivative2(b, t) - curve.kappa(t) * j_kdb(t) + cond_sign * b(t)

    _scan_condition(tag, CONDITION_LABELS[tag], condition, t_range)

    if curve.causal == "timelike":

        def chart(s, t):
            s = np.asarray(s, dtype=float)
            t = np.asarray(t, dtype=float)
            s, t = np.broadcast_arrays(s, t)
            a = curve.alpha(t)
            n = curve.normal(t)
            cs, sn = np.cos(s), np.sin(s)
            outer = cs * b(t) + sn * j_kdb(t)
            comps = (
                outer,
                cs * a[..., 0] + sn * n[..., 0],
                cs * a[..., 1] + sn * n[..., 1],
                cs * a[..., 2] + sn * n[..., 2],
                outer,
            )
            return np.stack(np.broadcast_arrays(*comps), axis=-1)

        locus = SingularLocus(
            "k(t) sin s + cos s",
            lambda s, t: float(curve.kappa(t)) * math.sin(s) + math.cos(s),
        )
    else:
        eps = float(eps_sign)

        def chart(s, t):
            s = np.asarray(s, dtype=float)
            t = np.asarray(t, dtype=float)
            s, t = np.broadcast_arrays(s, t)
            a = curve.alpha(t)
            n = curve.normal(t)
            ch, sh = np.cosh(s), eps * np.sinh(s)
            outer = ch * b(t) + sh * j_kdb(t)
            comps = (
                outer,
                ch * a[..., 0] + sh * n[..., 0],
                ch * a[..., 1] + sh * n[..., 1],
                ch * a[..., 2] + sh * n[..., 2],
                outer,
            )
            return np.stack(np.broadcast_arrays(*comps), axis=-1)

        locus = SingularLocus(
            "cosh s + eps*k(t) sinh s",
            lambda s, t: math.cosh(s) + eps * float(curve.kappa(t)) * math.sinh(s),
        )

    return Immersion(
        chart=chart,
        form=SpaceForm(1),
        s_range=(float(s_range[0]), float(s_range[1])),
        t_range=(float(t_range[0]), float(t_range[1])),
        singular_loci=(locus,),
        name=tag,
    )


# --------------------------------------------------------------------------
# Closed-form coefficient charts of the nullity foliation


@dataclass(frozen=True)
class ChartCoefficients:
    """Vectorized closed forms (phi, omega, gamma) on a canonical chart."""

    phi: Callable
    omega: Callable
    gamma: Callable
    eps_c: int


def coefficient_chart(
    c: int,
    eps: int,
    A: Callable,
    m: Callable,
    gamma0: Callable,
) -> ChartCoefficients:
    """Closed-form solutions of the structure equations

        phi_s = -phi * omega,   omega_s = omega^2 + eps*c,
        gamma_s = omega * gamma + omega_t / phi,

    for the three sign regimes of eps*c.  The flat block (c = 0) ignores
    ``eps`` and its gamma display assumes the gauge A == 1 whenever m is
    non-constant.  A, m, gamma0 must be vectorized callables of t.
    """
    if c not in (-1, 0, 1):
        raise ValueError("c must be -1, 0 or +1")
    if eps not in (-1, 1):
        raise ValueError("eps must be -1 or +1")
    ec = eps * c

    if c == 0:

        def phi(s, t):
            return A(t) * (s + m(t))

        def omega(s, t):
            return -1.0 / (s + np.asarray(m(t), dtype=float))

        def gamma(s, t):
            u = s + m(t)
            return gamma0(t) / u - derivative1(m, t) / (A(t) * u) ** 2

    elif ec == 1:

        def phi(s, t):
            return A(t) * np.cos(s + m(t))

        def omega(s, t):
            return np.tan(s + m(t))

        def gamma(s, t):
            u = s + m(t)
            return (gamma0(t) + np.tan(u) * derivative1(m, t) / A(t)) / np.cos(u)

    else:

        def phi(s, t):
            return A(t) * np.cosh(s + m(t))

        def omega(s, t):
            return -np.tanh(s + m(t))

        def gamma(s, t):
            u = s + m(t)
            return (gamma0(t) - np.tanh(u) * derivative1(m, t) / A(t)) / np.cosh(u)

    return ChartCoefficients(phi=phi, omega=omega, gamma=gamma, eps_c=ec)


_PDE_OFF = np.array([-2.0, -1.0, 1.0, 2.0])
_PDE_W = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0


def chart_pde_residuals(
    coeffs: ChartCoefficients,
    s_vals,
    t_vals,
    step: float = 1e-3,
) -> dict[str, float]:
    """Sup-norm residuals of the three structure equations over a grid.

    Derivatives of the closed forms are taken with fourth-order differences
    of absolute step ``step``; the grid must keep a 2*step margin inside the
    domain of validity of the chart functions.
    """
    s, t = np.meshgrid(np.asarray(s_vals, float), np.asarray(t_vals, float), indexing="ij")

    def d_s(fn):
        return sum(w * fn(s + o * step, t) for w, o in zip(_PDE_W, _PDE_OFF)) / step

    def d_t(fn):
        return sum(w * fn(s, t + o * step) for w, o in zip(_PDE_W, _PDE_OFF)) / step

    phi = coeffs.phi(s, t)
    omega = coeffs.omega(s, t)
    gamma = coeffs.gamma(s, t)
    r_phi = d_s(coeffs.phi) + phi * omega
    r_omega = d_s(coeffs.omega) - omega * omega - coeffs.eps_c
    r_gamma = d_s(coeffs.gamma) - omega * gamma - d_t(coeffs.omega) / phi
    return {
        "phi": float(np.max(np.abs(r_phi))),
        "omega": float(np.max(np.abs(r_omega))),
        "gamma": float(np.max(np.abs(r_gamma))),
    }
