"""Run configurations: JSON descriptions of a family, its parameter domain,
and the scalar data functions that feed the constructors.

A config file looks like::

    {
      "family": "S42-trig",
      "label": "trig example",
      "s_range": [0.4, 1.1],
      "t_range": [0.5, 1.5],
      "functions": {"b": {"kind": "poly", "coeffs": [0.0, 1.0]}}
    }

Scalar functions of t are small closed-form descriptors (``const``, ``poly``,
``sin``, ``cos``, ``sinh``, ``cosh``, ``exp``) optionally combined through
``sum`` / ``product`` containers up to two levels deep; a bare number is
shorthand for a constant.  Generating curves are named closed forms
(``timelike_circle`` / ``spacelike_circle``) so their Frenet data carries no
finite-difference noise into the charts.

Besides the six classified families, two deliberately non-quasi-minimal
control surfaces can be configured to demonstrate that certifications fail
when they should.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .families import (
    CONDITION_LABELS,
    SphericalCurve,
    make_e42,
    make_s42_curve,
    make_s42_hyp,
    make_s42_trig,
    spacelike_circle,
    timelike_circle,
)
from .immersion import Immersion
from .space_forms import SpaceForm

__all__ = [
    "FAMILY_TAGS",
    "CONTROL_TAGS",
    "RunConfig",
    "build_function",
    "build_curve",
    "load_config",
    "build_immersion",
]

FAMILY_TAGS = (
    "E42-i",
    "E42-ii",
    "S42-trig",
    "S42-hyp",
    "S42-curve-timelike",
    "S42-curve-spacelike",
)

CONTROL_TAGS = ("control-plane", "control-graph")

_REQUIRED_FUNCTIONS = {
    "E42-i": ("m", "F", "b_init"),
    "E42-ii": ("m", "F", "b_init"),
    "S42-trig": ("b",),
    "S42-hyp": ("b",),
    "S42-curve-timelike": ("curve", "b"),
    "S42-curve-spacelike": ("curve", "b"),
    "control-plane": (),
    "control-graph": (),
}


def build_function(desc, depth: int = 0) -> Callable:
    """Turn a scalar-function descriptor into a vectorized callable of t."""
    if isinstance(desc, (int, float)):
        value = float(desc)
        return lambda t: value + 0.0 * np.asarray(t, dtype=float)
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError(f"function descriptor must be a number or a dict with 'kind': {desc!r}")
    kind = desc["kind"]
    if kind in ("sum", "product"):
        if depth >= 2:
            raise ValueError("sum/product descriptors nest at most two levels deep")
        key = "terms" if kind == "sum" else "factors"
        parts = desc.get(key)
        if not isinstance(parts, list) or not parts:
            raise ValueError(f"'{kind}' descriptor needs a non-empty '{key}' list")
        fns = [build_function(p, depth + 1) for p in parts]
        if kind == "sum":
            return lambda t: sum(fn(t) for fn in fns)

        def product(t):
            out = fns[0](t)
            for fn in fns[1:]:
                out = out * fn(t)
            return out

        return product
    if kind == "const":
        value = float(desc["value"])
        return lambda t: value + 0.0 * np.asarray(t, dtype=float)
    if kind == "poly":
        coeffs = [float(c) for c in desc["coeffs"]]
        return lambda t: np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), coeffs)
    if kind in ("sin", "cos", "sinh", "cosh"):
        fn = getattr(np, kind)
        amp = float(desc.get("amplitude", 1.0))
        freq = float(desc.get("frequency", 1.0))
        phase = float(desc.get("phase", 0.0))
        return lambda t: amp * fn(freq * np.asarray(t, dtype=float) + phase)
    if kind == "exp":
        amp = float(desc.get("amplitude", 1.0))
        rate = float(desc.get("rate", 1.0))
        return lambda t: amp * np.exp(rate * np.asarray(t, dtype=float))
    raise ValueError(
        f"unknown function kind {kind!r}; expected one of const, poly, sin, cos, "
        "sinh, cosh, exp, sum, product"
    )


def build_curve(desc) -> SphericalCurve:
    """Turn a curve descriptor into a SphericalCurve with closed-form data."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError(f"curve descriptor must be a dict with 'kind': {desc!r}")
    kind = desc["kind"]
    if kind == "timelike_circle":
        return timelike_circle(float(desc["a"]))
    if kind == "spacelike_circle":
        return spacelike_circle(float(desc["b"]))
    raise ValueError(
        f"unknown curve kind {kind!r}; expected timelike_circle or spacelike_circle"
    )


def _pair(raw, name) -> tuple[float, float]:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ValueError(f"{name} must be a [lo, hi] pair")
    lo, hi = float(raw[0]), float(raw[1])
    if not lo < hi:
        raise ValueError(f"{name} must satisfy lo < hi, got [{lo}, {hi}]")
    return lo, hi


@dataclass
class RunConfig:
    """Validated contents of a run-configuration file."""

    family: str
    s_range: tuple[float, float]
    t_range: tuple[float, float]
    functions: dict = field(default_factory=dict)
    t0: float | None = None
    eps_sign: int = 1
    label: str = ""

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ValueError("config root must be a JSON object")
        family = raw.get("family")
        if family not in FAMILY_TAGS + CONTROL_TAGS:
            raise ValueError(
                f"unknown family {family!r}; expected one of "
                f"{', '.join(FAMILY_TAGS + CONTROL_TAGS)}"
            )
        functions = raw.get("functions", {})
        if not isinstance(functions, dict):
            raise ValueError("'functions' must be an object")
        missing = [k for k in _REQUIRED_FUNCTIONS[family] if k not in functions]
        if missing:
            raise ValueError(f"family {family} needs functions: {', '.join(missing)}")
        eps_sign = int(raw.get("eps_sign", 1))
        if eps_sign not in (-1, 1):
            raise ValueError("eps_sign must be -1 or +1")
        t0 = raw.get("t0")
        return cls(
            family=family,
            s_range=_pair(raw.get("s_range"), "s_range"),
            t_range=_pair(raw.get("t_range"), "t_range"),
            functions=functions,
            t0=None if t0 is None else float(t0),
            eps_sign=eps_sign,
            label=str(raw.get("label", "")),
        )

    def to_payload(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "s_range": [float(self.s_range[0]), float(self.s_range[1])],
            "t_range": [float(self.t_range[0]), float(self.t_range[1])],
            "t0": None if self.t0 is None else float(self.t0),
            "eps_sign": int(self.eps_sign),
        }


def load_config(path) -> RunConfig:
    with open(Path(path), "r", encoding="utf-8") as fh:
        return RunConfig.from_dict(json.load(fh))


def _control_immersion(cfg: RunConfig) -> Immersion:
    if cfg.family == "control-plane":
        # Totally geodesic spacelike plane: H = 0, so not quasi-minimal.
        def chart(s, t):
            s = np.asarray(s, dtype=float)
            t = np.asarray(t, dtype=float)
            z = np.zeros(np.broadcast_shapes(s.shape, t.shape))
            return np.stack(np.broadcast_arrays(z, z, s, t), axis=-1)

    else:
        # Graph surface with trivial relative null space (dimension zero).
        def chart(s, t):
            s = np.asarray(s, dtype=float)
            t = np.asarray(t, dtype=float)
            z = np.zeros(np.broadcast_shapes(s.shape, t.shape))
            return np.stack(np.broadcast_arrays(z, s * t, s, t), axis=-1)

    return Immersion(
        chart=chart,
        form=SpaceForm(0),
        s_range=cfg.s_range,
        t_range=cfg.t_range,
        singular_loci=(),
        name=cfg.family,
    )


def build_immersion(cfg: RunConfig) -> Immersion:
    """Construct the immersion a config describes.  Raises
    InadmissibleFamily if the non-vanishing condition fails on the domain."""
    fns = cfg.functions
    if cfg.family in CONTROL_TAGS:
        return _control_immersion(cfg)
    if cfg.family in ("E42-i", "E42-ii"):
        b_init = fns["b_init"]
        if not isinstance(b_init, (list, tuple)) or len(b_init) != 2:
            raise ValueError("b_init must be a [b(t0), b'(t0)] pair")
        return make_e42(
            kind=cfg.family.split("-")[1],
            m=build_function(fns["m"]),
            F=build_function(fns["F"]),
            b_init=(float(b_init[0]), float(b_init[1])),
            s_range=cfg.s_range,
            t_range=cfg.t_range,
            t0=cfg.t0,
        )
    if cfg.family == "S42-trig":
        return make_s42_trig(build_function(fns["b"]), cfg.s_range, cfg.t_range)
    if cfg.family == "S42-hyp":
        return make_s42_hyp(build_function(fns["b"]), cfg.s_range, cfg.t_range)
    # Curve-swept families.
    curve = build_curve(fns["curve"])
    expected = "timelike" if cfg.family.endswith("timelike") else "spacelike"
    if curve.causal != expected:
        raise ValueError(
            f"family {cfg.family} needs a {expected} generating curve, "
            f"got a {curve.causal} one"
        )
    return make_s42_curve(
        curve=curve,
        b=build_function(fns["b"]),
        s_range=cfg.s_range,
        t_range=cfg.t_range,
        eps_sign=cfg.eps_sign,
        t0=cfg.t0,
    )


def describe_families() -> list[dict]:
    """Rows for the CLI family listing."""
    ambient = {
        "E42-i": "flat neutral 4-space",
        "E42-ii": "flat neutral 4-space",
        "S42-trig": "unit quadric in neutral 5-space",
        "S42-hyp": "unit quadric in neutral 5-space",
        "S42-curve-timelike": "unit quadric in neutral 5-space",
        "S42-curve-spacelike": "unit quadric in neutral 5-space",
    }
    rows = [
        {
            "family": tag,
            "ambient": ambient[tag],
            "condition": CONDITION_LABELS[tag],
            "functions": ", ".join(_REQUIRED_FUNCTIONS[tag]),
        }
        for tag in FAMILY_TAGS
    ]
    for tag in CONTROL_TAGS:
        rows.append(
            {
                "family": tag,
                "ambient": "flat neutral 4-space",
                "condition": "none (control surface, certifications must fail)",
                "functions": "",
            }
        )
    return rows
