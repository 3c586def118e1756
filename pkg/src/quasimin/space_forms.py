"""Ambient space forms of constant curvature c in {-1, 0, +1}.

The flat model is the neutral pseudo-Euclidean space of dimension 4 and
index 2.  The curved models are unit quadrics inside a flat space one
dimension up: <x, x> = +1 (curvature +1, ambient index 2) and <x, x> = -1
(curvature -1, ambient index 3).  Surfaces in a curved model are handled
through their composition with the inclusion, so all differentiation happens
in the flat ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import OffQuadricError
from .linalg import IndefiniteSpace

__all__ = ["SpaceForm", "AmbientPoint", "intrinsic_second_fundamental_form"]

#: Default tolerance for membership in the defining quadric.
ON_FORM_TOL = 1e-9


@dataclass(frozen=True)
class SpaceForm:
    """A 4-dimensional space form of curvature ``c`` and neutral signature."""

    c: int

    def __post_init__(self):
        if self.c not in (-1, 0, 1):
            raise ValueError("curvature c must be -1, 0 or +1")

    @cached_property
    def ambient(self) -> IndefiniteSpace:
        """Flat space the model lives in (equals the model itself for c=0)."""
        if self.c == 0:
            return IndefiniteSpace(dim=4, index=2)
        if self.c == 1:
            return IndefiniteSpace(dim=5, index=2)
        return IndefiniteSpace(dim=5, index=3)

    @property
    def quadric_value(self) -> float:
        """Target of <x, x> on the quadric; meaningless for c=0."""
        return float(self.c)

    def on_form(self, x, tol: float = ON_FORM_TOL) -> bool:
        """Whether ``x`` lies on the model (always true in the flat case)."""
        if self.c == 0:
            return np.asarray(x, dtype=float).shape[-1] == 4
        return bool(abs(self.ambient.inner(x, x) - self.quadric_value) <= tol)

    def form_residual(self, x) -> float:
        """|<x, x> - c| for curved models, 0.0 for the flat one."""
        if self.c == 0:
            return 0.0
        return abs(float(self.ambient.inner(x, x)) - self.quadric_value)


@dataclass(frozen=True)
class AmbientPoint:
    """A validated point of a space form, stored in ambient coordinates."""

    coords: np.ndarray
    form: SpaceForm

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", coords)
        residual = self.form.form_residual(coords)
        if residual > ON_FORM_TOL:
            raise OffQuadricError(
                f"point is off the c={self.form.c} quadric by {residual:.3e}"
            )


def intrinsic_second_fundamental_form(alpha_hat, g_xy: float, fhat: AmbientPoint):
    """Second fundamental form of a surface *in the space form*, from the
    second fundamental form of its composition with the inclusion.

    For a curved model the composed immersion picks up a -g(X,Y) * position
    term along the quadric normal, so the intrinsic value is

        alpha(X, Y) = alpha_hat(X, Y) + c * g(X, Y) * fhat.

    With c = 0 the input is returned unchanged.
    """
    alpha_hat = np.asarray(alpha_hat, dtype=float)
    c = fhat.form.c
    if c == 0:
        return alpha_hat
    return alpha_hat + c * float(g_xy) * fhat.coords
