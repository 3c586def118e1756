"""Fixed-size linear algebra for pseudo-Euclidean inner products.

Scalar products here are indefinite: a space of dimension ``n`` and index
``s`` weighs the first ``s`` coordinates negatively,

    <u, v> = -u_1 v_1 - ... - u_s v_s + u_{s+1} v_{s+1} + ... + u_n v_n.

Timelike axes always come first.  Everything operates on plain numpy arrays;
the classes below only carry the signature around.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import DimensionMismatch, NullPlaneError

__all__ = [
    "CausalCharacter",
    "IndefiniteSpace",
    "kernel",
    "lightlike_partner",
]

#: Default relative tolerance used to call a number "zero" in causal tests
#: and rank decisions.
DEFAULT_TOL = 1e-8


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"


@dataclass(frozen=True)
class IndefiniteSpace:
    """A pseudo-Euclidean space R^dim with ``index`` timelike directions."""

    dim: int
    index: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if not 0 <= self.index <= self.dim:
            raise ValueError(f"index must lie in [0, {self.dim}], got {self.index}")

    @cached_property
    def signs(self) -> np.ndarray:
        """Diagonal of the metric: -1 on the first ``index`` axes, +1 after."""
        diag = np.ones(self.dim)
        diag[: self.index] = -1.0
        return diag

    def _check(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"expected {self.dim} components, got shape {v.shape}"
            )
        return v

    def inner(self, u, v):
        """Indefinite scalar product.  Broadcasts over leading axes."""
        u = self._check(u)
        v = self._check(v)
        out = np.sum(self.signs * u * v, axis=-1)
        return float(out) if out.ndim == 0 else out

    def norm2(self, v):
        """<v, v>; may be negative or zero."""
        return self.inner(v, v)

    def causal_character(self, v, tol: float = DEFAULT_TOL) -> CausalCharacter:
        """Classify ``v`` as spacelike / timelike / lightlike / zero.

        The zero test compares the largest component against ``tol``; the
        lightlike test compares <v, v> against ``tol`` times the Euclidean
        square of ``v``, so it is scale invariant.
        """
        v = self._check(v)
        if v.ndim != 1:
            raise DimensionMismatch("causal_character expects a single vector")
        if np.max(np.abs(v)) <= tol:
            return CausalCharacter.ZERO
        q = self.inner(v, v)
        if abs(q) <= tol * float(np.dot(v, v)):
            return CausalCharacter.LIGHTLIKE
        return CausalCharacter.TIMELIKE if q < 0 else CausalCharacter.SPACELIKE


def kernel(
    rows, dim: int | None = None, tol: float = DEFAULT_TOL, scale: float = 0.0
) -> np.ndarray:
    """Orthonormal basis (rows of the result) of the joint kernel of ``rows``.

    ``rows`` are coefficient rows of linear functionals on R^dim; the kernel
    is computed with an SVD, keeping right singular vectors whose singular
    value is at most ``tol`` times the largest one.  An empty row set returns
    the identity basis of R^dim (``dim`` is then required).

    ``scale`` sets an external magnitude floor: singular values are compared
    against ``tol * max(sigma_max, scale)``, so a row set that is pure noise
    relative to the problem's natural scale has full kernel rather than a
    noise-ranked one.

    Each basis vector is sign-normalized so its first nonzero component is
    positive, which keeps the output deterministic.
    """
    rows = [np.asarray(r, dtype=float) for r in rows]
    if not rows:
        if dim is None:
            raise ValueError("dim is required when the row set is empty")
        return np.eye(dim)
    a = np.vstack(rows)
    if dim is not None and a.shape[1] != dim:
        raise DimensionMismatch(f"rows have {a.shape[1]} columns, expected {dim}")
    _, sigma, vt = np.linalg.svd(a)
    floor = max(float(sigma[0]) if sigma.size else 0.0, float(scale))
    if floor == 0.0:
        rank = 0
    else:
        rank = int(np.sum(sigma > tol * floor))
    basis = vt[rank:]
    fixed = []
    for b in basis:
        lead = b[np.argmax(np.abs(b) > 1e-14)] if np.any(np.abs(b) > 1e-14) else 1.0
        fixed.append(b if lead >= 0 else -b)
    return np.array(fixed).reshape(-1, a.shape[1])


def lightlike_partner(
    n1,
    normal_basis,
    space: IndefiniteSpace,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """The unique lightlike p in span(normal_basis) with <n1, p> = -1.

    ``normal_basis`` must span a plane of signature (1, 1) containing the
    lightlike vector ``n1``.  Such a plane carries exactly two independent
    null directions; the one not parallel to ``n1`` is scaled so that it
    pairs to -1 with ``n1``.
    """
    n1 = space._check(np.asarray(n1, dtype=float))
    v1, v2 = (space._check(np.asarray(v, dtype=float)) for v in normal_basis)
    scale = float(np.dot(n1, n1))
    if scale == 0.0 or abs(space.inner(n1, n1)) > tol * scale:
        raise NullPlaneError("n1 is not lightlike within tolerance")

    # Null cone of the plane in (v1, v2) coordinates: z^T G z = 0 with G the
    # 2x2 Gram matrix.  Diagonalize G; indefiniteness gives the two null
    # directions sqrt(-lam2) q1 +/- sqrt(lam1) q2.
    gram = np.array(
        [
            [space.inner(v1, v1), space.inner(v1, v2)],
            [space.inner(v1, v2), space.inner(v2, v2)],
        ]
    )
    lam, q = np.linalg.eigh(gram)
    gscale = float(np.max(np.abs(gram)))
    if gscale == 0.0 or lam[0] > -tol * gscale or lam[1] < tol * gscale:
        raise NullPlaneError(
            "normal plane does not contain a second independent null direction"
        )
    d_plus = np.sqrt(lam[1]) * q[:, 0] + np.sqrt(-lam[0]) * q[:, 1]
    d_minus = np.sqrt(lam[1]) * q[:, 0] - np.sqrt(-lam[0]) * q[:, 1]
    candidates = [c[0] * v1 + c[1] * v2 for c in (d_plus, d_minus)]
    pairings = [space.inner(n1, w) for w in candidates]
    # The direction parallel to n1 pairs to ~0 with n1; keep the other one.
    w, pairing = max(zip(candidates, pairings), key=lambda t: abs(t[1]))
    if abs(pairing) <= tol * max(1.0, float(np.linalg.norm(w)) * float(np.linalg.norm(n1))):
        raise NullPlaneError("n1 pairs to zero with both null directions of the plane")
    p = -w / pairing
    if abs(space.inner(p, p)) > tol * max(1.0, float(np.dot(p, p))):
        raise NullPlaneError("constructed partner is not lightlike within tolerance")
    return p
