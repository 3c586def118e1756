"""Exception taxonomy shared by the geometry and certification layers."""


class QuasiminError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(QuasiminError):
    """A vector's component count does not match the ambient dimension."""


class SingularPointError(QuasiminError):
    """The induced metric degenerates (or nearly degenerates) at a chart point."""


class OffQuadricError(QuasiminError):
    """A point that should lie on the defining quadric of a curved space form does not."""


class NullPlaneError(QuasiminError):
    """A normal plane fails to carry the two independent lightlike directions
    needed to complete a null frame."""


class NotQuasiMinimal(QuasiminError):
    """The surface violates quasi-minimality at a point: the mean curvature
    vector is zero or fails to be lightlike, or the relative null space does
    not have dimension one."""


class DegenerateNullSpace(QuasiminError):
    """The relative null direction is lightlike, so no orthonormal tangent
    frame aligned with it exists."""


class InadmissibleFamily(QuasiminError):
    """A construction parameter violates the non-vanishing condition that the
    family needs in order to be quasi-minimal."""

    def __init__(self, family: str, condition: str, t: float, value: float):
        self.family = family
        self.condition = condition
        self.t = float(t)
        self.value = float(value)
        super().__init__(
            f"inadmissible family {family}: condition {condition} vanishes at "
            f"t={self.t:.6g} (value {self.value:.3e})"
        )


class VanishingCurvature(QuasiminError):
    """A generating curve has (numerically) vanishing geodesic curvature."""


class NotArcLength(QuasiminError):
    """A curve is not parametrized by arc length."""


class WrongCausalType(QuasiminError):
    """A curve's causal character does not match its declaration."""
