"""Exception types shared across the package."""


class InscribedEllipseError(Exception):
    """Base class for all library-specific errors."""


class Degenerate(InscribedEllipseError):
    """Repeated vertices, non-finite coordinates, or three collinear vertices."""


class NotConvex(InscribedEllipseError):
    """The four points do not form a strictly convex quadrilateral."""


class Trapezoid(InscribedEllipseError):
    """A pair of opposite sides is parallel (includes parallelograms)."""


class NoValidLabeling(InscribedEllipseError):
    """No dihedral labeling satisfies the canonical-pose constraints."""


class HOutOfRange(InscribedEllipseError):
    """Center abscissa lies outside the open admissible interval."""


class NotAnEllipse(InscribedEllipseError):
    """Conic coefficients do not describe a nondegenerate real ellipse."""


class NotOnConic(InscribedEllipseError):
    """Point does not satisfy the conic equation within tolerance."""


class SingularPoint(InscribedEllipseError):
    """Conic gradient vanishes at the point; no tangent direction exists."""


class CircularPoint(InscribedEllipseError):
    """Family member is circular here; the analytic slope formula degenerates."""


class NotType1(InscribedEllipseError):
    """Closed form requires a type-1 midpoint-diagonal quadrilateral."""


class NotTangential(InscribedEllipseError):
    """Operation requires a tangential quadrilateral."""
