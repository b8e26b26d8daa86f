"""Exception and warning types raised across helix_lab."""


class HelixLabError(Exception):
    """Base class for all helix_lab errors."""


class PreconditionError(HelixLabError, ValueError):
    """An argument violates the documented precondition of an operation."""


class DegenerateRadius(PreconditionError):
    """A helix radius of zero collapses the helix onto its axis."""


class CoincidentHelices(PreconditionError):
    """A = B: the two helices coincide and the integrands are singular."""


class OrientationViolation(PreconditionError):
    """A screw must contain the axis, i.e. A < 0 < B."""


class NonFiniteIntegrand(HelixLabError, ArithmeticError):
    """The integrand returned inf/nan at a quadrature node."""


class ToleranceNotMet(UserWarning):
    """Quadrature refinement budget exhausted before reaching target_tol."""


class PoleHit(HelixLabError, ArithmeticError):
    """A meromorphic function was evaluated (numerically) on a pole."""


class PoleOnBoundary(PoleHit):
    """A contour passes too close to a pole of the integrand."""


class NewtonDiverged(HelixLabError, ArithmeticError):
    """Pole refinement did not converge within the iteration cap."""


class StripEscape(NewtonDiverged):
    """A Newton iterate left the strip that owns its seed."""


class BoundaryTooClose(HelixLabError, ArithmeticError):
    """Argument-principle integral is not close to an integer."""


class NoConvergence(HelixLabError, ArithmeticError):
    """Circular residue quadrature failed to settle; try a smaller radius."""


class DomainViolation(HelixLabError, ValueError):
    """An inverse trigonometric argument left its real domain."""


class NoBracket(HelixLabError, ValueError):
    """No sign change was found for a bracketing root solve."""

    def __init__(self, message, scanned=None):
        super().__init__(message)
        self.scanned = scanned or []


class WeakCouplingWarning(UserWarning):
    """omega*B is below the threshold where one pole per strip is guaranteed."""
