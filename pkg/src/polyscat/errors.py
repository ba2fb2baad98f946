"""Exception types shared across the toolkit."""


class PolyscatError(Exception):
    """Base class for all toolkit errors."""


# --- geometry ---------------------------------------------------------------
class SelfIntersecting(PolyscatError):
    """Polygon boundary crosses itself."""


class DegenerateEdge(PolyscatError):
    """Polygon has a zero-length edge."""


class SeedInsideScatterer(PolyscatError):
    """Line-component seed lies inside or on the obstacle."""


# --- special functions ------------------------------------------------------
class NegativeOrder(PolyscatError):
    """Bessel order must be a non-negative integer."""


class NonpositiveArgument(PolyscatError):
    """Argument must be strictly positive."""


# --- solver -----------------------------------------------------------------
class FreeCellsUnsupported(PolyscatError):
    """Solver handles solid polygons only; crack cells are rejected."""


class ResolutionTooLow(PolyscatError):
    """Fewer quadrature nodes per wavelength than the solver accepts."""


class SingularSystem(PolyscatError):
    """Boundary system could not be solved to the required residual."""

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class PointInsideScatterer(PolyscatError):
    """Field evaluation requested inside the obstacle."""


class TooCloseToBoundary(PolyscatError):
    """Field evaluation requested below the near-boundary guard distance."""


# --- oracle -----------------------------------------------------------------
class KaTooLarge(PolyscatError):
    """Disk series requested outside its validated truncation range."""


class PointInsideDisk(PolyscatError):
    """Disk total-field evaluation requested inside the disk."""


# --- nodal ------------------------------------------------------------------
class ResolutionTooCoarse(PolyscatError):
    """Grid spacing exceeds the lambda/20 sampling floor."""


class DisconnectedAdjacency(PolyscatError):
    """Regular-portion adjacency graph is not connected."""

    def __init__(self, message, components=None):
        super().__init__(message)
        self.components = components or []


# --- hidden path ------------------------------------------------------------
class NoRegularBoundaryPoint(PolyscatError):
    """No boundary cell candidate has a usable normal derivative."""


class TargetOnCriticalPoint(PolyscatError):
    """Requested path target sits on a detected nodal critical point."""


class NoRouteToInfinity(PolyscatError):
    """Path routing could not reach the escape radius inside the window."""


class StartInvalid(PolyscatError):
    """Path start point fails the boundary/normal requirements."""


class WindowTooSmall(PolyscatError):
    """Reflection check window cannot contain the required region."""
