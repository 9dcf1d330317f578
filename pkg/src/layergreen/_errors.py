"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of the operation."""


class BranchCutError(DomainError):
    """Argument sits on (or within tolerance of) a branch cut."""


class CoincidentPointsError(DomainError):
    """Field point and source point coincide."""


class InterfacePlacementError(DomainError):
    """A point was placed on the interface x2 = 0, where the kernels are not defined."""


class LateralDirectionError(DomainError):
    """Observation direction lies along the interface (theta in {0, pi, 2*pi})."""


class StripViolationError(DomainError):
    """Complex argument left the analyticity strip of the saddle change of variables."""


class HypothesisError(DomainError):
    """Geometric hypotheses of the saddle decomposition are violated."""


class PoleError(DomainError):
    """Evaluation at a pole of the function."""


class AccuracyError(ValueError):
    """Requested point is outside the validated accuracy range."""


class ConvergenceError(RuntimeError):
    """Quadrature failed to meet the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
