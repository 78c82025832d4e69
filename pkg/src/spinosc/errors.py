"""Exception types shared across the package."""


class SpinOscError(ValueError):
    """Base class for domain and invariant violations."""


class ConstraintError(SpinOscError):
    """A phase point violates the sphere constraint."""


class ChartError(SpinOscError):
    """An operation was requested outside its coordinate chart."""


class SpectrumError(SpinOscError):
    """Invalid quantum numbers, e.g. a lambda that is not a J-hat eigenvalue."""


class ConvergenceError(SpinOscError):
    """An iterative limit failed to settle within its iteration budget."""


class AdmissibilityError(SpinOscError):
    """A polygon transformation broke convexity."""
