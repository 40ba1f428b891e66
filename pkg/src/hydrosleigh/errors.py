"""Exception types raised across the package."""


class HydroSleighError(Exception):
    """Base class for all errors raised by hydrosleigh."""


class InvalidSpecError(HydroSleighError, ValueError):
    """A body, fluid or constraint specification violates its invariants."""


class DegenerateTensorError(HydroSleighError, ValueError):
    """An inertia tensor that must be positive definite is not."""


class SingularTensorError(HydroSleighError, ValueError):
    """A tensor is too close to singular to invert."""


class ConstraintDegeneracyError(HydroSleighError, ValueError):
    """Constraint covectors are linearly dependent."""


class RegimeError(HydroSleighError, ValueError):
    """A quantity was requested outside the regime where it is defined."""


class PoleError(HydroSleighError, ValueError):
    """A special function was evaluated at one of its poles."""


class ConfigError(HydroSleighError, ValueError):
    """A scenario configuration is missing, conflicting or malformed."""


class IntegrationError(HydroSleighError, ArithmeticError):
    """The integrator produced a non-finite derivative.

    ``t`` and ``state`` hold the last sample that was still finite.
    """

    def __init__(self, message, t, state):
        super().__init__(message)
        self.t = t
        self.state = state
