"""Exception types shared across the package.

Everything user-facing derives from ValueError (bad inputs) except
IntegrationError, which signals a runtime failure of the integrator itself.
The CLI maps the ValueError family to exit code 2.
"""


class ParameterError(ValueError):
    """Invalid parameter values or malformed array inputs."""


class RegimeError(ValueError):
    """An operation was applied outside the damping regime it is defined for."""


class OriginError(ValueError):
    """A phase-plane quantity was requested at the origin, where it is undefined."""


class SingularityError(ValueError):
    """An invariant was evaluated at a parameter value where it is singular."""


class ConventionError(ValueError):
    """The requested equation-of-motion convention cannot represent the parameters."""


class SamplingError(ValueError):
    """A sampled path is too coarse (or exactly ambiguous) for sheet tracking."""


class IntegrationError(RuntimeError):
    """Numerical integration produced a non-finite state."""
