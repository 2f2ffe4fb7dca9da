"""Exception and warning types shared across the package."""


class OptoFloquetError(Exception):
    """Base class for all library errors."""


class NonIntegerRatio(OptoFloquetError):
    """nu0/omega is not an integer, so no stable periodic solution exists."""


class DriveTooStrong(OptoFloquetError):
    """|eps| exceeds the validity limit of the first-order drive expansion."""


class DegenerateOrder(OptoFloquetError):
    """n = 1 with eps != 0: the 1/(n-1) solution coefficient diverges."""


class StepFailure(OptoFloquetError):
    """An adaptive integrator could not meet its local error tolerance."""


class DimensionMismatch(OptoFloquetError):
    """Operands live on incompatible Hilbert spaces."""


class StateValidationError(OptoFloquetError):
    """A density matrix failed a hermiticity/trace/positivity check."""


class PositivityLoss(OptoFloquetError):
    """Evolved state developed a significantly negative eigenvalue
    (usually a sign that the Fock truncation is too small)."""


class InsufficientSpan(OptoFloquetError):
    """Trajectory does not cover the requested averaging window."""


class IndexOutOfTruncation(OptoFloquetError):
    """Damping-basis index does not fit in the truncated Fock space."""


class Heating(OptoFloquetError):
    """Net heating regime: the linear covariance dynamics diverge."""


class InvalidTrace(OptoFloquetError):
    """Covariance trace below the Heisenberg bound."""


class ConfigError(OptoFloquetError):
    """Scenario file is malformed; the message names the offending key."""


class DriveWarning(UserWarning):
    """Drive strength is large enough that first-order results degrade."""


class AdiabaticWarning(UserWarning):
    """A formula is evaluated outside its slow-modulation validity regime."""
