"""Exception hierarchy shared by all solver modules."""


class UOTError(Exception):
    """Base class for every error raised by this package."""


class InstanceError(UOTError, ValueError):
    """The raw problem data cannot be turned into a valid instance."""


class InfeasibleError(InstanceError):
    """Total supply exceeds total demand."""


class CapacityError(InstanceError):
    """Intermediate values could overflow the requested integer width."""


class EncodingError(UOTError, ValueError):
    """A positional encoding violates ordering or range constraints."""


class FlowError(UOTError, ValueError):
    """A flow is infeasible, crossing, or has a hole where one is not allowed."""


class OracleGuardError(UOTError):
    """The instance is too large for the brute-force oracle."""


class SolverConsistencyError(UOTError, RuntimeError):
    """Two internal routes disagree on a value that must match exactly."""
