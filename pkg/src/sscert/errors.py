"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all sscert errors."""


class DomainError(Error):
    """A precondition on operation inputs was violated."""


class RankError(Error):
    """Basis columns are linearly dependent."""


class CapacityError(Error):
    """Input exceeds a desk-scale enumeration or solver cap."""


class GenerationError(Error):
    """Instance resampling hit its retry cap."""


class RelaxationInfeasibleError(Error):
    """The LP relaxation itself is empty (right-hand side out of range)."""

    def __init__(self, beta, l1_norm):
        super().__init__(f"right-hand side {beta} outside [0, {l1_norm}]")
        self.beta = beta
        self.l1_norm = l1_norm


class InvariantViolation(Error):
    """A guaranteed internal invariant failed; indicates a bug."""


class ParseError(Error):
    """A document could not be parsed; carries a location string."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)


class MixedSignDirectionWarning(UserWarning):
    """Reduction produced a direction with mixed signs, unusable for branching."""
