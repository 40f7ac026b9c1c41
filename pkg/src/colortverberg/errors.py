"""Exception types shared across the toolkit."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured state-space cap."""


class InstanceError(ValueError):
    """Malformed or inconsistent problem instance."""


class PreconditionError(ValueError):
    """Inputs violate the hypotheses an operation requires."""


class MatchingError(RuntimeError):
    """The matching procedure reached a state its hypotheses rule out."""
