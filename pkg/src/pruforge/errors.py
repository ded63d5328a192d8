"""Exception types. Monte Carlo failure is an outcome, not an exception."""


class PruforgeError(Exception):
    pass


class DomainError(PruforgeError, ValueError):
    """An argument lies outside the operation's mathematical domain."""


class ParameterError(PruforgeError, ValueError):
    """Generator parameters violate a regime requirement (e.g. the rigorous lambda bound)."""


class ResourceError(PruforgeError, MemoryError):
    """A request exceeds a configured size cap."""
