"""Exception types shared across the package."""


class FKError(Exception):
    """Base class for all errors raised by this package."""


class ConstructionError(FKError):
    """A root system or other structure cannot be built from the given data."""


class DomainError(FKError):
    """An input violates a mathematical precondition (non-dominant weight, ...)."""


class UnsupportedGroupError(FKError):
    """The requested operation is not defined for this group/family."""


class RankCapError(FKError):
    """A Weyl-group search was refused because the rank exceeds the cap."""


class CapOverflowError(FKError):
    """A divided-power operation produced a term above the degree cap."""


class UndecidableError(FKError):
    """Descriptor membership cannot be decided for this coordinate kind."""


class RegistryError(FKError):
    """A first-kernel support registry file is malformed or inconsistent."""


class LeviSearchError(FKError):
    """No Weyl conjugate of the given root set is a Levi subsystem."""


class InvariantError(FKError):
    """An internal invariant failed; indicates a bug, not bad input."""
