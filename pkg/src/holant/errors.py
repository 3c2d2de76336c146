"""Exception types shared across the package."""


class HolantError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(HolantError, ValueError):
    """A construction invariant or operation precondition was violated."""


class ScopeError(ValidationError):
    """Scopes, domains, or partitions passed to an operation do not fit together."""


class EnumerationCapError(HolantError):
    """A configuration space is larger than the enumeration cap."""


class SingularBasisError(ValidationError):
    """A candidate basis matrix is singular or too ill-conditioned to invert."""


class ParseError(HolantError, ValueError):
    """An instance, basis, or report document could not be parsed."""
