"""Exception hierarchy shared across the package."""


class CayleyError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CayleyError, ValueError):
    """Input object violates a structural invariant.

    ``witness`` carries the offending element or set when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceededError(CayleyError):
    """Input is larger than a configured size cap."""


class HypothesisError(CayleyError):
    """A criterion-based routine was called outside its hypotheses.

    ``tag`` is a short machine-readable reason such as ``"disconnected"``.
    """

    def __init__(self, message, tag):
        super().__init__(message)
        self.tag = tag
