"""Exception types raised across the package."""


class HypermatchError(ValueError):
    """Base class for all package errors."""


class InvalidArgument(HypermatchError):
    pass


class DegenerateInput(HypermatchError):
    """The partition search cannot proceed: no seed set or no reliable vertex."""


class RegimeViolation(HypermatchError):
    """The matching-extraction loop left the regime where its invariants hold.

    ``partial`` carries the edges removed so far, for diagnostics.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class ResourceLimit(HypermatchError):
    pass


class GenerationFailure(HypermatchError):
    pass


class ParseError(HypermatchError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
