"""Exception hierarchy shared across the package."""


class SpanlabError(Exception):
    """Base class for all package errors."""


class IdOutOfRangeError(SpanlabError):
    pass


class SelfLoopError(SpanlabError):
    pass


class DuplicateEdgeError(SpanlabError):
    pass


class NonPositiveWeightError(SpanlabError):
    pass


class ParseError(SpanlabError):
    """Malformed graph text.  Carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidStretchError(SpanlabError):
    pass


class NotSubgraphError(SpanlabError):
    pass


class DisconnectedError(SpanlabError):
    pass


class IsForestError(SpanlabError):
    pass


class NotACycleError(SpanlabError):
    pass


class MissingEdgeError(SpanlabError):
    pass


class TooLargeError(SpanlabError):
    """Instance exceeds the configured brute-force limit."""


class PreconditionViolatedError(SpanlabError):
    pass


class NotAWalkError(SpanlabError):
    pass


class InvalidChordError(SpanlabError):
    pass


class InvalidProbabilityError(SpanlabError):
    pass


class BadParamsError(SpanlabError):
    pass
