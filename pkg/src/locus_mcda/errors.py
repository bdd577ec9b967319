"""Exception types shared across the package."""


class McdaError(Exception):
    """Base class for every error this package raises on purpose."""


class ValidationError(McdaError):
    """A domain object or argument violates one of its invariants."""


class ParseError(McdaError):
    """An input file could not be parsed.

    Messages name the offending file and, where applicable, the row and
    column, so CLI users can fix the input without reading a traceback.
    """
