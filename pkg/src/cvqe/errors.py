"""Exception types shared across the package."""


class CvqeError(Exception):
    """Base class for all errors raised by cvqe."""


class DimensionMismatchError(CvqeError):
    """An input has the wrong length or shape for the object it is used with."""

    def __init__(self, what: str, expected, got):
        super().__init__(f"{what}: expected {expected}, got {got}")
        self.what = what
        self.expected = expected
        self.got = got


class SizeLimitError(CvqeError):
    """A dense 2**n vector would exceed the configured qubit limit."""


class InstanceFormatError(CvqeError):
    """An instance document cannot be parsed.

    ``location`` is a dotted path into the document, e.g. ``constraints[1].A``.
    """

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


class GenerationError(CvqeError):
    """The instance generator exhausted its retry budget."""


class MultiplierSignError(CvqeError):
    """A Lagrange multiplier vector has a negative entry."""
