"""Exception hierarchy.

``ParseError`` marks malformed input; every other ``EllfibError`` is a
mathematical rejection.  The command line maps the two to exit codes 2 and 1.
"""


class EllfibError(Exception):
    """Base class for all library errors."""


class ParseError(EllfibError):
    """Malformed input text or file."""


class RejectionError(EllfibError):
    """Input is well formed but mathematically unacceptable."""


class FieldError(RejectionError):
    pass


class SingularModelError(RejectionError):
    """The Weierstrass model has vanishing discriminant."""


class NonReducedFiberError(RejectionError):
    pass


class NotIsolatedError(RejectionError):
    pass


class AmbiguityError(RejectionError):
    pass


class InconsistencyError(EllfibError):
    """An internal consistency check failed; indicates a bug or a bad premise."""
