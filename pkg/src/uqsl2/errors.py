"""Exception taxonomy shared across the package.

Every error raised on purpose by this package is one of the classes below,
so callers (and the CLI) can map failures to exit codes without string
matching.
"""


class UQSL2Error(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedParameterError(UQSL2Error):
    """A context parameter outside the supported family (e.g. 4 does not divide n)."""


class InvalidArgumentError(UQSL2Error):
    """An argument outside its documented range (bad label, bad index, bad string)."""


class ContextMismatchError(UQSL2Error):
    """Two objects built over different contexts were combined."""


class DivisionByZeroError(UQSL2Error):
    """Inversion or division by the zero scalar."""


class ConstructionError(UQSL2Error):
    """An internal construction failed an assertion it is contracted to satisfy."""


class EigendataError(UQSL2Error):
    """Eigenvalue data that does not extend to a character of the grouplike part."""


class RepresentationError(UQSL2Error):
    """A matrix tuple that is not a module over the algebra (a relation fails)."""
