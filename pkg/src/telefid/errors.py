"""Exception types shared across the toolkit."""


class TelefidError(Exception):
    """Base class for all telefid errors."""


class NonHermitian(TelefidError):
    pass


class TraceNotOne(TelefidError):
    pass


class NotPositive(TelefidError):
    """Matrix has a negative eigenvalue; carries the worst offender."""

    def __init__(self, message, worst_eigenvalue=None):
        super().__init__(message)
        self.worst_eigenvalue = worst_eigenvalue


class OutOfRange(TelefidError):
    pass


class MismatchedProperty(TelefidError):
    pass


class NotEntangled(TelefidError):
    pass


class PreconditionFailed(TelefidError):
    pass


class DesignTooWeak(TelefidError):
    pass


class StateFormatError(TelefidError):
    """A state file or JSON payload could not be parsed."""
