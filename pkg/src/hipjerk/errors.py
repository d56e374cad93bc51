"""Exception and warning types shared across the package."""


class HipJerkError(Exception):
    """Base class for all errors raised by hipjerk."""


class InvalidInput(HipJerkError, ValueError):
    pass


class NotSkew(HipJerkError, ValueError):
    pass


class NotRotation(HipJerkError, ValueError):
    pass


class TooShort(HipJerkError, ValueError):
    pass


class DegeneratePath(HipJerkError, ValueError):
    """The accumulated path length is too small to normalize the jerk index."""


class InvalidRecord(HipJerkError, ValueError):
    pass


class FormatError(HipJerkError, ValueError):
    """A session file could not be parsed. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AcquisitionError(HipJerkError):
    pass


class BindError(AcquisitionError, OSError):
    pass


class EmptyAcquisition(AcquisitionError):
    """No datagram arrived before the listening timeout."""


class SendError(HipJerkError, OSError):
    def __init__(self, message, sent=0):
        self.sent = sent
        super().__init__(f"{message} (records sent before failure: {sent})")


class AmbiguousStepWarning(UserWarning):
    """A relative rotation of exactly pi was met; the logarithm used its tie-break."""
