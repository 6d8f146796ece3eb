"""Exception hierarchy shared by every bellcheck module."""


class BellCheckError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(BellCheckError, ValueError):
    pass


class NotHermitianError(BellCheckError, ValueError):
    pass


class NotDichotomicError(BellCheckError, ValueError):
    pass


class UnknownObservableError(BellCheckError, KeyError):
    pass


class ModelError(BellCheckError, ValueError):
    """A hidden-variable model violates one of its structural invariants."""


class InstanceTooLargeError(BellCheckError, ValueError):
    pass


class UnboundAtomError(BellCheckError, KeyError):
    pass
