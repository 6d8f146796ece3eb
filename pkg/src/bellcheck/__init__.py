"""Numerical and combinatorial checks of Bell-CHSH, hidden-variable and
Kochen-Specker arguments."""

from .errors import (
    BellCheckError,
    DimensionError,
    InstanceTooLargeError,
    ModelError,
    NotDichotomicError,
    NotHermitianError,
    UnboundAtomError,
    UnknownObservableError,
)

__version__ = "0.1.0"
