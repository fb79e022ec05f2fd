from typing import List, Optional, Sequence

import numpy as np


class BinarySlabError(Exception):
    """Base exception for all binary-slab related errors."""

    pass


class ConfigurationError(BinarySlabError):
    """Raised when there is an issue with configuration settings."""

    pass


class UnsupportedTypeError(BinarySlabError):
    """Raised when an unsupported type is requested from a factory."""

    pass


class InvalidInputError(BinarySlabError, ValueError):
    """Raised when an operation is called with inputs outside its domain."""

    pass


class ZeroAbsorptionError(BinarySlabError):
    """Raised when a quantity is only defined for nonzero absorption."""

    pass


class ConvergenceError(BinarySlabError):
    """
    Raised when an iterative procedure fails to reach its tolerance.

    Carries the last iterate and the residual history so callers can inspect
    how far the iteration got.
    """

    def __init__(
        self,
        message: str,
        last_iterate: Optional[np.ndarray] = None,
        residual_history: Optional[Sequence[float]] = None,
    ):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual_history: List[float] = list(residual_history or [])


class SingularBlockError(BinarySlabError):
    """Raised when a 2x2 coupling block of the LP sweep cannot be inverted."""

    def __init__(self, message: str, cell: int, direction: int, determinant: float):
        super().__init__(message)
        self.cell = cell
        self.direction = direction
        self.determinant = determinant

    def __reduce__(self):
        return (
            self.__class__,
            (self.args[0], self.cell, self.direction, self.determinant),
        )


class SolverError(BinarySlabError):
    """Raised when a model solve fails; records which model failed."""

    def __init__(self, message: str, model: str):
        super().__init__(f"[{model}] {message}")
        self.message = message
        self.model = model

    def __reduce__(self):
        return (self.__class__, (self.message, self.model))


class EnsembleError(BinarySlabError):
    """Raised when a realization inside an ensemble run fails."""

    def __init__(self, message: str, index: int):
        super().__init__(f"realization {index}: {message}")
        self.message = message
        self.index = index

    def __reduce__(self):
        return (self.__class__, (self.message, self.index))


class SerializationError(BinarySlabError):
    """Raised when run metadata cannot be serialized."""

    pass
