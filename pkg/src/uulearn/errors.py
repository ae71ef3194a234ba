"""Exception types shared across the library."""


class UULearnError(Exception):
    """Base class for every library-specific error."""


class InputDomainError(UULearnError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(UULearnError, ValueError):
    """Invalid hyperparameter, architecture, or experiment setting."""


class DegeneratePriorsError(ConfigurationError):
    """The two training priors coincide (or nearly so); the rewriting
    coefficients contain a 1/(theta - theta') factor and diverge."""


class InsufficientDataError(UULearnError, ValueError):
    """An estimator or metric was asked to operate on an empty sample."""


class CapacityError(UULearnError, ValueError):
    """A labeled pool cannot supply the requested number of examples of one
    class.  ``short_class`` is +1 or -1."""

    def __init__(self, message: str, short_class: int):
        super().__init__(message)
        self.short_class = short_class


class UndefinedMetricError(UULearnError, ValueError):
    """A metric is undefined for the given inputs (e.g. one class absent)."""


class UnsupportedOperationError(UULearnError, TypeError):
    """The operation is not defined for this variant (e.g. the gradient of a
    discontinuous loss)."""


class StaleCacheError(UULearnError, RuntimeError):
    """A forward cache was consumed after the model parameters changed."""


class TrainingFault(UULearnError, RuntimeError):
    """A non-finite value appeared in the objective, gradients, or
    parameters during training."""


class IdxFormatError(UULearnError, ValueError):
    """Malformed IDX file.  ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
