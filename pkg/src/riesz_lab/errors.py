"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid parameters or malformed input data."""


class NumericalError(RuntimeError):
    """A computation could not be carried out reliably."""


class SingularGramError(NumericalError):
    """Gram factorisation failed; a positive ridge is needed."""

    def __init__(self, message, suggested_ridge=None):
        super().__init__(message)
        self.suggested_ridge = suggested_ridge
