"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class DesignFormatError(ValueError):
    """A design file violates the on-disk format; message names the line."""


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured cap.

    ``estimate`` carries the size the enumeration would have had.
    """

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


class RefusalBudgetError(RuntimeError):
    """Too many trials were refused for the experiment to be meaningful."""
