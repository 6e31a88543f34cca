class GapLabError(Exception):
    """Base class of every error gaplab raises on purpose."""
    exit_code = 2


class DomainError(GapLabError, ValueError):
    """Invalid parameters or an evaluation outside a function's domain."""
    exit_code = 1


class PreconditionError(GapLabError, ValueError):
    """A hypothesis of the check being run does not hold."""
    exit_code = 1


class ConvergenceError(GapLabError, RuntimeError):
    def __init__(self, message, **diagnostics):
        self.message = message
        self.diagnostics = diagnostics
        super().__init__(str(self))

    def __str__(self):
        if not self.diagnostics:
            return self.message
        details = ', '.join(f'{k}={v!r}'
                            for k, v in sorted(self.diagnostics.items()))
        return f"{self.message} ({details})"


class InconsistencyError(ConvergenceError):
    """Two independent computations of the same quantity disagree."""


class PropertyViolation(GapLabError, RuntimeError):
    def __init__(self, prop, message):
        self.prop = prop
        self.message = message
        super().__init__(str(self))

    def __str__(self):
        return f"{self.prop}: {self.message}"
