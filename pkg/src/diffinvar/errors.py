"""Exception types shared across the toolkit."""


class DiffAlgError(Exception):
    """Base class for every error raised by this package."""


class ConstantPolynomial(DiffAlgError):
    pass


class ZeroPolynomial(DiffAlgError):
    pass


class NotNondifferential(DiffAlgError):
    pass


class OrderTooHigh(DiffAlgError):
    pass


class MissingAssignment(DiffAlgError):
    pass


class NothingToReduce(DiffAlgError):
    pass


class NotApplicable(DiffAlgError):
    pass


class NoTarget(DiffAlgError):
    pass


class AssumptionUnverified(DiffAlgError):
    pass


class PreconditionViolated(DiffAlgError):
    pass


class ResourceExceeded(DiffAlgError):
    """A Gröbner or bound computation hit its configured budget."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class SpecSyntaxError(DiffAlgError):
    def __init__(self, line, col, message):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class UndeclaredVariable(DiffAlgError):
    pass
