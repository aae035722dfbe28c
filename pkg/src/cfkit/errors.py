"""Exception hierarchy shared by every cfkit module."""


class CFKitError(Exception):
    """Base class for all cfkit errors."""


class ParseError(CFKitError, ValueError):
    pass


class DomainError(CFKitError, ValueError):
    """A parameter lies outside the region where a formula is valid."""


class NumericError(CFKitError, ArithmeticError):
    """Poles, vanishing denominators, depth exhaustion."""


class PoleError(NumericError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class TerminatedError(NumericError):
    """A partial numerator vanished, so the continued fraction stops early."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConvergenceError(NumericError):
    pass


class LinearSystemError(CFKitError, ArithmeticError):
    pass


class InconsistentSystemError(LinearSystemError):
    pass


class NonUniqueSolutionError(LinearSystemError):
    def __init__(self, message, free_columns=()):
        super().__init__(message)
        self.free_columns = tuple(free_columns)


class TransformError(CFKitError, ValueError):
    pass


class UnsupportedEquationError(CFKitError):
    """No correction of rational type exists (logarithmic growth and the like)."""


class ExtensionFailedError(CFKitError):
    pass
