"""Exception hierarchy shared by every module of the package."""


class DyngalError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class NonExactDivision(DyngalError, ArithmeticError):
    pass


class NotSquarefree(DyngalError, ArithmeticError):
    pass


class DegreeMismatch(DyngalError, ValueError):
    pass


class NotASubgroup(DyngalError, ValueError):
    pass


class NotInGroup(DyngalError, ValueError):
    pass


class IndexLimitExceeded(DyngalError):
    pass


class BudgetExceeded(DyngalError):
    pass


class NotInWreathGroup(DyngalError, ValueError):
    pass


class IndexOutOfRange(DyngalError, IndexError):
    pass


class NotADivisor(DyngalError, ValueError):
    pass


class InvalidCharacter(DyngalError, ValueError):
    pass


class InvalidParameters(DyngalError, ValueError):
    pass


class ParseError(DyngalError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(DyngalError):
    pass


class AmbiguousInertia(DyngalError):
    pass


class UnsupportedN(DyngalError, ValueError):
    pass


class NonIntegralGenus(DyngalError, ArithmeticError):
    pass


class NonIntegralCount(DyngalError, ArithmeticError):
    pass


class MissingPatternSet(DyngalError, LookupError):
    pass
