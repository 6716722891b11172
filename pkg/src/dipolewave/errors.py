"""Exception hierarchy shared by the library and the CLI."""


class DomainError(ValueError):
    """Parameter outside the domain of an operation (CLI exit code 2)."""


class ContractViolation(ValueError):
    """Input breaks a documented precondition (CLI exit code 2)."""


class NumericalError(ArithmeticError):
    """Numerical failure: non-finite values, instability (CLI exit code 3)."""


class DivergenceError(NumericalError):
    """A closed form diverges at the requested point (e.g. g2 at eta = 2)."""


class UndefinedCorrelationError(NumericalError):
    """Correlation requested where the detected flux vanishes."""
