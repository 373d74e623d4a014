"""Exception hierarchy shared by all lspec modules."""


class LSpecError(Exception):
    """Base class for every error raised by lspec."""


class DomainError(LSpecError, ValueError):
    """An argument lies outside the domain of the requested function."""


class PoleError(DomainError):
    """Evaluation at (or numerically at) a pole."""


class SingularMatrixError(DomainError):
    """An L-matrix fails the regularity condition."""


class ConvergenceError(LSpecError, ArithmeticError):
    """A series or iteration does not converge."""


class BudgetExceededError(ConvergenceError):
    """The term or iteration budget was exhausted before convergence."""


class BracketError(LSpecError, ArithmeticError):
    """A root could not be bracketed."""
