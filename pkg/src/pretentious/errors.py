"""Exception hierarchy shared by all modules."""


class PretentiousError(Exception):
    """Base class for library errors."""


class DomainError(PretentiousError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class DivergenceError(DomainError):
    """A Dirichlet series was requested outside its region of absolute convergence."""


class CoverageError(PretentiousError, KeyError):
    """Coefficient data was requested for a prime ideal the representation does not cover."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "coverage error"


class PoleError(DomainError):
    """Evaluation at (or numerically on top of) a pole."""


class NoContradictionError(DomainError):
    """The contradiction inequality cannot fail for the requested sigma constant."""


class ZeroTableParseError(PretentiousError, ValueError):
    """Malformed line in a zero-table file."""

    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno
