"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature did not reach its tolerance within budget."""


class DivergenceError(ArithmeticError):
    """The requested integral is infinite for the given parameters."""
