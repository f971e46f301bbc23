"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller passed arguments outside an operation's precondition."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """A floating-point routine failed to converge or diverged."""


class InternalError(RuntimeError):
    """Two independent computation routes disagreed; indicates a bug."""
