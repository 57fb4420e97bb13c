"""Exception hierarchy shared across the package."""


class SieError(Exception):
    """Base class for all errors raised by chebsie."""


class OutOfDomainError(SieError, ValueError):
    """An argument lies outside the closed (or open) interval an operation accepts."""


class EvaluationError(SieError, ArithmeticError):
    """A user-supplied function produced a non-finite value at a quadrature node."""

    def __init__(self, message, *, where=None, node=None):
        super().__init__(message)
        self.where = where
        self.node = node


class ExprError(SieError):
    """Base class for expression language failures."""


class ExprSyntaxError(ExprError, ValueError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnboundNameError(ExprError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unbound name {self.name!r}"


class ExprDomainError(ExprError, ValueError):
    def __init__(self, function, value):
        self.function = function
        self.value = value
        super().__init__(f"{function}() argument out of domain: {value!r}")


class ProblemError(SieError, ValueError):
    """Invalid problem definition, builtin name or parameter."""


class ConfigError(ProblemError):
    """A problem configuration file could not be read or validated."""

    def __init__(self, message, *, path=None, offset=None):
        self.path = path
        self.offset = offset
        prefix = str(path) if path is not None else "<config>"
        if offset is not None:
            prefix += f":{offset}"
        super().__init__(f"{prefix}: {message}")


class ConsistencyError(SieError, ValueError):
    """The bounded-at-both-ends solution does not exist for the given right-hand side."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"solvability condition violated: residual = {residual!r}")
