from typing import Iterable

from expression_dsl.types import exception_reasons


class DarbouxError(Exception):
    """Root of every error raised by the solver packages."""


class ExpressionError(DarbouxError):
    pass


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, found: str, offset: int, expected: Iterable[str]):
        self.found = found
        self.offset = offset
        self.expected = tuple(expected)
        super().__init__(
            exception_reasons.UnexpectedToken.format(
                found=found, offset=offset, expected=", ".join(self.expected)
            )
        )


class UnknownFunctionError(ExpressionError):
    def __init__(self, name: str, offset: int, available: Iterable[str]):
        self.name = name
        self.offset = offset
        super().__init__(
            exception_reasons.UnknownFunction.format(
                name=name, offset=offset, available=", ".join(available)
            )
        )


class UnboundVariableError(ExpressionError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(exception_reasons.UnboundVariable.format(name=name))


class ExpressionDomainError(ExpressionError):
    def __init__(self, kind: str, count: int):
        self.kind = kind
        self.count = count
        super().__init__(
            exception_reasons.NonFiniteResult.format(kind=kind, count=count)
        )
