from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

FUNCTION_NAMES = ("sin", "cos", "exp", "log", "sqrt", "tanh")

Operand = Union["Expr", float, int]


@dataclass(frozen=True)
class Expr:
    """
    Object representing a node of an immutable expression tree.

    Subclasses are frozen dataclasses, so two trees compare equal
    exactly when they have the same structure and literals.
    """

    precedence: ClassVar[int] = 5

    @staticmethod
    def coerce(value: Operand) -> "Expr":
        if isinstance(value, Expr):
            return value
        return Number(value)

    def __add__(self, other: Operand) -> "Expr":
        return Add(self, Expr.coerce(other))

    def __radd__(self, other: Operand) -> "Expr":
        return Add(Expr.coerce(other), self)

    def __sub__(self, other: Operand) -> "Expr":
        return Sub(self, Expr.coerce(other))

    def __rsub__(self, other: Operand) -> "Expr":
        return Sub(Expr.coerce(other), self)

    def __mul__(self, other: Operand) -> "Expr":
        return Mul(self, Expr.coerce(other))

    def __rmul__(self, other: Operand) -> "Expr":
        return Mul(Expr.coerce(other), self)

    def __truediv__(self, other: Operand) -> "Expr":
        return Div(self, Expr.coerce(other))

    def __rtruediv__(self, other: Operand) -> "Expr":
        return Div(Expr.coerce(other), self)

    def __pow__(self, other: Operand) -> "Expr":
        return Pow(self, Expr.coerce(other))

    def __neg__(self) -> "Expr":
        return Negate(self)

    def __str__(self) -> str:
        # local import, the printer dispatches on the node classes below
        from expression_dsl.printer import to_text

        return to_text(self)


@dataclass(frozen=True)
class Number(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Variable(Expr):
    name: str


@dataclass(frozen=True)
class Negate(Expr):
    operand: Expr

    precedence: ClassVar[int] = 3


@dataclass(frozen=True)
class BinaryOperation(Expr):
    left: Expr
    right: Expr

    symbol: ClassVar[str] = "?"
    kind: ClassVar[str] = "binary operation"


@dataclass(frozen=True)
class Add(BinaryOperation):
    symbol: ClassVar[str] = "+"
    kind: ClassVar[str] = "sum"
    precedence: ClassVar[int] = 1


@dataclass(frozen=True)
class Sub(BinaryOperation):
    symbol: ClassVar[str] = "-"
    kind: ClassVar[str] = "difference"
    precedence: ClassVar[int] = 1


@dataclass(frozen=True)
class Mul(BinaryOperation):
    symbol: ClassVar[str] = "*"
    kind: ClassVar[str] = "product"
    precedence: ClassVar[int] = 2


@dataclass(frozen=True)
class Div(BinaryOperation):
    symbol: ClassVar[str] = "/"
    kind: ClassVar[str] = "division"
    precedence: ClassVar[int] = 2


@dataclass(frozen=True)
class Pow(BinaryOperation):
    symbol: ClassVar[str] = "^"
    kind: ClassVar[str] = "power"
    precedence: ClassVar[int] = 4


@dataclass(frozen=True)
class Function(Expr):
    name: str
    argument: Expr

    def __post_init__(self):
        if self.name not in FUNCTION_NAMES:
            raise ValueError(f"Unsupported function: {self.name}")
