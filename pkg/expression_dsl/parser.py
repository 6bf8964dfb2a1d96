"""
Top-down operator precedence parser for the right-hand side language.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ['-'] power
    power  := atom ['^' factor]
    atom   := number | ident | ident '(' expr ')' | '(' expr ')'

'^' binds tighter than unary minus and is right-associative.
"""

import re
from dataclasses import dataclass
from typing import Iterator

from expression_dsl.types.exceptions import ExpressionSyntaxError, UnknownFunctionError
from expression_dsl.types.expression_nodes import (
    FUNCTION_NAMES,
    Add,
    Div,
    Expr,
    Function,
    Mul,
    Negate,
    Number,
    Pow,
    Sub,
    Variable,
)

TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<operator>[-+*/^()])"
    r"|(?P<end>$)"
    r"|(?P<garbage>.)"
    r")"
)

BINARY_OPERATORS = {
    "+": (10, Add),
    "-": (10, Sub),
    "*": (20, Mul),
    "/": (20, Div),
    "^": (30, Pow),
}
UNARY_MINUS_BINDING = 25

EXPECTED_OPERAND = ("number", "identifier", "'('", "'-'")
EXPECTED_OPERATOR = ("'+'", "'-'", "'*'", "'/'", "'^'")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int

    def describe(self) -> str:
        if self.kind == "end":
            return "end of input"
        return f"'{self.text}'"


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


def tokenize(source: str) -> Iterator[Token]:
    position = 0
    while True:
        match = TOKEN_PATTERN.match(source, position)
        kind = match.lastgroup
        text = match.group(kind)
        offset = _byte_offset(source, match.start(kind))
        if kind == "garbage":
            raise ExpressionSyntaxError(
                f"'{text}'", offset, EXPECTED_OPERAND + EXPECTED_OPERATOR
            )
        yield Token(kind, text, offset)
        if kind == "end":
            return
        position = match.end()


class ExpressionParser:
    def __init__(self, source: str):
        self._tokens = list(tokenize(source))
        self._position = 0

    @property
    def _current(self) -> Token:
        return self._tokens[self._position]

    def _advance(self) -> Token:
        token = self._current
        if token.kind != "end":
            self._position += 1
        return token

    def _binding_power(self, token: Token) -> int:
        if token.kind == "operator" and token.text in BINARY_OPERATORS:
            return BINARY_OPERATORS[token.text][0]
        return 0

    def _expect(self, text: str, expected: tuple):
        token = self._current
        if token.kind != "operator" or token.text != text:
            raise ExpressionSyntaxError(token.describe(), token.offset, expected)
        self._advance()

    def parse(self) -> Expr:
        expression = self._expression(0)
        if self._current.kind != "end":
            raise ExpressionSyntaxError(
                self._current.describe(),
                self._current.offset,
                EXPECTED_OPERATOR + ("end of input",),
            )
        return expression

    def _expression(self, right_binding: int) -> Expr:
        left = self._prefix(self._advance())
        while right_binding < self._binding_power(self._current):
            left = self._infix(self._advance(), left)
        return left

    def _prefix(self, token: Token) -> Expr:
        match token.kind:
            case "number":
                return Number(float(token.text))
            case "name":
                return self._name(token)
            case "operator" if token.text == "(":
                inner = self._expression(0)
                self._expect(")", EXPECTED_OPERATOR + ("')'",))
                return inner
            case "operator" if token.text == "-":
                # a single leading minus only, '--x' is rejected
                if self._current.kind == "operator" and self._current.text == "-":
                    raise ExpressionSyntaxError(
                        self._current.describe(),
                        self._current.offset,
                        EXPECTED_OPERAND[:3],
                    )
                return Negate(self._expression(UNARY_MINUS_BINDING))
            case _:
                raise ExpressionSyntaxError(
                    token.describe(), token.offset, EXPECTED_OPERAND
                )

    def _name(self, token: Token) -> Expr:
        is_call = self._current.kind == "operator" and self._current.text == "("
        if is_call:
            if token.text not in FUNCTION_NAMES:
                raise UnknownFunctionError(token.text, token.offset, FUNCTION_NAMES)
            self._advance()
            argument = self._expression(0)
            self._expect(")", EXPECTED_OPERATOR + ("')'",))
            return Function(token.text, argument)
        if token.text in FUNCTION_NAMES:
            raise ExpressionSyntaxError(
                self._current.describe(), self._current.offset, ("'('",)
            )
        return Variable(token.text)

    def _infix(self, token: Token, left: Expr) -> Expr:
        binding, node_class = BINARY_OPERATORS[token.text]
        if node_class is Pow:
            # right associative: x^2^3 == x^(2^3)
            return Pow(left, self._expression(binding - 1))
        return node_class(left, self._expression(binding))


def parse(source: str) -> Expr:
    return ExpressionParser(source).parse()
