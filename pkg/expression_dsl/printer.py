from functools import singledispatch

from expression_dsl.types.expression_nodes import (
    Add,
    BinaryOperation,
    Expr,
    Function,
    Mul,
    Negate,
    Number,
    Pow,
    Sub,
    Variable,
)

# '+' and '-' are spaced, the tighter operators are not: "x1 + 2*w^2"
SPACED_OPERATORS = (Add, Sub)


def _wrap(text: str, needs_parentheses: bool) -> str:
    return f"({text})" if needs_parentheses else text


@singledispatch
def to_text(node: Expr) -> str:
    """Render an expression in the input grammar so that parse() reads it back."""
    raise TypeError(f"Cannot print a {type(node).__name__}")


@to_text.register
def _(node: Number) -> str:
    value = node.value
    text = str(int(value)) if value.is_integer() and abs(value) < 1e15 else repr(value)
    return f"({text})" if node.value < 0 else text


@to_text.register
def _(node: Variable) -> str:
    return node.name


@to_text.register
def _(node: Negate) -> str:
    operand = node.operand
    return "-" + _wrap(to_text(operand), operand.precedence < Pow.precedence)


@to_text.register
def _(node: Function) -> str:
    return f"{node.name}({to_text(node.argument)})"


@to_text.register
def _(node: BinaryOperation) -> str:
    if isinstance(node, Pow):
        left = _wrap(to_text(node.left), node.left.precedence <= Pow.precedence)
        right_bare = isinstance(node.right, Negate) or (
            node.right.precedence >= Pow.precedence
        )
        right = _wrap(to_text(node.right), not right_bare)
    else:
        left = _wrap(to_text(node.left), node.left.precedence < node.precedence)
        right = _wrap(to_text(node.right), node.right.precedence <= node.precedence)

    if isinstance(node, SPACED_OPERATORS):
        return f"{left} {node.symbol} {right}"
    return f"{left}{node.symbol}{right}"
