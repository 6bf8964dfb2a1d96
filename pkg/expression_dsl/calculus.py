from functools import singledispatch
from typing import FrozenSet, Mapping

import numpy as np

from expression_dsl.evaluator import NUMPY_FUNCTIONS, NUMPY_OPERATORS
from expression_dsl.types.expression_nodes import (
    Add,
    BinaryOperation,
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

ZERO = Number(0.0)
ONE = Number(1.0)


def _is_number(node: Expr, value: float = None) -> bool:
    if not isinstance(node, Number):
        return False
    return value is None or node.value == value


# ---------------------------------------------------------------- variables


@singledispatch
def free_vars(node: Expr) -> FrozenSet[str]:
    """Exactly the variable names occurring in the expression."""
    raise TypeError(f"Cannot inspect a {type(node).__name__}")


@free_vars.register
def _(node: Number) -> FrozenSet[str]:
    return frozenset()


@free_vars.register
def _(node: Variable) -> FrozenSet[str]:
    return frozenset((node.name,))


@free_vars.register
def _(node: Negate) -> FrozenSet[str]:
    return free_vars(node.operand)


@free_vars.register
def _(node: BinaryOperation) -> FrozenSet[str]:
    return free_vars(node.left) | free_vars(node.right)


@free_vars.register
def _(node: Function) -> FrozenSet[str]:
    return free_vars(node.argument)


@singledispatch
def substitute(node: Expr, replacements: Mapping[str, Expr]) -> Expr:
    """Replace variables by expressions; unmentioned variables are kept."""
    raise TypeError(f"Cannot substitute into a {type(node).__name__}")


@substitute.register
def _(node: Number, replacements: Mapping[str, Expr]) -> Expr:
    return node


@substitute.register
def _(node: Variable, replacements: Mapping[str, Expr]) -> Expr:
    return replacements.get(node.name, node)


@substitute.register
def _(node: Negate, replacements: Mapping[str, Expr]) -> Expr:
    return Negate(substitute(node.operand, replacements))


@substitute.register
def _(node: BinaryOperation, replacements: Mapping[str, Expr]) -> Expr:
    return type(node)(
        substitute(node.left, replacements), substitute(node.right, replacements)
    )


@substitute.register
def _(node: Function, replacements: Mapping[str, Expr]) -> Expr:
    return Function(node.name, substitute(node.argument, replacements))


def rename(node: Expr, names: Mapping[str, str]) -> Expr:
    return substitute(node, {old: Variable(new) for old, new in names.items()})


# ---------------------------------------------------------------- simplification


def _fold(operation, *operands: Number):
    with np.errstate(all="ignore"):
        value = float(operation(*(operand.value for operand in operands)))
    return Number(value) if np.isfinite(value) else None


def _rewrite_negate(operand: Expr) -> Expr:
    if isinstance(operand, Number):
        return Number(-operand.value)
    if isinstance(operand, Negate):
        return operand.operand
    return Negate(operand)


def _rewrite_binary(node_class, left: Expr, right: Expr) -> Expr:
    if _is_number(left) and _is_number(right):
        folded = _fold(NUMPY_OPERATORS[node_class], left, right)
        if folded is not None:
            return folded

    if node_class is Add:
        if _is_number(left, 0.0):
            return right
        if _is_number(right, 0.0):
            return left
    elif node_class is Sub:
        if _is_number(right, 0.0):
            return left
        if _is_number(left, 0.0):
            return _rewrite_negate(right)
    elif node_class is Mul:
        if _is_number(left, 0.0) or _is_number(right, 0.0):
            return ZERO
        if _is_number(left, 1.0):
            return right
        if _is_number(right, 1.0):
            return left
    elif node_class is Div:
        if _is_number(left, 0.0):
            return ZERO
        if _is_number(right, 1.0):
            return left
    elif node_class is Pow:
        if _is_number(right, 0.0):
            return ONE
        if _is_number(right, 1.0):
            return left
    return node_class(left, right)


@singledispatch
def simplify(node: Expr) -> Expr:
    """
    Conservative normal form: constant folding and identity elimination
    (0*e, e+0, 1*e, e^1, ...). Non-finite folds are left unevaluated.

    The zero rules drop ``e`` unevaluated: ``0*e`` and ``0/e`` become 0 and
    ``e^0`` becomes 1 even where evaluating ``e`` (or dividing by it) would
    raise :class:`ExpressionDomainError`. The simplified tree is therefore
    defined on a superset of the original domain.
    """
    raise TypeError(f"Cannot simplify a {type(node).__name__}")


@simplify.register
def _(node: Number) -> Expr:
    return node


@simplify.register
def _(node: Variable) -> Expr:
    return node


@simplify.register
def _(node: Negate) -> Expr:
    return _rewrite_negate(simplify(node.operand))


@simplify.register
def _(node: BinaryOperation) -> Expr:
    return _rewrite_binary(type(node), simplify(node.left), simplify(node.right))


@simplify.register
def _(node: Function) -> Expr:
    argument = simplify(node.argument)
    if isinstance(argument, Number):
        folded = _fold(NUMPY_FUNCTIONS[node.name], argument)
        if folded is not None:
            return folded
    return Function(node.name, argument)


# ---------------------------------------------------------------- differentiation


@singledispatch
def _derivative(node: Expr, var: str) -> Expr:
    raise TypeError(f"Cannot differentiate a {type(node).__name__}")


@_derivative.register
def _(node: Number, var: str) -> Expr:
    return ZERO


@_derivative.register
def _(node: Variable, var: str) -> Expr:
    return ONE if node.name == var else ZERO


@_derivative.register
def _(node: Negate, var: str) -> Expr:
    return Negate(_derivative(node.operand, var))


@_derivative.register
def _(node: Add, var: str) -> Expr:
    return Add(_derivative(node.left, var), _derivative(node.right, var))


@_derivative.register
def _(node: Sub, var: str) -> Expr:
    return Sub(_derivative(node.left, var), _derivative(node.right, var))


@_derivative.register
def _(node: Mul, var: str) -> Expr:
    left, right = node.left, node.right
    return Add(
        Mul(_derivative(left, var), right), Mul(left, _derivative(right, var))
    )


@_derivative.register
def _(node: Div, var: str) -> Expr:
    numerator, denominator = node.left, node.right
    return Div(
        Sub(
            Mul(_derivative(numerator, var), denominator),
            Mul(numerator, _derivative(denominator, var)),
        ),
        Pow(denominator, Number(2)),
    )


@_derivative.register
def _(node: Pow, var: str) -> Expr:
    base, exponent = node.left, node.right
    if var not in free_vars(exponent):
        # power rule
        return Mul(
            Mul(exponent, Pow(base, Sub(exponent, ONE))), _derivative(base, var)
        )
    if var not in free_vars(base):
        return Mul(Mul(node, Function("log", base)), _derivative(exponent, var))
    return Mul(
        node,
        Add(
            Mul(_derivative(exponent, var), Function("log", base)),
            Div(Mul(exponent, _derivative(base, var)), base),
        ),
    )


def _chain_factor(node: Function) -> Expr:
    argument = node.argument
    match node.name:
        case "sin":
            return Function("cos", argument)
        case "cos":
            return Negate(Function("sin", argument))
        case "exp":
            return node
        case "log":
            return Div(ONE, argument)
        case "sqrt":
            return Div(ONE, Mul(Number(2), node))
        case "tanh":
            return Sub(ONE, Pow(node, Number(2)))
    raise TypeError(f"Unsupported function: {node.name}")


@_derivative.register
def _(node: Function, var: str) -> Expr:
    return Mul(_chain_factor(node), _derivative(node.argument, var))


def diff(expression: Expr, var: str) -> Expr:
    """Exact symbolic partial derivative with respect to ``var``, simplified."""
    return simplify(_derivative(expression, var))
