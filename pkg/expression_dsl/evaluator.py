from functools import singledispatch
from typing import Mapping, Union

import numpy as np

from expression_dsl.types.exceptions import ExpressionDomainError, UnboundVariableError
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

Value = Union[float, np.ndarray]
Env = Mapping[str, Value]

NUMPY_FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "tanh": np.tanh,
}

NUMPY_OPERATORS = {
    Add: np.add,
    Sub: np.subtract,
    Mul: np.multiply,
    Div: np.divide,
    Pow: np.power,
}


def _finite(value: np.ndarray, kind: str) -> np.ndarray:
    finite = np.isfinite(value)
    if not np.all(finite):
        raise ExpressionDomainError(kind, int(np.size(finite) - np.count_nonzero(finite)))
    return value


@singledispatch
def _evaluate(node: Expr, env: Env):
    raise TypeError(f"Cannot evaluate a {type(node).__name__}")


@_evaluate.register
def _(node: Number, env: Env):
    return np.float64(node.value)


@_evaluate.register
def _(node: Variable, env: Env):
    try:
        return env[node.name]
    except KeyError:
        raise UnboundVariableError(node.name) from None


@_evaluate.register
def _(node: Negate, env: Env):
    return np.negative(_evaluate(node.operand, env))


@_evaluate.register
def _(node: BinaryOperation, env: Env):
    left = _evaluate(node.left, env)
    right = _evaluate(node.right, env)
    with np.errstate(all="ignore"):
        result = NUMPY_OPERATORS[type(node)](left, right)
    return _finite(result, node.kind)


@_evaluate.register
def _(node: Function, env: Env):
    argument = _evaluate(node.argument, env)
    with np.errstate(all="ignore"):
        result = NUMPY_FUNCTIONS[node.name](argument)
    return _finite(result, node.name)


def evaluate(expression: Expr, env: Env) -> Value:
    """
    Evaluate an expression in IEEE double precision.

    Environment values may be scalars or numpy arrays; arrays are combined
    by broadcasting, so one call evaluates a whole grid or sample set.

    :param expression: the expression tree
    :param env: binding of every free variable of the expression
    :return: a float for scalar environments, otherwise an ndarray
    :raises UnboundVariableError: a free variable has no binding
    :raises ExpressionDomainError: a subexpression produced inf or nan
    """
    bound = {name: np.asarray(value, dtype=float) for name, value in env.items()}
    result = _finite(np.asarray(_evaluate(expression, bound), dtype=float), "variable")
    if result.ndim == 0:
        return float(result)
    return result
