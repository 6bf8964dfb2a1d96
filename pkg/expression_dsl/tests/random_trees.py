import numpy as np

from expression_dsl.types.expression_nodes import (
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


class RandomTreeFactory:
    """
    Builds random expression trees that stay finite for variables in [-1, 1]:
    denominators, log and sqrt arguments are kept away from zero, and
    powers with a variable exponent get a positive base.
    """

    def __init__(self, seed: int, variables: tuple, max_depth: int = 4):
        self._rng = np.random.default_rng(seed)
        self.variables = variables
        self.max_depth = max_depth

    def _leaf(self) -> Expr:
        if self._rng.random() < 0.6:
            return Variable(str(self._rng.choice(self.variables)))
        return Number(round(float(self._rng.uniform(-2.0, 2.0)), 2))

    def tree(self, depth: int = 0) -> Expr:
        if depth >= self.max_depth or self._rng.random() < 0.2:
            return self._leaf()

        child = lambda: self.tree(depth + 1)  # noqa: E731
        match int(self._rng.integers(0, 13)):
            case 0:
                return Add(child(), child())
            case 1:
                return Sub(child(), child())
            case 2 | 3:
                return Mul(child(), child())
            case 4:
                return Negate(child())
            case 5:
                inner = child()
                return Div(child(), Add(Number(1.5), Mul(inner, inner)))
            case 6:
                return Pow(child(), Number(int(self._rng.integers(2, 4))))
            case 7:
                return Function(str(self._rng.choice(("sin", "cos", "tanh"))), child())
            case 8:
                return Function("exp", Function("tanh", child()))
            case 9:
                inner = child()
                return Function("log", Add(Number(1), Mul(inner, inner)))
            case 10 | 11:
                return self.variable_power(depth)
            case _:
                return Function("sqrt", Add(Number(2), Function("sin", child())))

    def variable_power(self, depth: int = 0) -> Pow:
        """A positive base raised to a bounded exponent; both sides may hold variables."""
        child = lambda: self.tree(depth + 1)  # noqa: E731
        if self._rng.random() < 0.5:
            base = Function("exp", Function("tanh", child()))
        else:
            base = Add(Number(1.5), Function("sin", child()))
        return Pow(base, Mul(Number(2), Function("tanh", child())))

    def environment(self) -> dict:
        return {name: float(self._rng.uniform(-1.0, 1.0)) for name in self.variables}
