import math
import unittest

import numpy as np

from expression_dsl.calculus import diff, free_vars, simplify, substitute
from expression_dsl.evaluator import evaluate
from expression_dsl.parser import parse
from expression_dsl.tests.random_trees import RandomTreeFactory
from expression_dsl.types.exceptions import ExpressionDomainError, UnboundVariableError
from expression_dsl.types.expression_nodes import Add, Number, Variable

FINITE_DIFFERENCE_STEP = 1e-5


def central_difference(expression, env, var, step=FINITE_DIFFERENCE_STEP):
    forward = dict(env, **{var: env[var] + step})
    backward = dict(env, **{var: env[var] - step})
    return (evaluate(expression, forward) - evaluate(expression, backward)) / (2 * step)


class CalculusTestEvaluate(unittest.TestCase):
    def test_square(self):
        self.assertEqual(evaluate(parse("x1*x1"), {"x1": 3}), 9.0)

    def test_identity(self):
        self.assertEqual(evaluate(parse("exp(0)"), {}), 1.0)

    def test_log_of_negative_is_domain_error(self):
        with self.assertRaises(ExpressionDomainError) as context:
            evaluate(parse("log(x1)"), {"x1": -1})
        self.assertEqual(context.exception.kind, "log")

    def test_division_by_zero(self):
        with self.assertRaises(ExpressionDomainError) as context:
            evaluate(parse("1/x1"), {"x1": 0})
        self.assertEqual(context.exception.kind, "division")

    def test_fractional_power_of_negative_base(self):
        with self.assertRaises(ExpressionDomainError):
            evaluate(parse("x1^0.5"), {"x1": -4})
        self.assertEqual(evaluate(parse("x1^2"), {"x1": -4}), 16.0)

    def test_unbound_variable_is_named(self):
        with self.assertRaises(UnboundVariableError) as context:
            evaluate(parse("x1 + w"), {"x1": 1})
        self.assertEqual(context.exception.name, "w")

    def test_array_environment_broadcasts(self):
        x1 = np.linspace(0, 1, 5)[:, None]
        x2 = np.linspace(0, 1, 3)[None, :]
        values = evaluate(parse("x1 + 2*x2"), {"x1": x1, "x2": x2})
        self.assertEqual(values.shape, (5, 3))
        np.testing.assert_allclose(values, x1 + 2 * x2)

    def test_domain_error_counts_points(self):
        with self.assertRaises(ExpressionDomainError) as context:
            evaluate(parse("sqrt(x1)"), {"x1": np.array([1.0, -1.0, -2.0])})
        self.assertEqual(context.exception.count, 2)


class CalculusTestDerivatives(unittest.TestCase):
    def test_power_rule(self):
        self.assertEqual(diff(parse("x1^2"), "x1"), parse("2*x1"))

    def test_absent_variable(self):
        self.assertEqual(diff(parse("sin(w)"), "x1"), Number(0))

    def test_product_against_finite_difference(self):
        expression = parse("x1*w")
        derivative = diff(expression, "w")
        env = {"x1": 2.0, "w": 5.0}
        self.assertAlmostEqual(evaluate(derivative, env), 2.0)
        self.assertLessEqual(
            abs(evaluate(derivative, env) - central_difference(expression, env, "w")),
            1e-6,
        )

    def test_function_palette(self):
        env = {"x1": 0.3}
        cases = {
            "sin(x1)": math.cos(0.3),
            "cos(x1)": -math.sin(0.3),
            "exp(2*x1)": 2 * math.exp(0.6),
            "log(x1)": 1 / 0.3,
            "sqrt(x1)": 0.5 / math.sqrt(0.3),
            "tanh(x1)": 1 - math.tanh(0.3) ** 2,
            "2^x1": math.log(2) * 2**0.3,
            "x1^x1": 0.3**0.3 * (math.log(0.3) + 1),
        }
        for source, expected in cases.items():
            with self.subTest(source=source):
                self.assertAlmostEqual(
                    evaluate(diff(parse(source), "x1"), env), expected, places=12
                )

    def test_random_trees_match_central_differences(self):
        variables = ("x1", "x2", "w")
        factory = RandomTreeFactory(seed=2024, variables=variables)
        for _ in range(1000):
            expression = factory.tree()
            env = factory.environment()
            var = variables[int(factory._rng.integers(0, len(variables)))]
            symbolic = evaluate(diff(expression, var), env)
            numeric = central_difference(expression, env, var)
            self.assertLessEqual(
                abs(symbolic - numeric),
                1e-5 * (1 + abs(symbolic)),
                f"d/d{var} of {expression}",
            )

    def test_variable_exponents_match_central_differences(self):
        variables = ("x1", "w")
        factory = RandomTreeFactory(seed=77, variables=variables)
        general = 0
        for _ in range(300):
            expression = factory.variable_power()
            env = factory.environment()
            var = "x1"
            if var in free_vars(expression.left) and var in free_vars(expression.right):
                general += 1
            symbolic = evaluate(diff(expression, var), env)
            numeric = central_difference(expression, env, var)
            self.assertLessEqual(
                abs(symbolic - numeric),
                1e-5 * (1 + abs(symbolic)),
                f"d/d{var} of {expression}",
            )
        # base and exponent both depend on x1 in a good share of the draws
        self.assertGreater(general, 10)

    def test_free_variables_do_not_grow(self):
        factory = RandomTreeFactory(seed=11, variables=("x1", "x2", "w"))
        for _ in range(300):
            expression = factory.tree()
            for var in ("x1", "w", "q"):
                self.assertLessEqual(
                    free_vars(diff(expression, var)), free_vars(expression)
                )

    def test_linearity(self):
        factory = RandomTreeFactory(seed=5, variables=("x1", "w"))
        for _ in range(200):
            a, b = factory.tree(), factory.tree()
            self.assertEqual(
                diff(Add(a, b), "x1"),
                simplify(Add(diff(a, "x1"), diff(b, "x1"))),
            )


class CalculusTestStructure(unittest.TestCase):
    def test_free_vars(self):
        self.assertEqual(free_vars(parse("3.5")), frozenset())
        self.assertEqual(
            free_vars(parse("x1 + sin(w*x2)")), frozenset({"x1", "x2", "w"})
        )

    def test_simplify_identities(self):
        self.assertEqual(simplify(parse("0*w + x1*1 - 0")), Variable("x1"))
        self.assertEqual(simplify(parse("2*3 + 1")), Number(7))
        self.assertEqual(simplify(parse("-(-w)")), Variable("w"))
        self.assertEqual(simplify(parse("w^1 + w^0")), parse("w + 1"))

    def test_simplify_drops_zero_numerators_unevaluated(self):
        expression = parse("0/log(x1)")
        with self.assertRaises(ExpressionDomainError):
            evaluate(expression, {"x1": -1.0})
        self.assertEqual(simplify(expression), Number(0))

    def test_simplify_keeps_non_finite_folds(self):
        self.assertEqual(simplify(parse("1/0")), parse("1/0"))

    def test_substitute(self):
        result = substitute(parse("u*x2 + u"), {"u": parse("sin(x1)")})
        self.assertEqual(result, parse("sin(x1)*x2 + sin(x1)"))


if __name__ == "__main__":
    unittest.main()
