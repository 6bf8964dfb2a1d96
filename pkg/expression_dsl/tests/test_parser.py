import unittest

from expression_dsl.calculus import simplify
from expression_dsl.parser import parse
from expression_dsl.printer import to_text
from expression_dsl.tests.random_trees import RandomTreeFactory
from expression_dsl.types.exceptions import ExpressionSyntaxError, UnknownFunctionError
from expression_dsl.types.expression_nodes import (
    Add,
    Function,
    Mul,
    Negate,
    Number,
    Pow,
    Sub,
    Variable,
)


class ParserTestGrammar(unittest.TestCase):
    def test_literal(self):
        self.assertEqual(parse("0"), Number(0))

    def test_forced_tree(self):
        expected = Add(
            Variable("x1"), Function("sin", Mul(Variable("w"), Variable("x2")))
        )
        self.assertEqual(parse("x1 + sin(w*x2)"), expected)

    def test_precedence_and_associativity(self):
        x, y, z = Variable("x"), Variable("y"), Variable("z")
        self.assertEqual(parse("x - y - z"), Sub(Sub(x, y), z))
        self.assertEqual(parse("x^y^z"), Pow(x, Pow(y, z)))
        self.assertEqual(parse("x + y*z"), Add(x, Mul(y, z)))
        self.assertEqual(parse("(x + y)*z"), Mul(Add(x, y), z))

    def test_power_binds_tighter_than_unary_minus(self):
        x = Variable("x")
        self.assertEqual(parse("-x^2"), Negate(Pow(x, Number(2))))
        self.assertEqual(parse("2^-1"), Pow(Number(2), Negate(Number(1))))
        self.assertEqual(parse("-2*x"), Mul(Negate(Number(2)), x))

    def test_number_formats(self):
        self.assertEqual(parse("1.5e-3"), Number(0.0015))
        self.assertEqual(parse(".25"), Number(0.25))
        self.assertEqual(parse("2."), Number(2))

    def test_component_names_are_identifiers(self):
        self.assertEqual(parse("w_2"), Variable("w_2"))


class ParserTestErrors(unittest.TestCase):
    def test_double_plus_reports_offset(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse("x1 + + x2")
        self.assertEqual(context.exception.offset, 5)
        self.assertIn("identifier", context.exception.expected)

    def test_unknown_function(self):
        with self.assertRaises(UnknownFunctionError) as context:
            parse("x1 + foo(x2)")
        self.assertEqual(context.exception.name, "foo")
        self.assertEqual(context.exception.offset, 5)

    def test_double_minus_rejected(self):
        with self.assertRaises(ExpressionSyntaxError):
            parse("--x")

    def test_unbalanced_parenthesis(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse("(x1 + 2")
        self.assertIn("')'", context.exception.expected)

    def test_trailing_tokens(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse("2 x")
        self.assertEqual(context.exception.offset, 2)

    def test_bare_function_name(self):
        with self.assertRaises(ExpressionSyntaxError):
            parse("sin + 1")

    def test_stray_character(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse("x1 $ 2")
        self.assertEqual(context.exception.offset, 3)

    def test_empty_source(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse("   ")
        self.assertEqual(context.exception.found, "end of input")


class ParserTestPrinting(unittest.TestCase):
    def test_print_examples(self):
        self.assertEqual(to_text(parse("x1 + sin(w*x2)")), "x1 + sin(w*x2)")
        self.assertEqual(to_text(parse("-(x - y)")), "-(x - y)")
        self.assertEqual(to_text(parse("(-x)^2")), "(-x)^2")

    def test_round_trip_on_random_trees(self):
        factory = RandomTreeFactory(seed=7, variables=("x1", "x2", "w"))
        for _ in range(300):
            tree = simplify(factory.tree())
            self.assertEqual(simplify(parse(to_text(tree))), tree, to_text(tree))


if __name__ == "__main__":
    unittest.main()
