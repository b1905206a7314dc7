"""
Tests for the expression engine.

Covers parsing, printing, canonical simplification, differentiation,
evaluation and graded symbolic equality, plus property tests of the
algebraic laws over random expression trees.
"""

import math
import os
import sys
import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksymplectic.config import Equality, Grade  # noqa: E402
from ksymplectic.exceptions import (  # noqa: E402
    DivisionByZeroConstant,
    DomainError,
    ExpressionSyntaxError,
    UnboundSymbol,
    UnknownSymbol,
)
from ksymplectic.expr import (  # noqa: E402
    Add,
    Const,
    Div,
    Func,
    Mul,
    Neg,
    Pow,
    Sym,
    as_expr,
    base_var,
    differentiate,
    evaluate,
    evaluate_array,
    free_symbols,
    is_zero,
    parameter_var,
    simplify,
    substitute,
    symbolic_equal,
    to_string,
    velocity_var,
)
from ksymplectic.geometry import new_chart  # noqa: E402

CHART = new_chart(2, 2, ("sigma",))
SYMBOLS = [CHART.q(1), CHART.q(2), CHART.v(1, 1), CHART.v(2, 2), CHART.param("sigma")]
POINT = {
    base_var(1): 0.5,
    base_var(2): -0.75,
    velocity_var(1, 1): 1.25,
    velocity_var(2, 2): 0.25,
}
PARAMS = {"sigma": 1.5}


def expressions():
    """Random polynomial expression trees over the test chart."""
    leaves = st.one_of(
        st.sampled_from(SYMBOLS),
        st.integers(min_value=-3, max_value=3).map(Const),
    )
    powers = st.tuples(st.sampled_from(SYMBOLS), st.integers(min_value=0, max_value=3)).map(
        lambda p: Pow(p[0], p[1])
    )

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda p: Add(p)),
            st.tuples(children, children).map(lambda p: Mul(p)),
            children.map(Neg),
        )

    return st.recursive(st.one_of(leaves, powers), extend, max_leaves=6)


class TestParser(unittest.TestCase):
    """Test parsing against a chart."""

    def test_precedence(self):
        """Test operator precedence and associativity."""
        cases = [
            ("-v1_1^2", "-(v1_1^2)"),
            ("2*q1^2", "2*(q1^2)"),
            ("q1 - q2 - 1", "(q1 - q2) - 1"),
            ("q1/q2/2", "(q1/q2)/2"),
            ("q1**3", "q1^3"),
            ("q1^(-2)", "1/q1^2"),
            ("1/2*sigma*v1_1^2", "sigma*v1_1*v1_1/2"),
        ]
        for text, expected in cases:
            with self.subTest(text=text):
                result = symbolic_equal(CHART.parse(text), CHART.parse(expected))
                self.assertTrue(result.symbolic)

    def test_unary_minus_under_power(self):
        """Test that unary minus binds looser than the power."""
        tree = CHART.parse("-q1^2")
        self.assertIsInstance(tree, Neg)
        self.assertIsInstance(tree.arg, Pow)

    def test_functions(self):
        """Test function applications."""
        tree = CHART.parse("sin(q1) + sqrt(v1_1)")
        self.assertIsInstance(tree, Add)
        self.assertEqual(tree.terms[0], Func("sin", CHART.q(1)))

    def test_syntax_errors(self):
        """Test positions reported for malformed input."""
        cases = [("q1 +", 4), ("(q1", 3), ("q1 $ q2", 3), ("", 0), ("q1^x", 3)]
        for text, position in cases:
            with self.subTest(text=text):
                with self.assertRaises(ExpressionSyntaxError) as ctx:
                    CHART.parse(text)
                self.assertEqual(ctx.exception.position, position)

    def test_unknown_symbols(self):
        """Test identifiers outside the chart."""
        for text in ("q3", "v1_3", "tau", "t1", "w1_1_2", "x"):
            with self.subTest(text=text):
                with self.assertRaises(UnknownSymbol):
                    CHART.parse(text)

    def test_formal_symbols(self):
        """Test formal t and w symbols when allowed."""
        tree = CHART.parse("t1 + w1_1_2", allow_formal=True)
        self.assertEqual(len(free_symbols(tree)), 2)
        with self.assertRaises(UnknownSymbol):
            CHART.parse("w1_2_1", allow_formal=True)


class TestPrinter(unittest.TestCase):
    """Test printing in the expression grammar."""

    def test_simple_forms(self):
        """Test printed text of small expressions."""
        q1, v11 = CHART.q(1), CHART.v(1, 1)
        self.assertEqual(to_string(q1), "q1")
        self.assertEqual(to_string(Const(-3)), "-3")
        self.assertEqual(to_string(as_expr(0.5)), "1/2")
        self.assertEqual(to_string(Pow(q1, -2)), "q1^(-2)")
        self.assertEqual(to_string(Pow(Neg(q1), 2)), "(-q1)^2")
        self.assertEqual(to_string(q1 - v11), "q1 - v1_1")
        self.assertEqual(str(q1 * (q1 + v11)), "q1*(q1 + v1_1)")

    def test_round_trip(self):
        """Test that printed expressions parse back to equal expressions."""
        for text in ("-v1_1^2/2 + sigma*q1", "sqrt(q1^2 + 1)/(q2 - 3)", "(-2)^3*q1"):
            with self.subTest(text=text):
                tree = CHART.parse(text)
                again = CHART.parse(to_string(tree))
                self.assertTrue(symbolic_equal(tree, again).symbolic)


class TestSimplify(unittest.TestCase):
    """Test canonical simplification."""

    def test_constant_folding(self):
        """Test exact folding of numeric subtrees."""
        self.assertEqual(CHART.expr("1/3 + 1/6"), Const(Fraction(1, 2)))
        self.assertEqual(CHART.expr("sqrt(4/9)"), CHART.expr("2/3"))
        self.assertEqual(CHART.expr("cos(0) + sin(0)"), Const(1))

    def test_cancellation(self):
        """Test that opposite terms cancel."""
        self.assertEqual(CHART.expr("q1*v1_1 - v1_1*q1"), Const(0))
        self.assertEqual(CHART.expr("(q1 + 1)^2 - q1^2 - 2*q1"), Const(1))

    def test_quotient_reduction(self):
        """Test cancellation of monomial factors and proportional quotients."""
        self.assertEqual(CHART.expr("2*sigma*q1/2"), CHART.expr("sigma*q1"))
        self.assertEqual(CHART.expr("q1^2*v1_1/(q1*q2)"), CHART.expr("q1*v1_1/q2"))
        self.assertEqual(CHART.expr("(q1 + q2)/(2*q1 + 2*q2)"), Const(Fraction(1, 2)))
        self.assertIsInstance(CHART.expr("(q1 + 1)/(q1 - 1)"), Div)

    def test_parameters_do_not_cancel(self):
        """Test that parameter factors survive in both parts of a quotient."""
        kept = CHART.expr("(sigma/sigma)*v1_1")
        self.assertIsInstance(kept, Div)
        self.assertEqual(simplify(kept), kept)
        self.assertIn(parameter_var("sigma"), free_symbols(kept.den))
        self.assertEqual(CHART.expr("sigma*q1^2/(sigma*q1)"), CHART.expr("sigma*q1/sigma"))
        self.assertIsInstance(CHART.expr("(sigma*q1 + sigma)/(2*sigma*q1 + 2*sigma)"), Div)
        result = symbolic_equal(kept, CHART.expr("v1_1"))
        self.assertTrue(result)
        self.assertTrue(result.symbolic)

    def test_radical_reduction(self):
        """Test reduction of squared square roots of polynomials."""
        self.assertEqual(CHART.expr("sqrt(q1^2 + 1)^2"), CHART.expr("q1^2 + 1"))

    def test_division_by_zero(self):
        """Test denominators that fold to zero."""
        with self.assertRaises(DivisionByZeroConstant):
            CHART.expr("q1/(q2 - q2)")

    def test_canonical_equality(self):
        """Test that equal polynomials share one canonical form."""
        self.assertEqual(CHART.expr("(q1 + q2)*(q1 - q2)"), CHART.expr("q1^2 - q2^2"))
        self.assertEqual(CHART.expr("v1_1*sigma*2"), CHART.expr("2*sigma*v1_1"))


class TestCalculus(unittest.TestCase):
    """Test differentiation and substitution."""

    def test_derivatives(self):
        """Test derivatives of elementary expressions."""
        q1 = base_var(1)
        cases = [
            ("q1^3", "3*q1^2"),
            ("sin(q1)", "cos(q1)"),
            ("cos(2*q1)", "-2*sin(2*q1)"),
            ("exp(q1^2)", "2*q1*exp(q1^2)"),
            ("log(q1)", "1/q1"),
            ("sqrt(q1)", "1/(2*sqrt(q1))"),
            ("1/q1", "-1/q1^2"),
            ("sigma*v1_1*q1", "sigma*v1_1"),
        ]
        for text, expected in cases:
            with self.subTest(text=text):
                result = symbolic_equal(differentiate(CHART.expr(text), q1), CHART.expr(expected))
                self.assertTrue(result)

    def test_parameter_is_constant(self):
        """Test that parameters cannot be differentiation variables."""
        with self.assertRaises(ValueError):
            differentiate(CHART.expr("sigma*q1"), parameter_var("sigma"))
        self.assertEqual(differentiate(CHART.expr("sigma"), base_var(1)), Const(0))

    def test_substitute(self):
        """Test substitution of symbols."""
        e = CHART.expr("q1^2 + v1_1")
        result = substitute(e, {base_var(1): CHART.q(2) + 1, velocity_var(1, 1): 2})
        self.assertEqual(result, CHART.expr("q2^2 + 2*q2 + 3"))

    def test_free_symbols(self):
        """Test the symbols of the canonical form."""
        self.assertEqual(free_symbols(CHART.expr("q1 + q2 - q2")), {base_var(1)})


class TestEvaluate(unittest.TestCase):
    """Test numeric evaluation."""

    def test_scalar(self):
        """Test evaluation at a point."""
        value = evaluate(CHART.expr("sigma*v1_1^2/2 - q1"), POINT, PARAMS)
        self.assertAlmostEqual(value, 1.5 * 1.5625 / 2 - 0.5)

    def test_domain_errors(self):
        """Test points outside function domains."""
        for text in ("log(q2)", "sqrt(q2)", "1/(q1 - 1/2)"):
            with self.subTest(text=text):
                with self.assertRaises(DomainError):
                    evaluate(CHART.parse(text), POINT, PARAMS)

    def test_unbound(self):
        """Test symbols without values."""
        with self.assertRaises(UnboundSymbol):
            evaluate(CHART.expr("sigma*q1"), POINT)

    def test_array(self):
        """Test vectorised evaluation."""
        x = np.linspace(0.1, 1.0, 7)
        result = evaluate_array(CHART.expr("q1^2 + sin(q1)"), {base_var(1): x})
        np.testing.assert_allclose(result, x**2 + np.sin(x))
        shaped = evaluate_array(Const(2), {}, shape=(3, 4))
        self.assertEqual(shaped.shape, (3, 4))
        with self.assertRaises(DomainError):
            evaluate_array(CHART.expr("log(q1)"), {base_var(1): x - 0.5})


class TestSymbolicEqual(unittest.TestCase):
    """Test graded equality verdicts."""

    def test_symbolic_verdicts(self):
        """Test equality decided on canonical forms."""
        result = symbolic_equal(CHART.expr("(q1 + 1)^2"), CHART.expr("q1^2 + 2*q1 + 1"))
        self.assertEqual(result.verdict, Equality.SYMBOLIC_EQUAL)
        self.assertEqual(result.grade, Grade.SYMBOLIC)

        result = symbolic_equal(CHART.expr("(q1^2 - 1)/(q1 - 1)"), CHART.expr("q1 + 1"))
        self.assertTrue(result.symbolic)

        result = is_zero(CHART.expr("q1*v1_1 - q2"))
        self.assertEqual(result.verdict, Equality.NOT_EQUAL)
        self.assertEqual(result.grade, Grade.SYMBOLIC)
        self.assertFalse(result)

    def test_numeric_fallback(self):
        """Test identities that need the numeric fallback."""
        result = symbolic_equal(CHART.expr("sin(q1)^2 + cos(q1)^2"), 1)
        self.assertEqual(result.verdict, Equality.NUMERIC_EQUAL)
        self.assertEqual(result.grade, Grade.NUMERIC)
        self.assertTrue(result)

        result = symbolic_equal(CHART.expr("exp(q1)"), CHART.expr("cos(q1)"))
        self.assertEqual(result.verdict, Equality.NOT_EQUAL)
        self.assertEqual(result.grade, Grade.NUMERIC)
        self.assertIn("q1", result.witness)


class TestExpressionProperties(unittest.TestCase):
    """Property tests of the algebra over random trees."""

    @settings(max_examples=60, deadline=None)
    @given(expressions())
    def test_simplify_idempotent(self, e):
        """Test that simplify is idempotent."""
        once = simplify(e)
        self.assertEqual(simplify(once), once)

    @settings(max_examples=60, deadline=None)
    @given(expressions())
    def test_print_parse_round_trip(self, e):
        """Test that printed trees parse back to symbolic-equal trees."""
        self.assertTrue(symbolic_equal(CHART.parse(to_string(e)), e).symbolic)

    @settings(max_examples=60, deadline=None)
    @given(expressions(), expressions())
    def test_differentiation_rules(self, a, b):
        """Test linearity and the product rule."""
        x = base_var(1)
        da, db = differentiate(a, x), differentiate(b, x)
        self.assertTrue(symbolic_equal(differentiate(a + b, x), da + db).symbolic)
        self.assertTrue(symbolic_equal(differentiate(a * b, x), da * b + a * db).symbolic)

    @settings(max_examples=60, deadline=None)
    @given(expressions())
    def test_evaluation_preserved(self, e):
        """Test that canonicalization preserves values."""
        raw = evaluate(e, POINT, PARAMS)
        canonical = evaluate(simplify(e), POINT, PARAMS)
        self.assertTrue(math.isclose(raw, canonical, rel_tol=1e-9, abs_tol=1e-5))

    def test_canonical_nodes(self):
        """Test node types produced by simplify."""
        self.assertIsInstance(CHART.expr("q1 + q2"), Add)
        self.assertIsInstance(CHART.expr("q1*q2"), Mul)
        self.assertIsInstance(CHART.expr("q1/q2"), Div)
        self.assertIsInstance(CHART.expr("q1"), Sym)


if __name__ == "__main__":
    unittest.main()
