"""
Tests for the geometry of T^1_kQ.

Covers charts, vector fields, the k-tangent structure, the Liouville
field, brackets, lifts and 1-forms.
"""

import os
import sys
import unittest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksymplectic.exceptions import InvalidDimension, NameClash, NotBasic  # noqa: E402
from ksymplectic.expr import base_var, symbolic_equal, velocity_var  # noqa: E402
from ksymplectic.geometry import (  # noqa: E402
    Chart,
    KVectorField,
    OneForm,
    VectorField,
    apply_J,
    complete_lift,
    coordinate_field,
    exterior_derivative,
    lie_bracket,
    liouville,
    new_chart,
    sum_J,
    vertical_lift,
)


class TestChart(unittest.TestCase):
    """Test chart construction and symbol lookup."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(2, 2, ("sigma",))

    def test_description(self):
        """Test dimensions and printed form."""
        self.assertEqual(str(self.chart), "T^1_2R^2 [sigma]")
        self.assertEqual(str(new_chart(1, 3)), "T^1_1R^3")
        self.assertEqual(self.chart.dimension, 6)

    def test_coordinate_order(self):
        """Test the canonical coordinate order."""
        names = [var.name for var in self.chart.coordinates()]
        self.assertEqual(names, ["q1", "q2", "v1_1", "v1_2", "v2_1", "v2_2"])
        self.assertEqual(len(self.chart.jet_vars()), 6)
        self.assertEqual([v.name for v in self.chart.time_vars()], ["t1", "t2"])

    def test_resolve(self):
        """Test name resolution."""
        self.assertEqual(self.chart.resolve("v2_1"), velocity_var(2, 1))
        self.assertIsNone(self.chart.resolve("q3"))
        self.assertIsNone(self.chart.resolve("t1"))
        self.assertIsNotNone(self.chart.resolve("t1", allow_formal=True))
        self.assertTrue(self.chart.owns(base_var(2)))

    def test_invalid_charts(self):
        """Test rejected dimensions and parameter names."""
        with self.assertRaises(InvalidDimension):
            new_chart(0, 1)
        with self.assertRaises(InvalidDimension):
            Chart(2, -1)
        for params in (("q1",), ("sin",), ("t",), ("a", "a"), ("1x",)):
            with self.subTest(params=params):
                with self.assertRaises(NameClash):
                    new_chart(1, 1, params)

    def test_index_validation(self):
        """Test out-of-range indices."""
        with self.assertRaises(InvalidDimension):
            self.chart.q(3)
        with self.assertRaises(InvalidDimension):
            self.chart.v(1, 3)
        with self.assertRaises(KeyError):
            self.chart.param("tau")


class TestVectorFields(unittest.TestCase):
    """Test vector field construction and algebra."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(2, 2)
        self.X = VectorField.from_mapping(self.chart, {"q1": "q2", "v1_1": "v2_2^2"})

    def test_components(self):
        """Test component access and printing."""
        self.assertEqual(self.X.component(base_var(1)), self.chart.q(2))
        self.assertEqual(self.X.to_dict(), {"q1": "q2", "v1_1": "v2_2^2"})
        self.assertEqual(str(VectorField.zero(self.chart)), "0")
        with self.assertRaises(ValueError):
            VectorField.from_mapping(self.chart, {"q3": "1"})

    def test_build(self):
        """Test construction from component lists."""
        Y = VectorField.build(self.chart, ["q2", 0], [["v2_2^2", 0], [0, 0]])
        self.assertTrue(Y.equals(self.X))
        with self.assertRaises(ValueError):
            VectorField.build(self.chart, ["1"])

    def test_arithmetic(self):
        """Test sums, differences and scaling."""
        self.assertTrue((self.X - self.X).is_zero())
        self.assertTrue((self.X + (-self.X)).is_zero())
        doubled = self.X + self.X
        self.assertTrue(doubled.equals(2 * self.X))
        scaled = self.X.scale("q1")
        self.assertEqual(scaled.to_dict()["q1"], "q1*q2")

    def test_apply(self):
        """Test the derivation X(f)."""
        f = self.chart.expr("q1^2*v1_1")
        expected = self.chart.expr("2*q1*q2*v1_1 + q1^2*v2_2^2")
        self.assertTrue(symbolic_equal(self.X.apply(f), expected))

    def test_predicates(self):
        """Test vertical and basic fields."""
        self.assertFalse(self.X.is_vertical())
        self.assertFalse(self.X.is_basic())
        self.assertTrue(coordinate_field(self.chart, "v2_1").is_vertical())
        basic = VectorField.from_mapping(self.chart, {"q1": "q2^2"})
        self.assertTrue(basic.is_basic())
        not_basic = VectorField.from_mapping(self.chart, {"q1": "v1_1"})
        result = not_basic.is_basic()
        self.assertFalse(result)
        self.assertIn("q1", result.witness.label)

    def test_k_vector_field(self):
        """Test k-tuples of fields."""
        xi = KVectorField((self.X, coordinate_field(self.chart, "q2")))
        self.assertEqual(len(xi), 2)
        self.assertIs(xi.direction(2), xi.fields[1])
        with self.assertRaises(ValueError):
            KVectorField((self.X,))


class TestOperators(unittest.TestCase):
    """Test J, the Liouville field, brackets and lifts."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(2, 2)
        self.Z = VectorField.from_mapping(self.chart, {"q1": "q2"})
        self.W = VectorField.from_mapping(self.chart, {"q2": "q1^2"})

    def test_k_tangent_structure(self):
        """Test J^a on base and vertical fields."""
        J1 = apply_J(1, self.Z)
        self.assertEqual(J1.to_dict(), {"v1_1": "q2"})
        self.assertTrue(apply_J(2, J1).is_zero())
        self.assertTrue(apply_J(1, liouville(self.chart)).is_zero())

    def test_sum_J(self):
        """Test the summed contraction J^a(X_a)."""
        xi = KVectorField((self.Z, self.W))
        self.assertEqual(sum_J(xi).to_dict(), {"v1_1": "q2", "v2_2": "q1^2"})

    def test_liouville(self):
        """Test that C(L) = 2L for a quadratic Lagrangian."""
        L = self.chart.expr("v1_1^2/2 - v1_2*v2_1 + q1")
        expected = self.chart.expr("v1_1^2 - 2*v1_2*v2_1")
        result = symbolic_equal(liouville(self.chart).apply(L), expected)
        self.assertTrue(result.symbolic)

    def test_bracket(self):
        """Test brackets of coordinate fields."""
        d1 = coordinate_field(self.chart, "q1")
        X = VectorField.from_mapping(self.chart, {"q2": "q1"})
        self.assertTrue(lie_bracket(d1, X).equals(coordinate_field(self.chart, "q2")))
        self.assertTrue(lie_bracket(d1, coordinate_field(self.chart, "v1_1")).is_zero())

    def test_bracket_laws(self):
        """Test antisymmetry and the Jacobi identity."""
        X = VectorField.from_mapping(self.chart, {"q1": "v1_2", "v2_1": "q1*q2"})
        Y = VectorField.from_mapping(self.chart, {"q2": "q1^2", "v1_2": "v2_2"})
        Z = VectorField.from_mapping(self.chart, {"q1": "q2*v1_1", "v1_1": "1"})
        self.assertTrue((lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero())
        jacobi = (
            lie_bracket(X, lie_bracket(Y, Z))
            + lie_bracket(Y, lie_bracket(Z, X))
            + lie_bracket(Z, lie_bracket(X, Y))
        )
        self.assertTrue(jacobi.is_zero())

    def test_complete_lift(self):
        """Test complete lifts of base fields."""
        lifted = complete_lift(self.Z)
        self.assertEqual(lifted.to_dict(), {"q1": "q2", "v1_1": "v2_1", "v1_2": "v2_2"})
        with self.assertRaises(NotBasic):
            complete_lift(VectorField.from_mapping(self.chart, {"q1": "v1_1"}))

    def test_complete_lift_homomorphism(self):
        """Test that complete lifts preserve brackets."""
        left = lie_bracket(complete_lift(self.Z), complete_lift(self.W))
        right = complete_lift(lie_bracket(self.Z, self.W))
        self.assertTrue(left.equals(right))

    def test_vertical_lift(self):
        """Test vertical lifts."""
        lifted = vertical_lift(self.Z, 2)
        self.assertEqual(lifted.to_dict(), {"v1_2": "q2"})
        self.assertTrue(lifted.is_vertical())


class TestOneForms(unittest.TestCase):
    """Test 1-forms and the exterior derivative."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(1, 2)
        self.f = self.chart.expr("q1^2*v2_1 + sin(q2)")
        self.X = VectorField.from_mapping(self.chart, {"q1": "v1_1", "v2_1": "q2"})

    def test_differential(self):
        """Test df(X) = X(f) and closure of df."""
        df = exterior_derivative(self.chart, self.f)
        self.assertTrue(symbolic_equal(df.evaluate_on(self.X), self.X.apply(self.f)))
        self.assertTrue(df.is_closed())
        self.assertEqual(df.to_dict()["dv2_1"], "q1^2")

    def test_lie_derivative_commutes_with_d(self):
        """Test L_X df = d(X f)."""
        df = exterior_derivative(self.chart, self.f)
        lhs = df.lie_derivative(self.X)
        rhs = exterior_derivative(self.chart, self.X.apply(self.f))
        self.assertTrue(lhs.equals(rhs))

    def test_closure_defects(self):
        """Test the defects of a non-closed form."""
        form = OneForm.from_coefficients(self.chart, {base_var(2): self.chart.q(1)})
        result = form.is_closed()
        self.assertFalse(result)
        self.assertEqual(result.witness.label, "dq1^dq2")
        self.assertTrue(form.is_semi_basic())
        self.assertFalse(exterior_derivative(self.chart, self.f).is_semi_basic())


if __name__ == "__main__":
    unittest.main()
