"""
Tests for SOPDEs, Euler-Lagrange conditions and integrability.
"""

import os
import sys
import unittest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksymplectic.exceptions import MissingCoefficient  # noqa: E402
from ksymplectic.expr import symbolic_equal  # noqa: E402
from ksymplectic.geometry import KVectorField, VectorField, new_chart  # noqa: E402
from ksymplectic.lagrangian import Lagrangian, geometric_el_residual  # noqa: E402
from ksymplectic.sopde import (  # noqa: E402
    Sopde,
    el_operator,
    formal_sopde,
    hessian_form_residual,
    in_xkl,
    integrability_report,
    is_sopde,
    make_sopde,
    satisfies_liouville_per_direction,
    satisfies_liouville_sum,
    xkl_residual,
    zero_sopde,
)

STRING_SOPDE = {
    "1,1,1": "tau*(sigma*v1_1^2 + tau*v1_2^2)",
    "1,1,2": "2*sigma*tau*v1_1*v1_2",
    "1,2,1": "2*sigma*tau*v1_1*v1_2",
    "1,2,2": "sigma*(sigma*v1_1^2 + tau*v1_2^2)",
}


class StringFixture(unittest.TestCase):
    """Shared vibrating-string setup."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(2, 1, ("sigma", "tau"))
        self.lagrangian = Lagrangian.from_text(self.chart, "1/2*sigma*v1_1^2 - 1/2*tau*v1_2^2")
        self.xi = make_sopde(self.chart, STRING_SOPDE)


class TestSopdeConstruction(StringFixture):
    """Test building SOPDEs and reading them back."""

    def test_coefficients(self):
        """Test coefficient access and printing."""
        self.assertEqual(self.xi.coefficient(1, 1, 2), self.chart.expr("2*sigma*tau*v1_1*v1_2"))
        self.assertEqual(len(self.xi.to_dict()), 4)
        self.assertEqual(self.xi.field(2).base, (self.chart.v(1, 2),))

    def test_tuple_keys(self):
        """Test tuple keys and numbers as coefficients."""
        xi = make_sopde(self.chart, {(1, 1, 1): 0, (1, 1, 2): 0, (1, 2, 1): 0, (1, 2, 2): 0})
        self.assertEqual(xi, zero_sopde(self.chart))

    def test_invalid_tables(self):
        """Test missing and malformed coefficients."""
        partial = dict(STRING_SOPDE)
        del partial["1,2,1"]
        with self.assertRaises(MissingCoefficient):
            make_sopde(self.chart, partial)
        with self.assertRaises(ValueError):
            make_sopde(self.chart, {"1,1": "0"})
        with self.assertRaises(ValueError):
            make_sopde(self.chart, {**STRING_SOPDE, "1,3,1": "0"})

    def test_kvector_round_trip(self):
        """Test conversion to and from k-vector fields."""
        xi = self.xi.as_kvector()
        self.assertTrue(is_sopde(xi))
        self.assertEqual(Sopde.from_kvector(xi), self.xi)

    def test_formal_sopde(self):
        """Test the SOPDE of formal jet symbols."""
        formal = formal_sopde(self.chart)
        self.assertEqual(formal.coefficient(1, 2, 1), self.chart.w(1, 1, 2))
        self.assertTrue(integrability_report(formal).symmetric)


class TestSecondOrderCondition(StringFixture):
    """Test the SOPDE conditions on k-vector fields."""

    def test_liouville_conditions(self):
        """Test J^a(xi_a) = C summed and per direction."""
        xi = self.xi.as_kvector()
        self.assertTrue(satisfies_liouville_sum(xi))
        self.assertTrue(satisfies_liouville_per_direction(xi))

    def test_not_a_sopde(self):
        """Test a k-vector field with swapped base components."""
        swapped = KVectorField(
            (
                VectorField.from_mapping(self.chart, {"q1": "v1_2"}),
                VectorField.from_mapping(self.chart, {"q1": "v1_1"}),
            )
        )
        result = is_sopde(swapped)
        self.assertFalse(result)
        self.assertEqual(result.witness.label, "xi_1 base component 1")
        self.assertFalse(satisfies_liouville_sum(swapped))
        self.assertFalse(satisfies_liouville_per_direction(swapped))
        with self.assertRaises(ValueError):
            Sopde.from_kvector(swapped)


class TestEulerLagrange(StringFixture):
    """Test membership in X^k_L."""

    def test_string_sopde_in_xkl(self):
        """Test sigma*xi_11 - tau*xi_22 = 0."""
        residuals = xkl_residual(self.xi, self.lagrangian)
        self.assertEqual([str(r) for r in residuals], ["0"])
        self.assertTrue(in_xkl(self.xi, self.lagrangian))
        self.assertTrue(in_xkl(zero_sopde(self.chart), self.lagrangian))

    def test_residual_forms_agree(self):
        """Test that both residual forms agree on arbitrary SOPDEs."""
        xi = make_sopde(self.chart, {"1,1,1": "q1", "1,1,2": "v1_1", "1,2,1": "v1_2", "1,2,2": "1"})
        for direct, hessian_form in zip(
            xkl_residual(xi, self.lagrangian), hessian_form_residual(xi, self.lagrangian)
        ):
            self.assertTrue(symbolic_equal(direct, hessian_form).symbolic)
        result = in_xkl(xi, self.lagrangian)
        self.assertFalse(result)
        self.assertEqual(result.witness.label, "equation 1")

    def test_geometric_equation(self):
        """Test that SOPDEs in X^k_L solve sum i_xi omega = dE_L."""
        residual = geometric_el_residual(self.xi.as_kvector(), self.lagrangian)
        self.assertTrue(residual.is_zero())

    def test_el_operator(self):
        """Test the Euler-Lagrange operator with jet symbols."""
        (operator,) = el_operator(self.lagrangian)
        expected = self.chart.expr("sigma*w1_1_1 - tau*w1_2_2", allow_formal=True)
        self.assertEqual(operator, expected)

    def test_el_operator_with_potential(self):
        """Test the operator of a Klein-Gordon type Lagrangian."""
        chart = new_chart(2, 1, ("m",))
        lagrangian = Lagrangian.from_text(chart, "v1_1^2/2 - v1_2^2/2 - m^2*q1^2/2")
        (operator,) = el_operator(lagrangian)
        expected = chart.expr("w1_1_1 - w1_2_2 + m^2*q1", allow_formal=True)
        self.assertTrue(symbolic_equal(operator, expected).symbolic)


class TestIntegrability(StringFixture):
    """Test symmetry and closure of SOPDE coefficients."""

    def test_string_sopde_integrable(self):
        """Test all three integrability flags."""
        report = integrability_report(self.xi)
        self.assertTrue(report.integrable)
        self.assertTrue(report.brackets_vanish)
        self.assertTrue(report.consistent)
        self.assertTrue(report)

    def test_non_symmetric(self):
        """Test coefficients that are not symmetric in the directions."""
        xi = make_sopde(self.chart, {"1,1,1": 0, "1,1,2": 1, "1,2,1": 0, "1,2,2": 0})
        report = integrability_report(xi)
        self.assertFalse(report.symmetric)
        self.assertEqual(report.symmetric.witness.label, "(1,1,2)")
        self.assertFalse(report.brackets_vanish)
        self.assertTrue(report.consistent)

    def test_not_closed(self):
        """Test a symmetric SOPDE in X^k_L that fails closure."""
        xi = make_sopde(
            self.chart, {"1,1,1": "q1", "1,1,2": 0, "1,2,1": 0, "1,2,2": "sigma*q1/tau"}
        )
        self.assertTrue(in_xkl(xi, self.lagrangian))
        report = integrability_report(xi)
        self.assertTrue(report.symmetric)
        self.assertFalse(report.closure)
        self.assertEqual(report.closure.witness.label, "(1,1,2,1)")
        self.assertFalse(report.brackets_vanish)
        self.assertFalse(report.integrable)
        self.assertIn("closure", report.to_dict())


if __name__ == "__main__":
    unittest.main()
