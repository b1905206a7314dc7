"""
Tests for symmetries, Newtonoid fields and conservation laws.

Covers the Cartan and dynamical symmetry predicates, the Newtonoid
projector laws over seeded random instances, Noether currents and the
converse analysis (generating fields and the Newtonoid criterion).
"""

import os
import sys
import unittest

import numpy as np

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksymplectic.config import SolutionKind  # noqa: E402
from ksymplectic.exceptions import (  # noqa: E402
    NotCartan,
    NotNewtonoid,
    PotentialReconstructionFailed,
)
from ksymplectic.expr import (  # noqa: E402
    ZERO,
    Const,
    Sym,
    base_var,
    symbolic_equal,
    velocity_var,
)
from ksymplectic.geometry import OneForm, VectorField, new_chart  # noqa: E402
from ksymplectic.lagrangian import Lagrangian  # noqa: E402
from ksymplectic.sopde import make_sopde, zero_sopde  # noqa: E402
from ksymplectic.symmetry import (  # noqa: E402
    CurrentTuple,
    classify_current,
    complete_lift_currents,
    conservation_check_sopde,
    energy_flux_identity,
    generating_field,
    is_cartan_symmetry,
    is_dynamical_symmetry,
    is_newtonoid,
    marmo_mukunda_check,
    noether_current,
    project_newtonoid,
    radial_potential,
    sopde_divergence,
    star_product,
)

STRING_SOPDE = {
    "1,1,1": "tau*(sigma*v1_1^2 + tau*v1_2^2)",
    "1,1,2": "2*sigma*tau*v1_1*v1_2",
    "1,2,1": "2*sigma*tau*v1_1*v1_2",
    "1,2,2": "sigma*(sigma*v1_1^2 + tau*v1_2^2)",
}
NONCSYM = ("-2*sigma*v1_1*v1_2", "sigma*v1_1^2 + tau*v1_2^2")
PROJECTOR_INSTANCES = 50


class StringFixture(unittest.TestCase):
    """Shared vibrating-string setup."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(2, 1, ("sigma", "tau"))
        self.lagrangian = Lagrangian.from_text(self.chart, "1/2*sigma*v1_1^2 - 1/2*tau*v1_2^2")
        self.xi = make_sopde(self.chart, STRING_SOPDE)
        self.dq = VectorField.from_mapping(self.chart, {"q1": 1})
        self.dilation = VectorField.from_mapping(
            self.chart, {"q1": "q1", "v1_1": "v1_1", "v1_2": "v1_2"}
        )


class TestPredicates(StringFixture):
    """Test Cartan, dynamical and Newtonoid predicates."""

    def test_translation_is_cartan(self):
        """Test that d/dq is a Cartan symmetry of the string."""
        self.assertTrue(is_cartan_symmetry(self.dq, self.lagrangian))
        self.assertTrue(is_dynamical_symmetry(self.dq, self.xi))
        self.assertTrue(is_newtonoid(self.dq, self.xi))

    def test_dilation(self):
        """Test a dynamical symmetry of the free SOPDE that is not Cartan."""
        self.assertFalse(is_cartan_symmetry(self.dilation, self.lagrangian))
        self.assertTrue(is_dynamical_symmetry(self.dilation, zero_sopde(self.chart)))
        self.assertFalse(is_dynamical_symmetry(self.dilation, self.xi))

    def test_energy_preserving_non_cartan(self):
        """Test a field with X(E_L) = 0 that fails the closure conditions."""
        X = VectorField.from_mapping(self.chart, {"q1": "v1_1"})
        result = is_cartan_symmetry(X, self.lagrangian)
        self.assertFalse(result)
        self.assertTrue(all("X(E_L)" not in w.label for w in result.witnesses))

    def test_newtonoid_witness(self):
        """Test the witness of a field that is not Newtonoid."""
        X = VectorField.from_mapping(self.chart, {"q1": "q1"})
        result = is_newtonoid(X, self.xi)
        self.assertFalse(result)
        self.assertEqual(result.witness.label, "X^1_1 - xi_1(X^1)")


def random_polynomial(rng, chart, terms=3):
    """Random polynomial of degree <= 2 with small integer coefficients."""
    coordinates = chart.coordinates()
    total = ZERO
    for _ in range(terms):
        monomial = Const(int(rng.integers(-3, 4)))
        for index in rng.integers(0, len(coordinates), size=int(rng.integers(0, 3))):
            monomial = monomial * Sym(coordinates[int(index)])
        total = total + monomial
    return total


class TestNewtonoidProjector(unittest.TestCase):
    """Test the projector laws over seeded random instances."""

    def setUp(self):
        """Set up test fixtures."""
        self.chart = new_chart(2, 2)
        self.rng = np.random.default_rng(20140301)

    def random_field(self):
        chart = self.chart
        base = [random_polynomial(self.rng, chart) for _ in range(chart.n)]
        fiber = [
            [random_polynomial(self.rng, chart) for _ in range(chart.k)] for _ in range(chart.n)
        ]
        return VectorField.build(chart, base, fiber)

    def random_sopde(self):
        chart = self.chart
        return make_sopde(
            chart,
            {
                (i, a, b): random_polynomial(self.rng, chart)
                for i in range(1, chart.n + 1)
                for a in range(1, chart.k + 1)
                for b in range(1, chart.k + 1)
            },
        )

    def test_projector_laws(self):
        """Test idempotence, composition, kernel and image of the projector."""
        failures = 0
        for instance in range(PROJECTOR_INSTANCES):
            X, xi, other = self.random_field(), self.random_sopde(), self.random_sopde()
            projected = project_newtonoid(X, xi)
            vertical = X - VectorField.build(self.chart, X.base)
            checks = [
                project_newtonoid(projected, xi).equals(projected),
                project_newtonoid(project_newtonoid(X, other), xi).equals(projected),
                project_newtonoid(vertical, xi).is_zero(),
                is_newtonoid(projected, xi),
                (X - projected).is_vertical(),
            ]
            if not all(checks):
                failures += 1
        self.assertEqual(failures, 0)

    def test_star_product(self):
        """Test f * X = pi_xi(fX) on Newtonoid fields."""
        for _ in range(5):
            X, xi = self.random_field(), self.random_sopde()
            f = random_polynomial(self.rng, self.chart)
            newtonoid = project_newtonoid(X, xi)
            product = star_product(f, newtonoid, xi)
            self.assertTrue(is_newtonoid(product, xi))
            self.assertTrue(product.equals(project_newtonoid(newtonoid.scale(f), xi)))

    def test_star_product_needs_newtonoid(self):
        """Test the star product on a non-Newtonoid field."""
        X = VectorField.from_mapping(self.chart, {"q1": "q2"})
        with self.assertRaises(NotNewtonoid):
            star_product("q1", X, zero_sopde(self.chart))


class TestCurrents(StringFixture):
    """Test currents and their conservation along SOPDEs."""

    def test_build(self):
        """Test construction and printing."""
        f = CurrentTuple.build(self.chart, NONCSYM)
        self.assertEqual(len(f), 2)
        self.assertEqual(f.to_dict()["f^2"], "sigma*v1_1^2 + tau*v1_2^2")
        with self.assertRaises(ValueError):
            CurrentTuple.build(self.chart, ["v1_1"])
        with self.assertRaises(IndexError):
            f[3]

    def test_noncsym_conserved(self):
        """Test xi_a(f^a) = 0 for the non-Cartan conservation law."""
        f = CurrentTuple.build(self.chart, NONCSYM)
        self.assertEqual(str(sopde_divergence(f, self.xi)), "0")
        self.assertTrue(conservation_check_sopde(f, self.xi))

    def test_energy_flux_identity(self):
        """Test X(E_L) = xi_a(f^a) for a Noether current."""
        f = CurrentTuple.build(self.chart, ["sigma*v1_1", "-tau*v1_2"])
        self.assertTrue(energy_flux_identity(self.dq, f, self.xi, self.lagrangian))


class TestNoether(StringFixture):
    """Test Noether currents of Cartan symmetries."""

    def test_string_current(self):
        """Test the current of d/dq."""
        result = noether_current(self.dq, self.lagrangian)
        expected = CurrentTuple.build(self.chart, ["sigma*v1_1", "-tau*v1_2"])
        self.assertTrue(result.currents.equals(expected).holds)
        self.assertEqual([str(g) for g in result.potentials], ["0", "0"])
        self.assertTrue(result.certificate)
        self.assertEqual(result.to_dict()["currents"], {"f^1": "sigma*v1_1", "f^2": "-tau*v1_2"})

    def test_not_cartan(self):
        """Test that non-Cartan fields are rejected."""
        with self.assertRaises(NotCartan):
            noether_current(self.dilation, self.lagrangian)

    def test_gauge_term_potential(self):
        """Test a nonzero potential from a total-derivative term."""
        chart = new_chart(1, 1)
        lagrangian = Lagrangian.from_text(chart, "v1_1^2/2 + q1*v1_1")
        X = VectorField.from_mapping(chart, {"q1": 1})
        result = noether_current(X, lagrangian)
        self.assertEqual(str(result.potentials[0]), "q1")
        self.assertEqual(result.currents.to_list(), ["v1_1"])

    def test_potential_outside_polynomial_class(self):
        """Test the failure carrying the closed forms."""
        chart = new_chart(1, 1)
        lagrangian = Lagrangian.from_text(chart, "v1_1^2/2 + sin(q1)*v1_1")
        X = VectorField.from_mapping(chart, {"q1": 1})
        with self.assertRaises(PotentialReconstructionFailed) as ctx:
            noether_current(X, lagrangian)
        self.assertEqual(len(ctx.exception.forms), 1)
        self.assertEqual(ctx.exception.forms[0].to_dict(), {"dq1": "cos(q1)"})

    def test_radial_potential(self):
        """Test radial integration of a closed polynomial form."""
        chart = new_chart(1, 1, ("m",))
        form = OneForm.from_coefficients(
            chart, {base_var(1): chart.expr("2*m*q1"), velocity_var(1, 1): chart.expr("v1_1/m")}
        )
        expected = chart.expr("m*q1^2 + v1_1^2/(2*m)")
        self.assertTrue(symbolic_equal(radial_potential(form), expected).symbolic)

    def test_complete_lift_currents(self):
        """Test currents of a base field through its lifts."""
        Z = VectorField.from_mapping(self.chart, {"q1": 1})
        currents = complete_lift_currents(Z, [0, 0], self.lagrangian)
        self.assertEqual(currents.to_list(), ["sigma*v1_1", "-tau*v1_2"])
        with self.assertRaises(NotCartan):
            complete_lift_currents(
                VectorField.from_mapping(self.chart, {"q1": "q1"}), [0, 0], self.lagrangian
            )


class TestConverse(StringFixture):
    """Test generating fields, classification and the Newtonoid criterion."""

    def test_generating_field_of_noether_current(self):
        """Test that the string current is generated by d/dq."""
        f = CurrentTuple.build(self.chart, ["sigma*v1_1", "-tau*v1_2"])
        solution = generating_field(f, self.lagrangian)
        self.assertEqual(solution.kind, SolutionKind.UNIQUE)
        self.assertTrue(solution.contains(self.dq))
        self.assertEqual(set(solution.field.to_dict()), {"q1"})
        self.assertTrue(symbolic_equal(solution.field.component(base_var(1)), Const(1)).symbolic)
        self.assertEqual([str(a) for a in solution.assumptions], ["sigma", "tau"])
        self.assertTrue(solution.verified)
        self.assertTrue(is_cartan_symmetry(solution.field, self.lagrangian))

    def test_noncsym_not_generated(self):
        """Test the witness for the non-Cartan conservation law."""
        f = CurrentTuple.build(self.chart, NONCSYM)
        solution = generating_field(f, self.lagrangian)
        self.assertEqual(solution.kind, SolutionKind.INCONSISTENT)
        self.assertEqual(solution.witness.label, "df^1/dv1_2")
        self.assertEqual(str(solution.witness.residual), "-2*sigma*v1_1")
        self.assertIn("Inconsistent", solution.describe())
        self.assertFalse(solution.contains(self.dq))

    def test_non_constant_pivots(self):
        """Test that non-constant pivots are reported as assumptions."""
        chart = new_chart(1, 2)
        lagrangian = Lagrangian.from_text(chart, "v1_1^2/2 + v2_1^4")
        f = CurrentTuple.build(chart, ["v1_1"])
        solution = generating_field(f, lagrangian)
        self.assertTrue(solution.consistent)
        self.assertTrue(solution.contains(VectorField.from_mapping(chart, {"q1": 1})))
        self.assertTrue(solution.assumptions)

    def test_classify(self):
        """Test conservation grades of currents."""
        f = CurrentTuple.build(self.chart, NONCSYM)
        noncsym = classify_current(f, self.lagrangian, self.xi)
        self.assertEqual(noncsym.grades, ["sopde-conserved"])
        noether = classify_current(
            CurrentTuple.build(self.chart, ["sigma*v1_1", "-tau*v1_2"]), self.lagrangian, self.xi
        )
        self.assertEqual(noether.grades, ["sopde-conserved", "generated"])

    def test_wave_triples_not_generated(self):
        """Test that none of the wave-equation triples is generated."""
        chart = new_chart(3, 1, ("c",))
        lagrangian = Lagrangian.from_text(chart, "1/2*(v1_1^2 - c*v1_2^2 - c*v1_3^2)")
        free = zero_sopde(chart)
        triples = [
            ["v1_1^2 + c*v1_2^2 + c*v1_3^2", "-2*c*v1_1*v1_2", "-2*c*v1_1*v1_3"],
            ["2*v1_1*v1_2", "-v1_1^2 - c*v1_2^2 + c*v1_3^2", "-2*c*v1_2*v1_3"],
            ["2*v1_1*v1_3", "-2*c*v1_2*v1_3", "-v1_1^2 + c*v1_2^2 - c*v1_3^2"],
        ]
        for components in triples:
            with self.subTest(f1=components[0]):
                f = CurrentTuple.build(chart, components)
                self.assertTrue(conservation_check_sopde(f, free))
                self.assertEqual(generating_field(f, lagrangian).kind, SolutionKind.INCONSISTENT)

    def test_newtonoid_criterion(self):
        """Test the criterion for d/dq with vanishing potentials."""
        report = marmo_mukunda_check(self.dq, [0, 0], self.lagrangian)
        self.assertTrue(report)
        self.assertEqual(set(report.coefficients), {"constant", "w1_1_1", "w1_1_2", "w1_2_2"})
        self.assertTrue(all(str(c) == "0" for c in report.coefficients.values()))
        self.assertEqual(report.currents.to_list(), ["sigma*v1_1", "-tau*v1_2"])
        self.assertTrue(report.cartan_field.equals(self.dq))
        self.assertFalse(report.zero_field)

    def test_newtonoid_criterion_failure(self):
        """Test a field whose projection does not preserve L."""
        X = VectorField.from_mapping(self.chart, {"q1": "q1"})
        report = marmo_mukunda_check(X, [0, 0], self.lagrangian)
        self.assertFalse(report)
        self.assertEqual(report.holds.witness.label, "constant")
        self.assertIsNone(report.currents)

    def test_newtonoid_criterion_vertical(self):
        """Test a vertical field, whose Cartan field is zero."""
        X = VectorField.from_mapping(self.chart, {"v1_1": 1})
        report = marmo_mukunda_check(X, [0, 0], self.lagrangian, self.xi)
        self.assertTrue(report)
        self.assertTrue(report.zero_field)
        self.assertTrue(report.cartan_field.is_zero())


if __name__ == "__main__":
    unittest.main()
