"""
Tests for the command-line interface, reports and problem files.

Exit codes follow the CLI contract: 0 when every verdict holds, 1 on a
failing verdict, 2 on usage or input errors.
"""

import contextlib
import importlib
import io
import json
import os
import sys
import tempfile
import unittest
from unittest.mock import patch

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksymplectic.cli import (  # noqa: E402
    Report,
    catalog_names,
    catalog_text,
    load_problem,
    parse_assignments,
    parse_grid,
    parse_problem_text,
    run,
)
from ksymplectic.config import Config, Grade  # noqa: E402
from ksymplectic.exceptions import ProblemFileError  # noqa: E402
from ksymplectic.expr import symbolic_equal  # noqa: E402
from ksymplectic.utils import check_zero  # noqa: E402

MINIMAL = """\
name: oscillator
k: 1
n: 1
lagrangian: 1/2*v1_1^2 - 1/2*q1^2
field time: q1=0
solution cosine: cos(t1)
expect: regular
expect: solves cosine
"""


def invoke(*argv):
    """Run the CLI, returning (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCatalog(unittest.TestCase):
    """Test the built-in catalog."""

    def test_names(self):
        """Test the shipped entries."""
        self.assertEqual(
            catalog_names(), ["laplace3", "minimal_surface", "navier", "string", "wave3"]
        )

    def test_unknown_entry(self):
        """Test lookup of a missing entry."""
        with self.assertRaises(KeyError):
            catalog_text("heat")

    def test_catalog_command(self):
        """Test listing and showing entries."""
        code, out, _ = invoke("catalog")
        self.assertEqual(code, 0)
        self.assertIn("- string", out)
        code, out, _ = invoke("catalog", "--show", "string")
        self.assertEqual(code, 0)
        self.assertIn("lagrangian: 1/2*sigma*v1_1^2 - 1/2*tau*v1_2^2", out)
        code, _, err = invoke("catalog", "--show", "heat")
        self.assertEqual(code, 2)
        self.assertIn("No catalog entry", err)


class TestProblemFiles(unittest.TestCase):
    """Test problem-file parsing and validation."""

    def test_parse_minimal(self):
        """Test a small problem file."""
        problem = parse_problem_text(MINIMAL)
        self.assertEqual(problem.name, "oscillator")
        self.assertEqual((problem.k, problem.n), (1, 1))
        self.assertEqual(problem.vector_fields, {"time": {"q1": "0"}})
        self.assertEqual(problem.solutions["cosine"], ["cos(t1)"])
        self.assertEqual(problem.expectations, ["regular", "solves cosine"])

    def test_string_entry(self):
        """Test the vibrating string entry."""
        problem = load_problem("string")
        self.assertEqual(problem.source, "catalog:string")
        self.assertEqual(problem.parameter_values(), {"sigma": 1.0, "tau": 4.0})
        xi = problem.sopde("xivs")
        self.assertEqual(xi.coefficient(1, 2, 1), xi.coefficient(1, 1, 2))
        self.assertEqual(problem.current("noether").to_list(), ["sigma*v1_1", "-tau*v1_2"])
        self.assertEqual(problem.potential("dilation"), ["0", "0"])
        self.assertEqual(problem.grid_spec().shape, (51, 51))

    def test_syntax_errors_carry_line_numbers(self):
        """Test error locations."""
        with self.assertRaises(ProblemFileError) as ctx:
            parse_problem_text("k: 1\n  1,1,1: 0\n", "bad.ksym")
        self.assertEqual(ctx.exception.line, 2)
        self.assertTrue(str(ctx.exception).startswith("bad.ksym:2: "))
        with self.assertRaises(ProblemFileError) as ctx:
            parse_problem_text("k: 1\nn: 1\ncolour: red\n")
        self.assertEqual(ctx.exception.line, 3)

    def test_invalid_content(self):
        """Test validation of expressions and expectations."""
        bad_expression = MINIMAL.replace("1/2*v1_1^2", "1/2*v1_2^2")
        with self.assertRaises(ProblemFileError):
            parse_problem_text(bad_expression)
        with self.assertRaises(ProblemFileError):
            parse_problem_text(MINIMAL + "expect: cartan missing\n")
        with self.assertRaises(ProblemFileError):
            parse_problem_text(MINIMAL + "expect: levitates\n")
        with self.assertRaises(ProblemFileError):
            parse_problem_text(MINIMAL + "solution cosine: sin(t1)\n")

    def test_missing_file(self):
        """Test a path that is neither a file nor a catalog entry."""
        with self.assertRaises(ProblemFileError):
            load_problem("no/such/problem.ksym")

    def test_parse_grid(self):
        """Test grid option parsing."""
        grid = parse_grid("h=0.25, extent=0:1", 2)
        self.assertEqual(grid.shape, (5, 5))
        grid = parse_grid("h=0.25,h=0.5,extent=0:1,extent=-1:1", 2)
        self.assertEqual(grid.shape, (5, 5))
        self.assertEqual(grid.extents[1], (-1.0, 1.0))
        for text in ("h", "h=0.1,extent=1", "step=0.1", "h=0.1,h=0.1,h=0.1"):
            with self.subTest(text=text):
                with self.assertRaises(ValueError):
                    parse_grid(text, 2)

    def test_default_grid_from_config(self):
        """Test the configured grid for a file without a grid line."""
        config = Config()
        config.set("numverify.default_step", 0.25)
        config.set("numverify.default_extent", [0.0, 2.0])
        problem = parse_problem_text(MINIMAL)
        self.assertEqual(problem.grid_spec(config=config).shape, (9,))
        self.assertEqual(problem.grid_spec("h=0.2,extent=0:1", config).shape, (6,))

    def test_parse_assignments(self):
        """Test inline field parsing."""
        self.assertEqual(parse_assignments("q1=1, v1_1 = q1"), {"q1": "1", "v1_1": "q1"})
        with self.assertRaises(ValueError):
            parse_assignments("q1")


class TestReport(unittest.TestCase):
    """Test report assembly and rendering."""

    def test_verdicts(self):
        """Test pass/fail bookkeeping and expected failures."""
        report = Report(command="check")
        report.add("always", True)
        self.assertEqual(report.exit_code, 0)
        failing = check_zero([("x", load_problem("string").chart().expr("q1"))])
        report.add_check("negated", failing, expected=False)
        self.assertTrue(report.passed)
        report.add_check("plain", failing)
        self.assertEqual(report.exit_code, 1)
        self.assertEqual(report.verdicts[-1].witnesses, ["x: q1"])

    def test_rendering(self):
        """Test text and JSON output."""
        report = Report(command="check", problem="p")
        report.objects["current"] = {"f^1": "v1_1"}
        report.add("numeric", True, Grade.NUMERIC, "max_abs: 0")
        text = report.render_text()
        self.assertIn("[current]\n  f^1: v1_1", text)
        self.assertIn("numeric: holds (numeric) max_abs: 0", text)
        self.assertTrue(text.endswith("result: pass"))
        data = json.loads(report.render_json())
        self.assertEqual(data["verdicts"][0]["grade"], "numeric")


class TestCommands(unittest.TestCase):
    """Test the subcommands on the vibrating string."""

    def test_usage_errors(self):
        """Test exit code 2 for usage and input errors."""
        self.assertEqual(invoke()[0], 2)
        self.assertEqual(invoke("transmogrify", "string")[0], 2)
        self.assertEqual(invoke("check-symmetry", "string")[0], 2)
        self.assertEqual(invoke("analyze", "no/such/file.ksym")[0], 2)
        self.assertEqual(invoke("noether", "string", "--field", "q7=1")[0], 2)

    def test_input_errors(self):
        """Test exit code 2 for bad grids, unknown names and invalid configuration."""
        self.assertEqual(invoke("verify-numeric", "string", "--grid", "h=abc")[0], 2)
        code, _, err = invoke("verify-numeric", "string", "--grid", "h=0.5,extent=0:1")
        self.assertEqual(code, 2)
        self.assertIn("Invalid grid", err)
        code, _, err = invoke("check-sopde", "string", "--sopde", "missing")
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith("error: No sopde 'missing'"))
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "bad.yaml")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("output:\n  json_indent: -1\n")
            code, _, err = invoke("catalog", "--config", path)
        self.assertEqual(code, 2)
        self.assertIn("output.json_indent", err)

    def test_internal_errors_propagate(self):
        """Test that failures outside the toolkit's error types are not usage errors."""
        commands = importlib.import_module("ksymplectic.cli.main")
        with patch.object(commands, "el_residual", side_effect=RuntimeError("broken")):
            with self.assertRaises(RuntimeError):
                invoke("verify-numeric", "string", "--solution", "travelling")
        with patch.object(commands, "sample_analytic", side_effect=ValueError("broken")):
            with self.assertRaises(ValueError):
                invoke("verify-numeric", "string", "--solution", "travelling")

    def test_help(self):
        """Test that help exits cleanly."""
        code, out, _ = invoke("--help")
        self.assertEqual(code, 0)
        self.assertIn("ksym", out)

    def test_analyze_json(self):
        """Test the analysis report of the string."""
        code, out, _ = invoke("analyze", "string", "--json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertTrue(all(v["holds"] for v in data["verdicts"]))
        regularity = data["objects"]["regularity"]
        self.assertEqual(regularity["verdict"], "regular")
        self.assertEqual(regularity["determinant"], "-sigma*tau")
        chart = load_problem("string").chart()
        energy = chart.expr(data["objects"]["energy"]["E_L"])
        self.assertTrue(
            symbolic_equal(energy, chart.expr("1/2*sigma*v1_1^2 - 1/2*tau*v1_2^2")).symbolic
        )
        self.assertEqual(data["objects"]["omega"]["omega^1"], {"dq1^dv1_1": "sigma"})

    def test_analyze_text(self):
        """Test the text rendering of an inline problem file."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "oscillator.ksym")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(MINIMAL)
            code, out, _ = invoke("analyze", path)
        self.assertEqual(code, 0)
        self.assertIn("problem: oscillator", out)
        self.assertIn("result: pass", out)

    def test_noether(self):
        """Test the Noether current of the translation."""
        code, out, _ = invoke(
            "noether", "string", "--field", "dq", "--current", "noether", "--json"
        )
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["objects"]["current"], {"f^1": "sigma*v1_1", "f^2": "-tau*v1_2"})
        self.assertEqual(data["objects"]["potentials"], {"g^1": "0", "g^2": "0"})

    def test_noether_not_cartan(self):
        """Test exit code 1 for a field that is no Cartan symmetry."""
        code, out, _ = invoke("noether", "string", "--field", "dilation")
        self.assertEqual(code, 1)
        self.assertIn("cartan: fails", out)

    def test_check_symmetry_inline_field(self):
        """Test an inline field against a named SOPDE."""
        code, out, _ = invoke("check-symmetry", "string", "--field", "q1=1", "--sopde", "xivs")
        self.assertEqual(code, 0)
        self.assertIn("newtonoid for xivs: holds", out)

    def test_check_sopde(self):
        """Test integrability and membership of the string SOPDE."""
        code, out, _ = invoke("check-sopde", "string", "--sopde", "xivs")
        self.assertEqual(code, 0)
        self.assertIn("xivs in X^k_L: holds", out)

    def test_generate_field(self):
        """Test generation of the Noether current and the non-Cartan current."""
        code, out, _ = invoke("generate-field", "string", "--current", "noether", "--sopde", "xivs")
        self.assertEqual(code, 0)
        self.assertIn("generator is cartan: holds", out)
        code, out, _ = invoke("generate-field", "string", "--current", "noncsym", "--json")
        self.assertEqual(code, 1)
        data = json.loads(out)
        self.assertEqual(data["verdicts"][0]["holds"], False)
        self.assertTrue(data["verdicts"][0]["witnesses"][0].startswith("df^1/dv1_2"))

    def test_marmo(self):
        """Test the Newtonoid criterion of the translation."""
        self.assertEqual(invoke("marmo", "string", "--field", "dq")[0], 0)

    def test_verify_numeric_export(self):
        """Test numeric residuals and section export."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "travelling.tsv")
            code, out, _ = invoke(
                "verify-numeric",
                "string",
                "--solution",
                "travelling",
                "--current",
                "noether",
                "--grid",
                "h=0.05,extent=0:1",
                "--export",
                path,
            )
            self.assertTrue(os.path.isfile(path))
        self.assertEqual(code, 0)
        self.assertIn("travelling conserves noether: holds (numeric)", out)


if __name__ == "__main__":
    unittest.main()
