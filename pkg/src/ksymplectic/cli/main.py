"""
Command-Line Interface

``ksym <command> PROBLEM [options]`` where PROBLEM is a problem file or the
name of a catalog entry. Every command builds a :class:`Report`; the exit
code is 0 when all verdicts hold, 1 on a failing verdict and 2 on usage or
input errors.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from ..config.constants import EXIT_OK, EXIT_USAGE, Grade, Regularity
from ..config.settings import Config, configure_logging, load_or_create_config, set_global_config
from ..exceptions import (
    KSymplecticError,
    NotCartan,
    PotentialReconstructionFailed,
    UsageError,
)
from ..expr.printer import to_string
from ..geometry.fields import VectorField
from ..lagrangian.forms import cartan_one_forms, cartan_two_forms, geometric_el_residual
from ..lagrangian.hessian import hessian, is_regular
from ..lagrangian.lagrangian import energy
from ..numverify.residuals import (
    contracted_sopde_residual,
    divergence_residual,
    el_residual,
    integral_section_residual,
)
from ..numverify.section import DiscreteSection, export_section, sample_analytic
from ..numverify.solver import solve_fd
from ..sopde.euler_lagrange import in_xkl
from ..sopde.integrability import integrability_report
from ..symmetry.converse import (
    classify_current,
    energy_flux_identity,
    generating_field,
    marmo_mukunda_check,
)
from ..symmetry.currents import CurrentTuple, conservation_check_sopde
from ..symmetry.noether import noether_current
from ..symmetry.predicates import is_cartan_symmetry, is_dynamical_symmetry, is_newtonoid
from ..utils.checks import all_hold
from .catalog import catalog_names, catalog_text
from .problem_file import ProblemFile, load_problem, parse_assignments
from .report import Report

logger = logging.getLogger(__name__)


def _field(problem: ProblemFile, ref: str) -> VectorField:
    """Named field of the problem, or an inline ``q1=1, v1_1=...`` field."""
    if ref in problem.vector_fields:
        return problem.field(ref)
    if "=" in ref:
        try:
            return VectorField.from_mapping(problem.chart(), parse_assignments(ref))
        except ValueError as exc:
            raise UsageError(f"Invalid field '{ref}': {exc}") from exc
    return problem.field(ref)


def _current(problem: ProblemFile, ref: str) -> CurrentTuple:
    """Named current of the problem, or inline components separated by ``;``."""
    if ref in problem.currents:
        return problem.current(ref)
    if ";" in ref or problem.k == 1:
        try:
            return CurrentTuple.build(problem.chart(), [part.strip() for part in ref.split(";")])
        except ValueError as exc:
            raise UsageError(f"Invalid current '{ref}': {exc}") from exc
    return problem.current(ref)


def _require(args: argparse.Namespace, option: str) -> str:
    value = getattr(args, option)
    if not value:
        raise UsageError(f"{args.command} needs --{option}")
    return value


def _section(
    problem: ProblemFile, name: str, args: argparse.Namespace, config: Config
) -> DiscreteSection:
    section = sample_analytic(
        problem.chart(),
        problem.solution(name),
        problem.grid_spec(args.grid, config),
        problem.parameter_values(),
        exact=not args.fd,
    )
    return section


def _tolerance(section: DiscreteSection, config: Config) -> float:
    key = "numverify.exact_tolerance" if section.exact else "numverify.fd_tolerance"
    return float(config.get(key))


# Expectations


def run_expectation(
    report: Report, problem: ProblemFile, line: str, args: argparse.Namespace, config: Config
) -> None:
    """Check one ``expect:`` line of a problem file and record its verdict."""
    words = line.split()
    kind, names = words[0], words[1:]
    lagrangian = problem.lagrangian_object()

    if kind == "regular":
        regularity = is_regular(lagrangian, config)
        report.add(line, bool(regularity), regularity.grade, regularity.verdict.value)
    elif kind in ("cartan", "not-cartan"):
        result = is_cartan_symmetry(problem.field(names[0]), lagrangian, config)
        report.add_check(line, result, expected=kind == "cartan")
    elif kind == "in-xkl":
        report.add_check(line, in_xkl(problem.sopde(names[0]), lagrangian, config))
    elif kind == "integrable":
        integrability = integrability_report(problem.sopde(names[0]), config)
        report.add_check(line, all_hold([integrability.symmetric, integrability.closure]))
    elif kind == "conserved":
        f, xi = problem.current(names[0]), problem.sopde(names[1])
        report.add_check(line, conservation_check_sopde(f, xi, config))
    elif kind in ("generated", "not-generated"):
        classification = classify_current(problem.current(names[0]), lagrangian, config=config)
        cartan = classification.generator_is_cartan
        grade = cartan.grade if cartan is not None else Grade.SYMBOLIC
        report.add(
            line,
            classification.generated == (kind == "generated"),
            grade,
            classification.generator.describe(),
        )
    elif kind == "noether":
        try:
            result = noether_current(problem.field(names[0]), lagrangian, config)
        except (NotCartan, PotentialReconstructionFailed) as exc:
            report.add(line, False, detail=str(exc))
            return
        report.add_check(line, result.currents.equals(problem.current(names[1]), config))
    elif kind == "marmo":
        criterion = marmo_mukunda_check(
            problem.field(names[0]), problem.potential(names[0]), lagrangian, config=config
        )
        report.add_check(line, criterion.holds)
    elif kind == "solves":
        section = _section(problem, names[0], args, config)
        residual = el_residual(section, lagrangian, config)
        holds = residual.relative <= _tolerance(section, config)
        report.add(line, holds, Grade.NUMERIC, str(residual))
    elif kind == "integral-section":
        section = _section(problem, names[0], args, config)
        residual = integral_section_residual(problem.sopde(names[1]), section, config)
        holds = residual.relative <= _tolerance(section, config)
        report.add(line, holds, Grade.NUMERIC, str(residual))
    else:
        raise UsageError(f"Unknown expectation '{line}'")


# Commands


def cmd_analyze(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Derived objects of the Lagrangian plus every expectation of the file."""
    lagrangian = problem.lagrangian_object()
    report = Report(command="analyze", problem=problem.name)
    report.inputs = {"chart": str(problem.chart()), "lagrangian": to_string(lagrangian.L)}

    blocks = hessian(lagrangian)
    regularity = is_regular(lagrangian, config)
    omegas = cartan_two_forms(lagrangian)
    report.objects["energy"] = {"E_L": to_string(energy(lagrangian))}
    thetas = cartan_one_forms(lagrangian)
    report.objects["theta"] = {f"theta^{t.direction}": t.to_dict() for t in thetas}
    report.objects["omega"] = {f"omega^{w.direction}": w.to_dict() for w in omegas}
    report.objects["hessian"] = [", ".join(to_string(e) for e in row) for row in blocks.matrix()]
    determinant = regularity.determinant
    report.objects["regularity"] = {
        "verdict": regularity.verdict.value,
        "grade": regularity.grade.value,
        "determinant": to_string(determinant) if determinant is not None else "",
        "assumptions": [f"{to_string(a)} != 0" for a in regularity.assumptions],
    }

    report.add_check("hessian symmetric", blocks.is_symmetric(config))
    for omega in omegas:
        report.add_check(f"omega^{omega.direction} antisymmetric", omega.is_antisymmetric(config))
    for line in problem.expectations:
        run_expectation(report, problem, line, args, config)
    return report


def cmd_check_sopde(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Integrability and membership in X^k_L of one or all SOPDEs."""
    lagrangian = problem.lagrangian_object()
    report = Report(command="check-sopde", problem=problem.name)
    names = [args.sopde] if args.sopde else list(problem.sopdes) or ["zero"]
    report.inputs = {"lagrangian": to_string(lagrangian.L), "sopdes": ", ".join(names)}
    regular = is_regular(lagrangian, config).verdict is Regularity.REGULAR

    for name in names:
        xi = problem.sopde(name)
        integrability = integrability_report(xi, config)
        report.objects[f"sopde {name}"] = xi.to_dict()
        report.add_check(f"{name} symmetric", integrability.symmetric)
        report.add_check(f"{name} closure", integrability.closure)
        report.add(
            f"{name} brackets agree",
            integrability.consistent,
            integrability.brackets.grade,
            f"brackets vanish: {integrability.brackets_vanish}",
        )
        report.add_check(f"{name} in X^k_L", in_xkl(xi, lagrangian, config))
        if regular:
            residual = geometric_el_residual(xi.as_kvector(), lagrangian)
            report.add_check(f"{name} sum i_xi omega = dE_L", residual.is_zero(config))
    return report


def cmd_check_symmetry(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Cartan check of a field; dynamical and Newtonoid checks against a SOPDE."""
    lagrangian = problem.lagrangian_object()
    X = _field(problem, _require(args, "field"))
    report = Report(command="check-symmetry", problem=problem.name)
    report.inputs = {"lagrangian": to_string(lagrangian.L), "field": args.field}
    report.objects["field"] = {
        "components": X.to_dict(),
        "basic": bool(X.is_basic(config)),
        "vertical": bool(X.is_vertical(config)),
    }
    report.add_check("cartan", is_cartan_symmetry(X, lagrangian, config))
    if args.sopde:
        xi = problem.sopde(args.sopde)
        report.inputs["sopde"] = args.sopde
        report.add_check(f"dynamical for {args.sopde}", is_dynamical_symmetry(X, xi, config))
        report.add_check(f"newtonoid for {args.sopde}", is_newtonoid(X, xi, config))
    return report


def cmd_noether(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Noether current of a Cartan symmetry."""
    lagrangian = problem.lagrangian_object()
    X = _field(problem, _require(args, "field"))
    report = Report(command="noether", problem=problem.name)
    report.inputs = {"lagrangian": to_string(lagrangian.L), "field": args.field}
    try:
        result = noether_current(X, lagrangian, config)
    except NotCartan as exc:
        report.add("cartan", False, detail=str(exc))
        return report
    except PotentialReconstructionFailed as exc:
        report.add("potential", False, detail=str(exc), witnesses=[str(form) for form in exc.forms])
        return report

    report.objects["current"] = result.currents.to_dict()
    report.objects["potentials"] = {
        f"g^{a}": to_string(g) for a, g in enumerate(result.potentials, start=1)
    }
    report.objects["forms"] = {
        f"L_X theta^{a}": str(form) for a, form in enumerate(result.forms, start=1)
    }
    report.add_check("certificate", result.certificate)
    if args.current:
        expected = _current(problem, args.current)
        report.add_check(f"matches {args.current}", result.currents.equals(expected, config))
    return report


def cmd_generate_field(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Solve i_X omega^a_L = df^a for a current and grade the result."""
    lagrangian = problem.lagrangian_object()
    f = _current(problem, _require(args, "current"))
    report = Report(command="generate-field", problem=problem.name)
    report.inputs = {"lagrangian": to_string(lagrangian.L), "current": str(f)}

    solution = generating_field(f, lagrangian, config)
    report.objects["generator"] = solution.to_dict()
    report.add(
        "generating field",
        solution.consistent,
        detail=solution.kind.value,
        witnesses=[str(solution.witness)] if solution.witness else [],
    )
    if not solution.consistent:
        return report

    report.add_check("i_X omega = df", solution.verified)
    report.add_check("generator is cartan", is_cartan_symmetry(solution.field, lagrangian, config))
    if args.sopde:
        xi = problem.sopde(args.sopde)
        report.add_check(f"conserved by {args.sopde}", conservation_check_sopde(f, xi, config))
        report.add_check(
            f"X(E_L) = xi_a(f^a) for {args.sopde}",
            energy_flux_identity(solution.field, f, xi, lagrangian, config),
        )
    return report


def cmd_marmo(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Newtonoid criterion pi_xi(X)(L) = xi_a(g^a) over all SOPDEs."""
    lagrangian = problem.lagrangian_object()
    ref = _require(args, "field")
    X = _field(problem, ref)
    potentials = problem.potential(ref)
    xi = problem.sopde(args.sopde) if args.sopde else None
    report = Report(command="marmo", problem=problem.name)
    report.inputs = {
        "lagrangian": to_string(lagrangian.L),
        "field": ref,
        "potentials": "; ".join(potentials),
    }

    criterion = marmo_mukunda_check(X, potentials, lagrangian, xi, config)
    report.objects["criterion"] = criterion.to_dict()
    report.add_check("newtonoid criterion", criterion.holds)
    if criterion.zero_field:
        report.add("cartan field nonzero", False, detail="pi_xi(X) vanishes for vertical X")
    return report


def cmd_verify_numeric(problem: ProblemFile, args: argparse.Namespace, config: Config) -> Report:
    """Residuals of closed-form (or finite-difference) solutions on a grid."""
    lagrangian = problem.lagrangian_object()
    names = [args.solution] if args.solution else list(problem.solutions)
    if not names:
        raise UsageError(f"{problem.source} lists no solutions")
    grid = problem.grid_spec(args.grid, config)
    report = Report(command="verify-numeric", problem=problem.name)
    report.inputs = {
        "lagrangian": to_string(lagrangian.L),
        "grid": str(grid),
        "prolongation": "centered differences" if args.fd or args.solve else "exact",
    }
    current = _current(problem, args.current) if args.current else None
    xi = problem.sopde(args.sopde) if args.sopde else None

    for name in names:
        if args.solve:
            section = solve_fd(lagrangian, grid, problem.solution(name), config=config)
            exact = sample_analytic(
                problem.chart(), problem.solution(name), grid, problem.parameter_values()
            )
            error = float(np.max(np.abs(section.values - exact.values)))
            report.objects[f"{name} solver"] = {**section.metadata, "max_error": error}
        else:
            section = _section(problem, name, args, config)
        tolerance = _tolerance(section, config)

        residual = el_residual(section, lagrangian, config)
        report.objects[f"{name} euler-lagrange"] = residual.to_dict()
        report.add(f"{name} solves", residual.relative <= tolerance, Grade.NUMERIC, str(residual))
        if current is not None:
            divergence = divergence_residual(current, section, config)
            report.objects[f"{name} divergence"] = divergence.to_dict()
            holds = divergence.relative <= tolerance
            report.add(f"{name} conserves {args.current}", holds, Grade.NUMERIC, str(divergence))
        if xi is not None:
            gaps = integral_section_residual(xi, section, config)
            contracted = contracted_sopde_residual(section, xi, lagrangian, config)
            report.objects[f"{name} integral-section"] = gaps.to_dict()
            report.objects[f"{name} contracted"] = contracted.to_dict()
            holds = contracted.relative <= tolerance
            report.add(f"{name} contracted {args.sopde}", holds, Grade.NUMERIC, str(contracted))
        if args.export:
            path = args.export if len(names) == 1 else f"{args.export}.{name}.tsv"
            export_section(section, path, int(config.get("output.decimal_precision")))
            report.objects[f"{name} export"] = {"path": str(path)}
    return report


COMMANDS: Dict[str, Callable[[ProblemFile, argparse.Namespace, Config], Report]] = {
    "analyze": cmd_analyze,
    "check-sopde": cmd_check_sopde,
    "check-symmetry": cmd_check_symmetry,
    "noether": cmd_noether,
    "generate-field": cmd_generate_field,
    "marmo": cmd_marmo,
    "verify-numeric": cmd_verify_numeric,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksym",
        description="Symbolic analysis of k-symplectic Lagrangian field theories.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the report as JSON")
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, handler in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[common], help=handler.__doc__.splitlines()[0])
        sub.add_argument("problem", help="Problem file or catalog entry name")
        sub.add_argument("--field", help="Field name or inline 'q1=1, v1_1=...'")
        sub.add_argument("--current", help="Current name or inline 'f1 ; f2'")
        sub.add_argument("--sopde", help="SOPDE name ('zero' for the free SOPDE)")
        sub.add_argument("--grid", help="h=<float>,extent=<a:b>[,...]")
        sub.add_argument("--solution", help="Solution name (default: all)")
        sub.add_argument("--fd", action="store_true", help="Centered-difference prolongation")
        sub.add_argument("--solve", action="store_true", help="Solve by finite differences")
        sub.add_argument("--export", help="Write the sampled section as tab-separated text")

    listing = subparsers.add_parser(
        "catalog", parents=[common], help="List or show built-in problems"
    )
    listing.add_argument("--show", metavar="NAME", help="Print the problem file of an entry")
    return parser


def _render(report: Report, args: argparse.Namespace, config: Config) -> str:
    if args.json:
        return report.render_json(int(config.get("output.json_indent")))
    return report.render_text()


def _catalog(args: argparse.Namespace, config: Config) -> int:
    if args.show:
        print(catalog_text(args.show), end="")
        return EXIT_OK
    report = Report(command="catalog")
    report.objects["entries"] = catalog_names()
    print(_render(report, args, config))
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        config = load_or_create_config(args.config)
        configure_logging(config, verbose=args.verbose)
        set_global_config(config)
        if args.command == "catalog":
            return _catalog(args, config)
        problem = load_problem(args.problem)
        report = COMMANDS[args.command](problem, args, config)
    except (KSymplecticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(_render(report, args, config))
    logger.info("%s on %s: %s", args.command, problem.name, "pass" if report.passed else "fail")
    return report.exit_code


def main() -> None:
    sys.exit(run())


__all__ = ["COMMANDS", "build_parser", "run", "run_expectation", "main"]
