#!/usr/bin/env python3
"""
Convergence Study Script

Measures the Euler-Lagrange residual of every closed-form catalog solution
under centered-difference prolongation on successively halved grids, plus
the divergence of the vibrating string's non-Cartan current. Second-order
stencils should reduce each residual by a factor close to 4 per halving.

Usage:
    python scripts/convergence_study.py

Output:
    - data/processed/convergence_study.csv: One row per case and grid
    - data/processed/convergence_summary.json: Ratios and observed orders
"""

import json
import os
import sys
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksymplectic.cli import catalog, load_problem  # noqa: E402
from ksymplectic.config.constants import CONVERGENCE_RATIO  # noqa: E402
from ksymplectic.numverify import (  # noqa: E402
    ConvergenceStudy,
    GridSpec,
    convergence_study,
    divergence_residual,
    el_residual,
    sample_analytic,
)


class ConvergenceRunner:
    """
    Runs convergence studies over the catalog.
    """

    def __init__(self, base_step: float = 0.1, levels: int = 3, output_dir: Optional[str] = None):
        """
        Initialize the runner.

        Args:
            base_step: Step of the coarsest grid in every direction
            levels: Number of grids per study
            output_dir: Where results are written (default: data/processed)
        """
        if output_dir is None:
            output_dir = os.path.join(os.path.dirname(__file__), "..", "data", "processed")
        self.base_step = base_step
        self.levels = levels
        self.output_dir = output_dir
        self.studies: Dict[str, ConvergenceStudy] = {}

    def _run(self, label: str, k: int, measure: Callable[[GridSpec], float]) -> None:
        print(f"  {label}...")
        self.studies[label] = convergence_study(
            measure, GridSpec.uniform(k, self.base_step), self.levels
        )

    def run_solutions(self) -> None:
        """Euler-Lagrange residual of every catalog solution."""
        for problem in catalog():
            lagrangian = problem.lagrangian_object()
            for name in problem.solutions:

                def measure(grid, problem=problem, name=name, lagrangian=lagrangian):
                    section = sample_analytic(
                        problem.chart(),
                        problem.solution(name),
                        grid,
                        problem.parameter_values(),
                        exact=False,
                    )
                    return el_residual(section, lagrangian).max_abs

                self._run(f"{problem.name}/{name} euler-lagrange", problem.k, measure)

    def run_divergence(self) -> None:
        """Divergence of the non-Cartan string current along the travelling wave."""
        string = load_problem("string")
        current = string.current("noncsym")

        def measure(grid):
            section = sample_analytic(
                string.chart(),
                string.solution("travelling"),
                grid,
                string.parameter_values(),
                exact=False,
            )
            return divergence_residual(current, section).max_abs

        self._run("string/travelling divergence noncsym", string.k, measure)

    def to_frame(self) -> pd.DataFrame:
        """All studies in one table."""
        frames = []
        for label, study in self.studies.items():
            frame = study.to_frame()
            frame.insert(0, "case", label)
            frames.append(frame)
        return pd.concat(frames, ignore_index=True)

    @staticmethod
    def observed_order(study: ConvergenceStudy) -> float:
        """Slope of log(residual) against log(step)."""
        residuals = np.asarray(study.residuals)
        if np.any(residuals <= 0):
            return float("inf")
        slope, _ = np.polyfit(np.log(study.steps), np.log(residuals), 1)
        return float(slope)

    def summary(self) -> Dict[str, Any]:
        return {
            label: {
                "ratios": study.ratios,
                "observed_order": self.observed_order(study),
                "converges": study.converges(),
            }
            for label, study in self.studies.items()
        }

    def save_results(self) -> List[str]:
        """Write the table and the summary; returns the paths."""
        os.makedirs(self.output_dir, exist_ok=True)
        table_path = os.path.join(self.output_dir, "convergence_study.csv")
        summary_path = os.path.join(self.output_dir, "convergence_summary.json")
        self.to_frame().to_csv(table_path, index=False, float_format="%.6e")
        with open(summary_path, "w", encoding="utf-8") as handle:
            json.dump(self.summary(), handle, indent=2)
        return [table_path, summary_path]


def main():
    """Main execution function."""
    print("Finite-Difference Convergence Study")
    print("=" * 50)

    runner = ConvergenceRunner()

    print("1. Euler-Lagrange residuals of catalog solutions...")
    runner.run_solutions()

    print("2. Divergence of the non-Cartan string current...")
    runner.run_divergence()

    print("3. Saving results...")
    paths = runner.save_results()

    print("\n" + "=" * 50)
    print("STUDY COMPLETE")
    print("=" * 50)
    for path in paths:
        print(f"Results saved to: {path}")

    print(f"\nCases with every ratio >= {CONVERGENCE_RATIO}:")
    for label, entry in runner.summary().items():
        mark = "yes" if entry["converges"] else "NO"
        print(f"  {label}: {mark} (order {entry['observed_order']:.2f})")


if __name__ == "__main__":
    main()
