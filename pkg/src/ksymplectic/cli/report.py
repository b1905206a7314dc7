"""
Reports

Structured command output: every verdict carries its grade (symbolic or
numeric) and witnesses, and derived objects are printed in the expression
grammar so they can be re-parsed.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..config.constants import EXIT_FAILURE, EXIT_OK, Grade
from ..utils.checks import CheckResult


class VerdictEntry(BaseModel):
    """One checked statement."""

    name: str
    holds: bool
    grade: str = Grade.SYMBOLIC.value
    detail: str = ""
    witnesses: List[str] = Field(default_factory=list)

    def render(self) -> str:
        status = "holds" if self.holds else "fails"
        text = f"{self.name}: {status} ({self.grade})"
        if self.detail:
            text += f" {self.detail}"
        for witness in self.witnesses:
            text += f"\n    witness: {witness}"
        return text


class Report(BaseModel):
    """
    Output of one CLI command.

    Attributes:
        command: Subcommand name
        problem: Problem name
        inputs: Echo of the inputs (chart, Lagrangian, selected entries)
        objects: Derived objects as printed expressions, nested by section
        verdicts: Checked statements in order
    """

    command: str
    problem: str = ""
    inputs: Dict[str, Any] = Field(default_factory=dict)
    objects: Dict[str, Any] = Field(default_factory=dict)
    verdicts: List[VerdictEntry] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.holds for entry in self.verdicts)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_FAILURE

    def add(
        self,
        name: str,
        holds: bool,
        grade: Grade = Grade.SYMBOLIC,
        detail: str = "",
        witnesses: Optional[List[str]] = None,
    ) -> VerdictEntry:
        entry = VerdictEntry(
            name=name,
            holds=bool(holds),
            grade=grade.value,
            detail=detail,
            witnesses=witnesses or [],
        )
        self.verdicts.append(entry)
        return entry

    def add_check(
        self, name: str, result: CheckResult, expected: bool = True, detail: str = ""
    ) -> VerdictEntry:
        """Record a check; with ``expected=False`` the verdict holds when the check fails."""
        witnesses = [str(w) for w in result.witnesses]
        return self.add(name, bool(result) == expected, result.grade, detail, witnesses)

    def render_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.problem:
            lines.append(f"problem: {self.problem}")
        for key, value in self.inputs.items():
            lines.append(f"{key}: {value}")
        for section, values in self.objects.items():
            lines.append(f"[{section}]")
            lines.extend(_render_value(values, 1))
        if self.verdicts:
            lines.append("[verdicts]")
            lines.extend("  " + entry.render() for entry in self.verdicts)
        lines.append(f"result: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines)

    def render_json(self, indent: int = 2) -> str:
        return self.model_dump_json(indent=indent)


def _render_value(value: Any, depth: int) -> List[str]:
    pad = "  " * depth
    if isinstance(value, dict):
        lines = []
        for key, inner in value.items():
            if isinstance(inner, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_value(inner, depth + 1))
            else:
                lines.append(f"{pad}{key}: {inner}")
        return lines
    if isinstance(value, list):
        lines = []
        for inner in value:
            if isinstance(inner, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_value(inner, depth + 1))
            else:
                lines.append(f"{pad}- {inner}")
        return lines
    return [f"{pad}{value}"]


__all__ = ["VerdictEntry", "Report"]
