"""
Problem Files

Line-oriented description of a Lagrangian problem (grammar in
``docs/formats.md``)::

    name: string
    k: 2
    n: 1
    parameters: sigma=1, tau=4
    lagrangian: 1/2*sigma*v1_1^2 - 1/2*tau*v1_2^2
    sopde xivs:
        1,1,1: tau*(sigma*v1_1^2 + tau*v1_2^2)
        ...
    field dq: q1=1
    current noether: sigma*v1_1 ; -tau*v1_2
    solution travelling: sin(t2 + 2*t1)
    grid: h=0.02, extent=0:1
    expect: cartan dq

Files are validated into a pydantic :class:`ProblemFile`; every expression
is parsed against the declared chart during validation.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..config.settings import Config, get_global_config
from ..exceptions import ProblemFileError, UnknownName, UsageError
from ..geometry.chart import Chart, new_chart
from ..geometry.fields import VectorField
from ..lagrangian.lagrangian import Lagrangian
from ..numverify.grid import GridSpec
from ..sopde.sopde import Sopde, make_sopde, zero_sopde
from ..symmetry.currents import CurrentTuple

logger = logging.getLogger(__name__)

# Expectation kinds and the entry types of their arguments
EXPECTATIONS: Dict[str, Tuple[str, ...]] = {
    "regular": (),
    "cartan": ("field",),
    "not-cartan": ("field",),
    "in-xkl": ("sopde",),
    "integrable": ("sopde",),
    "conserved": ("current", "sopde"),
    "generated": ("current",),
    "not-generated": ("current",),
    "noether": ("field", "current"),
    "marmo": ("field",),
    "solves": ("solution",),
    "integral-section": ("solution", "sopde"),
}

BLOCK_KINDS = ("sopde", "field")
ENTRY_KINDS = ("sopde", "field", "current", "potential", "solution")

# Model attribute holding each entry kind
_TABLES: Dict[str, str] = {
    "sopde": "sopdes",
    "field": "vector_fields",
    "current": "currents",
    "potential": "potentials",
    "solution": "solutions",
}

_HEADER = re.compile(
    r"^(?P<kind>[a-z]+)(?:\s+(?P<name>[A-Za-z_][A-Za-z0-9_-]*))?\s*:\s*(?P<value>.*)$"
)


class ProblemFile(BaseModel):
    """
    A validated problem description.

    Attributes:
        name: Problem name
        description: Free text
        k: Number of independent variables
        n: Dimension of Q
        parameters: Parameter names with optional numeric values
        lagrangian: Lagrangian text
        sopdes: Named SOPDE coefficient tables keyed "i,a,b"
        vector_fields: Named vector fields, coordinate name -> component text
        currents: Named currents, k component texts
        potentials: Functions g^a for the Newtonoid criterion, keyed by field name
        solutions: Named closed-form sections, n component texts over t
        grid: Grid specification "h=<float>,extent=<a:b>[,...]"
        expectations: Checks ``analyze`` runs, e.g. "cartan dq"
        source: File the problem was read from
    """

    name: str = "problem"
    description: str = ""
    k: int = Field(ge=1)
    n: int = Field(ge=1)
    parameters: Dict[str, Optional[float]] = Field(default_factory=dict)
    lagrangian: str
    sopdes: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    vector_fields: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    currents: Dict[str, List[str]] = Field(default_factory=dict)
    potentials: Dict[str, List[str]] = Field(default_factory=dict)
    solutions: Dict[str, List[str]] = Field(default_factory=dict)
    grid: Optional[str] = None
    expectations: List[str] = Field(default_factory=list)
    source: str = "<string>"

    @model_validator(mode="after")
    def _check_expressions(self) -> "ProblemFile":
        chart = self.chart()
        self.lagrangian_object()
        for name in self.sopdes:
            self.sopde(name)
        for name in self.vector_fields:
            self.field(name)
        for name in self.currents:
            self.current(name)
        for name, values in self.potentials.items():
            if len(values) != self.k:
                raise ValueError(f"potential {name} needs {self.k} components, got {len(values)}")
            for text in values:
                chart.expr(text)
        for name, values in self.solutions.items():
            if len(values) != self.n:
                raise ValueError(f"solution {name} needs {self.n} components, got {len(values)}")
            for text in values:
                chart.expr(text, allow_formal=True)
        if self.grid is not None:
            parse_grid(self.grid, self.k)
        for line in self.expectations:
            self._check_expectation(line)
        return self

    def _check_expectation(self, line: str) -> None:
        words = line.split()
        if not words or words[0] not in EXPECTATIONS:
            raise ValueError(f"Unknown expectation '{line}'; known: {sorted(EXPECTATIONS)}")
        kinds = EXPECTATIONS[words[0]]
        if len(words) - 1 != len(kinds):
            raise ValueError(f"Expectation '{words[0]}' takes {len(kinds)} names, got '{line}'")
        for kind, name in zip(kinds, words[1:]):
            if kind == "sopde" and name == "zero":
                continue
            if name not in getattr(self, _TABLES[kind]):
                raise ValueError(f"Expectation '{line}' names unknown {kind} '{name}'")

    def chart(self) -> Chart:
        return new_chart(self.k, self.n, tuple(self.parameters))

    def parameter_values(self) -> Dict[str, float]:
        return {name: value for name, value in self.parameters.items() if value is not None}

    def lagrangian_object(self) -> Lagrangian:
        return Lagrangian.from_text(self.chart(), self.lagrangian, self.parameter_values())

    def sopde(self, name: str) -> Sopde:
        """Named SOPDE; ``zero`` is the free SOPDE unless the file defines one."""
        if name not in self.sopdes:
            if name == "zero":
                return zero_sopde(self.chart())
            raise UnknownName(
                f"No sopde '{name}' in {self.source}; available: {sorted(self.sopdes)}"
            )
        table = dict(self.sopdes[name])
        for key, value in list(table.items()):
            i, a, b = key.split(",")
            table.setdefault(f"{i},{b},{a}", value)
        return make_sopde(self.chart(), table)

    def field(self, name: str) -> VectorField:
        if name not in self.vector_fields:
            raise UnknownName(
                f"No field '{name}' in {self.source}; available: {sorted(self.vector_fields)}"
            )
        return VectorField.from_mapping(self.chart(), self.vector_fields[name])

    def current(self, name: str) -> CurrentTuple:
        if name not in self.currents:
            raise UnknownName(
                f"No current '{name}' in {self.source}; available: {sorted(self.currents)}"
            )
        return CurrentTuple.build(self.chart(), self.currents[name])

    def potential(self, field_name: str) -> List[str]:
        """The functions g^a paired with a field; zero when none are listed."""
        return self.potentials.get(field_name, ["0"] * self.k)

    def solution(self, name: str) -> List[str]:
        if name not in self.solutions:
            raise UnknownName(
                f"No solution '{name}' in {self.source}; available: {sorted(self.solutions)}"
            )
        return self.solutions[name]

    def grid_spec(
        self, override: Optional[str] = None, config: Optional[Config] = None
    ) -> GridSpec:
        """Grid from ``override``, else the file's ``grid``, else the configured default."""
        text = override or self.grid
        if text:
            return parse_grid(text, self.k)
        config = config or get_global_config()
        low, high = config.get("numverify.default_extent")
        step = config.get("numverify.default_step")
        return parse_grid(f"h={step},extent={low}:{high}", self.k)


def parse_grid(text: str, k: int) -> GridSpec:
    """
    Grid from ``h=<float>,extent=<a:b>[,...]``.

    ``h`` and ``extent`` are given once (all directions) or once per direction.

    Raises:
        UsageError: If the text is malformed or describes an invalid grid
    """
    try:
        return _grid_from_text(text, k)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"Invalid grid '{text}': {exc}") from exc


def _grid_from_text(text: str, k: int) -> GridSpec:
    steps: List[float] = []
    extents: List[Tuple[float, float]] = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep:
            raise UsageError(f"Grid item '{item}' must be key=value")
        if key == "h":
            steps.append(float(value))
        elif key == "extent":
            low, colon, high = value.partition(":")
            if not colon:
                raise UsageError(f"Grid extent '{value}' must be <min>:<max>")
            extents.append((float(low), float(high)))
        else:
            raise UsageError(f"Unknown grid key '{key}'; expected h or extent")
    steps = steps or [0.02]
    extents = extents or [(0.0, 1.0)]
    if len(steps) == 1:
        steps = steps * k
    if len(extents) == 1:
        extents = extents * k
    if len(steps) != k or len(extents) != k:
        raise UsageError(f"Grid needs 1 or {k} values of h and extent, got '{text}'")
    return GridSpec.from_steps(extents, steps)


def parse_assignments(text: str) -> Dict[str, str]:
    """``q1=1, v1_1=q1`` -> {"q1": "1", "v1_1": "q1"}."""
    result: Dict[str, str] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"Expected name=value, got '{item}'")
        result[key.strip()] = value.strip()
    return result


def _parse_parameters(text: str) -> Dict[str, Optional[float]]:
    parameters: Dict[str, Optional[float]] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = item.partition("=")
        parameters[name.strip()] = float(value) if sep else None
    return parameters


def _split_components(text: str) -> List[str]:
    return [part.strip() for part in text.split(";")]


def parse_problem_text(text: str, source: str = "<string>") -> ProblemFile:
    """
    Parse problem-file text.

    Raises:
        ProblemFileError: On syntax errors (with line number) or invalid content
    """
    data: Dict[str, object] = {
        "sopdes": {},
        "vector_fields": {},
        "currents": {},
        "potentials": {},
        "solutions": {},
        "expectations": [],
        "source": source,
    }
    block: Optional[Dict[str, str]] = None

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if block is None:
                raise ProblemFileError(
                    "Indented line outside a sopde or field block", source, number
                )
            key, sep, value = line.strip().partition(":")
            if not sep:
                raise ProblemFileError(
                    f"Expected 'key: value' in block, got '{line.strip()}'", source, number
                )
            block[key.strip().replace(" ", "")] = value.strip()
            continue

        block = None
        match = _HEADER.match(line)
        if not match:
            raise ProblemFileError(f"Expected 'key: value', got '{line}'", source, number)
        kind, name, value = match.group("kind"), match.group("name"), match.group("value").strip()
        try:
            if name is None:
                if kind in ("name", "description", "lagrangian", "grid"):
                    data[kind] = value
                elif kind in ("k", "n"):
                    data[kind] = int(value)
                elif kind == "parameters":
                    data["parameters"] = _parse_parameters(value)
                elif kind == "expect":
                    data["expectations"].append(value)
                else:
                    raise ValueError(f"Unknown key '{kind}'")
            elif kind in ENTRY_KINDS:
                table = data[_TABLES[kind]]
                if name in table:
                    raise ValueError(f"Duplicate {kind} '{name}'")
                if kind in BLOCK_KINDS:
                    if kind == "sopde" and value:
                        raise ValueError("sopde coefficients go on indented 'i,a,b: expr' lines")
                    table[name] = parse_assignments(value) if value else {}
                    block = table[name]
                else:
                    table[name] = _split_components(value)
            else:
                raise ValueError(f"Unknown entry kind '{kind}'")
        except ValueError as exc:
            raise ProblemFileError(str(exc), source, number) from exc

    try:
        problem = ProblemFile.model_validate(data)
    except ValidationError as exc:
        messages = "; ".join(error["msg"] for error in exc.errors())
        raise ProblemFileError(messages, source) from exc
    logger.debug("Problem '%s' loaded from %s", problem.name, source)
    return problem


def load_problem(path: Union[str, Path]) -> ProblemFile:
    """
    Load a problem file, falling back to the built-in catalog by name.

    Raises:
        ProblemFileError: If neither a file nor a catalog entry matches
    """
    from .catalog import catalog_names, catalog_text

    path = Path(path)
    if path.is_file():
        return parse_problem_text(path.read_text(encoding="utf-8"), str(path))
    if path.stem in catalog_names() and path.suffix in ("", ".ksym"):
        return parse_problem_text(catalog_text(path.stem), f"catalog:{path.stem}")
    raise ProblemFileError(
        f"No such problem file or catalog entry; catalog: {', '.join(catalog_names())}", str(path)
    )


__all__ = [
    "EXPECTATIONS",
    "ProblemFile",
    "parse_grid",
    "parse_assignments",
    "parse_problem_text",
    "load_problem",
]
