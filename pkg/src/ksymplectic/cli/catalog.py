"""
Built-in Catalog

The example problems shipped as package data in ``ksymplectic/data``:
the vibrating string, the 2-dimensional wave equation, Laplace's equation
in three variables, the Navier equations and the minimal-surface equation.
"""

from importlib import resources
from typing import List

from ..exceptions import UnknownName

CATALOG_PACKAGE = "ksymplectic.data"
CATALOG_SUFFIX = ".ksym"


def catalog_names() -> List[str]:
    """Names of the catalog entries, sorted."""
    return sorted(
        entry.name[: -len(CATALOG_SUFFIX)]
        for entry in resources.files(CATALOG_PACKAGE).iterdir()
        if entry.name.endswith(CATALOG_SUFFIX)
    )


def catalog_text(name: str) -> str:
    """
    Problem-file text of a catalog entry.

    Raises:
        UnknownName: If there is no entry of that name
    """
    if name not in catalog_names():
        raise UnknownName(f"No catalog entry '{name}'; available: {', '.join(catalog_names())}")
    entry = resources.files(CATALOG_PACKAGE).joinpath(name + CATALOG_SUFFIX)
    return entry.read_text(encoding="utf-8")


def catalog():
    """All catalog entries as validated problem files."""
    from .problem_file import parse_problem_text

    return [parse_problem_text(catalog_text(name), f"catalog:{name}") for name in catalog_names()]


__all__ = ["catalog_names", "catalog_text", "catalog"]
