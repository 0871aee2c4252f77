"""Bundled study tables of published two-group comparisons.

Two companion tables from the cardiovascular literature, one of total
plasma cholesterol and one of atherosclerotic plaque size, each with 14
control-versus-treatment comparisons reported as group summaries. All
effects are reductions, which makes them a convenient stress test for
relative-scale statistics.
"""
from __future__ import annotations

from importlib.resources import files

from ..tables import StudyTableRow, read_studies_csv

__all__ = [
    "cholesterol_path",
    "plaque_size_path",
    "load_cholesterol",
    "load_plaque_size",
]


def _dataset_path(name: str) -> str:
    return str(files(__package__).joinpath(name))


def cholesterol_path() -> str:
    """Filesystem path of the bundled cholesterol table."""
    return _dataset_path("cholesterol.csv")


def plaque_size_path() -> str:
    """Filesystem path of the bundled plaque-size table."""
    return _dataset_path("plaque_size.csv")


def load_cholesterol() -> list[StudyTableRow]:
    return read_studies_csv(cholesterol_path())


def load_plaque_size() -> list[StudyTableRow]:
    return read_studies_csv(plaque_size_path())
