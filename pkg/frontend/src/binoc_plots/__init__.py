"""Batch figure renderer for sweep outputs of the channel-comparison tool."""

from .reader import MissingColumnError, Table, load_table
from .recipes import FIGURE_IDS, FigureRecipe, recipe_for
from .render import build_figure, render

__version__ = "0.1.0"

__all__ = [
    "MissingColumnError",
    "Table",
    "load_table",
    "FIGURE_IDS",
    "FigureRecipe",
    "recipe_for",
    "build_figure",
    "render",
    "__version__",
]
