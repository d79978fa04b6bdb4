"""Render sweep tables into publication-style figures.

Every curve is drawn from the loaded arrays untouched; the returned mapping
exposes exactly the arrays handed to the plotting backend so tests can hold
the pipeline to that.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import MissingColumnError, Table, load_table
from .recipes import FigureRecipe

__all__ = ["render", "build_figure"]


def _panel_grid(n_panels: int) -> tuple[int, int]:
    ncols = math.ceil(math.sqrt(n_panels))
    nrows = math.ceil(n_panels / ncols)
    return nrows, ncols


def _panel_label(recipe: FigureRecipe, table: Table) -> str:
    key = recipe.panel_label_key
    if key and key in table.meta and table.meta[key] is not None:
        return f"{key} = {table.meta[key]:g}"
    if key:
        return Path(table.path).stem
    return ""


def _collect_series(recipe: FigureRecipe, table: Table) -> list[tuple[str, bool]]:
    """Column names to draw from one table, with their dashed flag.

    Raises :class:`MissingColumnError` when a required quantity has no
    column at all; a present prefix contributes every matching column, so
    no series can be dropped silently.
    """
    picked: list[tuple[str, bool]] = []
    for prefix in recipe.quantity_prefixes:
        names = table.series_names(prefix)
        if not names:
            raise MissingColumnError(prefix, table.path)
        dashed = prefix in recipe.dashed_prefixes
        picked.extend((n, dashed) for n in names)
    for prefix in recipe.optional_prefixes:
        picked.extend((n, False) for n in table.series_names(prefix))
    return picked


def build_figure(recipe: FigureRecipe):
    """Assemble the figure; returns (figure, plotted-series mapping).

    The mapping is ``{input path: {column: (x, y), "__shading__": {column:
    mask}}}`` holding the exact arrays passed to the backend.
    """
    tables = [load_table(p) for p in recipe.inputs]
    nrows, ncols = _panel_grid(len(tables))
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(5.0 * ncols, 3.6 * nrows), squeeze=False
    )
    flat_axes = axes.ravel()
    plotted: dict[str, dict] = {}

    for idx, table in enumerate(tables):
        ax = flat_axes[idx]
        series = _collect_series(recipe, table)
        x = table.x
        record: dict = {"__shading__": {}}
        for name, dashed in series:
            y = table.column(name)
            if recipe.y_log and np.any(y[np.isfinite(y)] <= 0.0):
                raise ValueError(
                    f"log-scale ordinate needs positive data; column {name!r} "
                    f"of {table.path} violates that"
                )
            ax.plot(x, y, linestyle="--" if dashed else "-", label=name)
            record[name] = (x, y)
            if recipe.shade_positive:
                mask = y > 0.0
                ax.fill_between(x, y, 0.0, where=mask, alpha=0.15)
                record["__shading__"][name] = mask
        if recipe.y_log:
            ax.set_yscale("log")
        ax.set_xlabel(table.x_name)
        label = _panel_label(recipe, table)
        if label:
            ax.set_title(label)
        ax.legend(fontsize="x-small")

        for x_lo, x_hi in recipe.insets:
            inset = ax.inset_axes((0.55, 0.55, 0.42, 0.4))
            in_range = (x >= x_lo) & (x <= x_hi)
            for name, dashed in series:
                y = table.column(name)
                inset.plot(
                    x[in_range], y[in_range], linestyle="--" if dashed else "-"
                )
            if recipe.y_log:
                inset.set_yscale("log")
            inset.set_xlim(x_lo, x_hi)
        plotted[table.path] = record

    for ax in flat_axes[len(tables):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig, plotted


def render(recipe: FigureRecipe, out_path: str | Path) -> dict:
    """Render the recipe to an image file and return the plotted series."""
    fig, plotted = build_figure(recipe)
    fig.savefig(out_path)
    plt.close(fig)
    return plotted
