"""Figure recipes: which inputs feed which panel layout.

Each recipe names the quantity columns it plots, the axis scales, the inset
magnification ranges, and whether positive regions get sign shading.  The
panel count and panel labels are data-driven: one panel per input file,
labelled from the file's metadata when present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["FigureRecipe", "FIGURE_IDS", "recipe_for"]


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    inputs: tuple[str, ...]
    quantity_prefixes: tuple[str, ...]
    y_log: bool = False
    insets: tuple[tuple[float, float], ...] = ()
    shade_positive: bool = False
    panel_label_key: str = "gamma_t"
    optional_prefixes: tuple[str, ...] = ()
    dashed_prefixes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.inputs:
            raise ValueError("a recipe needs at least one input file")
        for p in self.inputs:
            if not Path(p).exists():
                raise FileNotFoundError(f"recipe input does not exist: {p}")


_CONFIG = {
    # single panel, three error curves on a log ordinate, two magnification
    # insets at low energy
    "comparison-ideal": dict(
        quantity_prefixes=("ke", "he", "re"),
        optional_prefixes=("pe",),
        y_log=True,
        insets=((0.0, 1.0), (0.0, 5.0)),
        shade_positive=False,
        panel_label_key="",
    ),
    # one panel per damping value, one curve per thermal occupation,
    # magnified low-energy inset, positive region shaded
    "ae-grid": dict(
        quantity_prefixes=("ae",),
        insets=((0.0, 1.0),),
        shade_positive=True,
    ),
    "be-grid": dict(
        quantity_prefixes=("be",),
        insets=((0.0, 0.5),),
        shade_positive=True,
    ),
    "ce-grid": dict(
        quantity_prefixes=("ce",),
        shade_positive=True,
    ),
    # one panel per detector efficiency, threshold versus damping
    "nth-vs-gammat": dict(
        quantity_prefixes=("nth",),
        panel_label_key="eta_het",
    ),
    # optimal fraction (solid) and survival fraction (dashed) per panel
    "beta-fractions": dict(
        quantity_prefixes=("beta-opt", "beta-s"),
        insets=((0.0, 0.2),),
        dashed_prefixes=("beta-s",),
    ),
}

FIGURE_IDS = tuple(_CONFIG)


def recipe_for(figure_id: str, inputs: list[str]) -> FigureRecipe:
    """Build the standard recipe for one of the known figure layouts."""
    if figure_id not in _CONFIG:
        raise ValueError(
            f"unknown figure id {figure_id!r}; expected one of {', '.join(FIGURE_IDS)}"
        )
    return FigureRecipe(figure_id=figure_id, inputs=tuple(inputs), **_CONFIG[figure_id])
