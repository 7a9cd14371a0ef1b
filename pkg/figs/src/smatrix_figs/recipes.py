"""Figure recipes: which files go in, what the renderer must verify.

A recipe never computes physics. Overlay positions (transparency roots,
resonance lines) come from the dataset's JSON metadata or companion files
produced by the photon-smatrix CLI.
"""

import json
import os
from dataclasses import dataclass, field

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5")


class SchemaError(Exception):
    """Input file does not match the recipe's expectations."""


@dataclass(frozen=True)
class FigureRecipe:
    """Inputs and expectations for one figure.

    csv_path: main CLI dataset (CSV with header).
    crit_path: optional JSON from the `crit` command, used only for overlay
        line positions on fig3 heat maps.
    expected_kind: if set, the metadata sidecar must declare this scatterer
        kind ("V_ATOM" or "TWO_2LS").
    expected_grid: if set, (num_dk, num_dp) the sidecar grids must match.
    """

    figure_id: str
    csv_path: str
    out_path: str
    crit_path: str | None = None
    expected_kind: str | None = None
    expected_grid: tuple[int, int] | None = None
    title: str | None = None

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise SchemaError(f"unknown figure id {self.figure_id!r}; expected one of {FIGURE_IDS}")


def load_meta(csv_path: str) -> dict:
    """Load the <csv>.meta.json sidecar written by the map commands."""
    path = csv_path + ".meta.json"
    if not os.path.exists(path):
        raise SchemaError(f"metadata sidecar not found: {path}")
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def load_crit(path: str) -> dict:
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    if "roots" not in payload:
        raise SchemaError(f"{path}: not a crit output (missing 'roots')")
    return payload


def check_meta(recipe: FigureRecipe, meta: dict, command: str) -> None:
    """Refuse datasets whose metadata contradicts the recipe."""
    if meta.get("command") != command:
        raise SchemaError(
            f"{recipe.csv_path}: metadata declares command {meta.get('command')!r}, "
            f"recipe {recipe.figure_id} needs {command!r}"
        )
    if recipe.expected_kind is not None:
        kind = meta.get("scatterer", {}).get("kind")
        if kind != recipe.expected_kind:
            raise SchemaError(
                f"{recipe.csv_path}: scatterer kind {kind!r} does not match "
                f"expected {recipe.expected_kind!r}"
            )
    if recipe.expected_grid is not None:
        xs_key = "dk_grid" if command == "two-photon-map" else "k2_grid"
        shape = (meta.get(xs_key, {}).get("num"), meta.get("dp_grid", {}).get("num"))
        if shape != recipe.expected_grid:
            raise SchemaError(
                f"{recipe.csv_path}: grid shape {shape} does not match "
                f"expected {recipe.expected_grid}"
            )
