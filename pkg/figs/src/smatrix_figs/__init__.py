"""Figure scripts for photon-smatrix CLI datasets."""

from .recipes import FIGURE_IDS, FigureRecipe, SchemaError
from .render import RenderResult, render

__version__ = "0.1.0"

__all__ = ["FIGURE_IDS", "FigureRecipe", "SchemaError", "RenderResult", "render", "__version__"]
