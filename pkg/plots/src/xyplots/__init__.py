"""Figure pipeline for xyquench CSV output.

Reads the commented-CSV dialect written by the xyquench CLI and renders
(t, h1) heatmaps of the resource measures and revival-time scaling figures.
The package never imports the simulator; the CSV schema is the only contract
between the two.
"""
from .io import RevivalTable, SweepTable, load_revival, load_sweep, read_table
from .render import (FigureSpec, heatmap_figure, render_heatmap,
                     render_scaling, scaling_figure)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SweepTable", "RevivalTable", "read_table", "load_sweep", "load_revival",
    "FigureSpec", "heatmap_figure", "scaling_figure",
    "render_heatmap", "render_scaling",
]
