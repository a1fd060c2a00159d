"""Figure builders: sweep heatmaps and revival-scaling scatter plots.

Everything renders through the Agg backend with pinned output metadata and a
fixed SVG hash salt, so a given CSV always produces byte-identical image
files.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .io import load_revival, load_sweep  # noqa: E402

__all__ = ["FigureSpec", "render_heatmap", "render_scaling",
           "heatmap_figure", "scaling_figure"]

plt.rcParams["svg.hashsalt"] = "xyplots"

_PNG_META = {"Software": "xyplots"}
_SVG_META = {"Date": None}  # suppress the creation timestamp


@dataclass(frozen=True)
class FigureSpec:
    """One figure job: input table, measure column, output image, styling."""

    input: str
    output: str
    measure: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None
    cmap: str = "viridis"
    dpi: int = 150
    # optional fit overlay (slope, intercept); overrides file metadata
    fit: tuple[float, float] | None = None


def _save(fig, out_path: str, dpi: int) -> str:
    ext = os.path.splitext(out_path)[1].lower()
    kwargs = {"dpi": dpi}
    if ext == ".png":
        kwargs["metadata"] = dict(_PNG_META)
    elif ext == ".svg":
        kwargs["metadata"] = dict(_SVG_META)
    try:
        fig.savefig(out_path, **kwargs)
    finally:
        plt.close(fig)
    return out_path


def heatmap_figure(table, measure: str, spec: FigureSpec | None = None):
    """Matplotlib figure with t horizontal, h1 vertical, labelled colorbar."""
    spec = spec or FigureSpec(input="", output="")
    if measure not in table.values:
        raise ValueError(f"measure {measure!r} not in table; "
                         f"available columns: {', '.join(table.measures())}")
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    mesh = ax.pcolormesh(table.t, table.h1, table.values[measure],
                         cmap=spec.cmap, shading="nearest", rasterized=True)
    ax.set_xlabel(spec.xlabel or "t")
    ax.set_ylabel(spec.ylabel or "h1")
    if spec.title:
        ax.set_title(spec.title)
    elif "n" in table.meta:
        ax.set_title(f"{measure}, n = {table.meta['n']}")
    fig.colorbar(mesh, ax=ax, label=measure)
    return fig


def scaling_figure(table, measure: str | None = None, spec: FigureSpec | None = None):
    """Scatter of (n, t_r) with a fitted-line overlay and slope annotation.

    The line uses slope/intercept from the FigureSpec if given, else the file
    metadata (slope_<measure>, intercept_<measure>), else a local least
    squares fit whose annotation is marked '(refit)'.
    """
    spec = spec or FigureSpec(input="", output="")
    if measure is None:
        measure = next(iter(table.series))
    if measure not in table.series:
        raise ValueError(f"measure {measure!r} not in table; "
                         f"available series: {', '.join(table.measures())}")
    sizes, times = table.series[measure]
    if sizes.size < 2:
        raise ValueError(f"scaling figure needs at least 2 points, got {sizes.size}")
    refit = False
    if spec.fit is not None:
        slope, intercept = spec.fit
    else:
        try:
            slope = float(table.meta[f"slope_{measure}"])
            intercept = float(table.meta[f"intercept_{measure}"])
        except (KeyError, ValueError):
            slope, intercept = np.polyfit(sizes, times, 1)
            refit = True
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    ax.scatter(sizes, times, zorder=3, label="first revival")
    xs = np.array([sizes.min(), sizes.max()])
    ax.plot(xs, slope * xs + intercept, color="tab:red", zorder=2)
    note = f"t_r = {slope:.4f} n {intercept:+.3f}" + (" (refit)" if refit else "")
    ax.annotate(note, xy=(0.05, 0.92), xycoords="axes fraction")
    ax.set_xlabel(spec.xlabel or "n")
    ax.set_ylabel(spec.ylabel or "t_r")
    ax.set_title(spec.title or f"first-revival scaling: {measure}")
    return fig


def render_heatmap(spec: FigureSpec) -> str:
    """Render a sweep CSV as a heatmap image; returns the output path."""
    table = load_sweep(spec.input)
    fig = heatmap_figure(table, spec.measure or "c_re", spec)
    return _save(fig, spec.output, spec.dpi)


def render_scaling(spec: FigureSpec) -> str:
    """Render a revival CSV as a scaling figure; returns the output path."""
    table = load_revival(spec.input)
    fig = scaling_figure(table, spec.measure, spec)
    return _save(fig, spec.output, spec.dpi)
