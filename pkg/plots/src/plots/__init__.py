"""Chart rendering for the experiment CSV files.

This package knows nothing about how the numbers were computed: it consumes
the published CSV schemas (columns of precomputed log10 magnitudes) and
turns each figure's file into a single chart.
"""

from .figures import FIGURE_BUILDERS, FigureSpec, PlotError, Series, build_spec, render

__all__ = [
    "FIGURE_BUILDERS",
    "FigureSpec",
    "PlotError",
    "Series",
    "build_spec",
    "render",
]
