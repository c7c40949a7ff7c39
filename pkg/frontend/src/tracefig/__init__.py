"""Convergence figures from solver trace CSVs."""

from .render import PlotSpec, Series, TraceFormatError, build_series, render_convergence

__version__ = "0.1.0"

__all__ = [
    "PlotSpec",
    "Series",
    "TraceFormatError",
    "build_series",
    "render_convergence",
]
