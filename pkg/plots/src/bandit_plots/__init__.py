"""Batch figure generation for the lenient-bandits CSV artifacts."""

from .render import (
    GAP_KINDS,
    PlotSpec,
    SchemaError,
    build_figure,
    gap_function_curves,
    render,
)

__all__ = [
    "GAP_KINDS",
    "PlotSpec",
    "SchemaError",
    "build_figure",
    "gap_function_curves",
    "render",
]

__version__ = "0.1.0"
