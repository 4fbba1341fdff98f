"""Figure construction for the bandit-benchmark CSV artifacts.

Three figure kinds:

    curves         mean regret vs. checkpoint, one line per
                   (policy, gap_function), optional std band
    gap_functions  the four gap-function shapes for a given eps,
                   re-evaluated here from their closed forms
    ratio          vanilla/eps-variant bound-coefficient ratio vs. mu1,
                   with `inf` rows clipped and the boundary annotated

The plot layer never recomputes statistics: curve means and bands come
straight from the CSV columns.  Rendering is read-only and deterministic
(fixed style, no timestamps in the output metadata).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "PlotSpec",
    "SchemaError",
    "GAP_KINDS",
    "gap_function_curves",
    "build_figure",
    "render",
]

GAP_KINDS = ("standard", "hinge", "indicator", "thresholded")

_CURVES_COLUMNS = ("policy", "gap_function", "checkpoint", "mean_regret", "std_regret")
_RATIO_COLUMNS = ("mu1", "ratio")

# One fixed color per line index; keeps output bytes independent of rcParams.
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


class SchemaError(ValueError):
    """Raised when an input CSV does not match the expected schema."""


@dataclass(frozen=True)
class PlotSpec:
    kind: str  # curves | gap_functions | ratio
    input_path: str | None
    output_path: str
    eps: float = 0.2
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    log_x: bool = False
    band: bool = True
    extra_inputs: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in ("curves", "gap_functions", "ratio"):
            raise ValueError(f"unknown figure kind: {self.kind!r}")
        if self.kind != "gap_functions" and self.input_path is None:
            raise ValueError(f"figure kind {self.kind!r} requires an input CSV")
        if not 0.0 <= self.eps < 1.0:
            raise ValueError(f"eps must lie in [0, 1), got {self.eps}")


def _read_rows(path: str, required: tuple[str, ...]) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def gap_function_curves(eps: float, grid: np.ndarray) -> dict[str, np.ndarray]:
    """Evaluate the four gap-function shapes on ``grid``.

    Closed forms (strict inequality at the eps boundary):
        standard     f(d) = d
        hinge        f(d) = max(d - eps, 0)
        indicator    f(d) = 1 if d > eps else 0
        thresholded  f(d) = d if d > eps else 0
    """
    grid = np.asarray(grid, dtype=float)
    above = grid > eps
    return {
        "standard": grid.copy(),
        "hinge": np.maximum(grid - eps, 0.0),
        "indicator": above.astype(float),
        "thresholded": np.where(above, grid, 0.0),
    }


def _build_curves(spec: PlotSpec, ax) -> None:
    rows = _read_rows(spec.input_path, _CURVES_COLUMNS)
    series: dict[tuple[str, str], list[tuple[float, float, float]]] = {}
    for row in rows:
        key = (row["policy"], row["gap_function"])
        series.setdefault(key, []).append(
            (float(row["checkpoint"]), float(row["mean_regret"]), float(row["std_regret"]))
        )
    for idx, (key, points) in enumerate(sorted(series.items())):
        points.sort()
        t = np.array([p[0] for p in points])
        mean = np.array([p[1] for p in points])
        std = np.array([p[2] for p in points])
        color = _PALETTE[idx % len(_PALETTE)]
        ax.plot(t, mean, color=color, label=f"{key[0]} / {key[1]}")
        if spec.band:
            ax.fill_between(t, mean - std, mean + std, color=color, alpha=0.15, linewidth=0)
    if spec.log_x:
        ax.set_xscale("log")
    ax.set_xlabel(spec.xlabel or "round")
    ax.set_ylabel(spec.ylabel or "mean cumulative regret")
    ax.legend(loc="upper left", frameon=False)


def _build_gap_functions(spec: PlotSpec, ax) -> None:
    grid = np.round(np.arange(0.0, 1.0 + 0.005, 0.01), 10)
    curves = gap_function_curves(spec.eps, grid)
    for idx, kind in enumerate(GAP_KINDS):
        ax.plot(grid, curves[kind], color=_PALETTE[idx % len(_PALETTE)], label=kind)
    ax.axvline(spec.eps, color="0.6", linestyle=":", linewidth=1)
    ax.annotate(f"eps = {spec.eps:g}", (spec.eps, 1.02), fontsize=8, color="0.4")
    ax.set_xlabel(spec.xlabel or "gap")
    ax.set_ylabel(spec.ylabel or "f(gap)")
    ax.legend(loc="upper left", frameon=False)


def _build_ratio(spec: PlotSpec, ax) -> None:
    rows = _read_rows(spec.input_path, _RATIO_COLUMNS)
    finite: list[tuple[float, float]] = []
    diverged: list[float] = []
    for row in rows:
        mu1 = float(row["mu1"])
        value = float(row["ratio"])
        if math.isinf(value):
            diverged.append(mu1)
        elif not math.isnan(value):
            finite.append((mu1, value))
    if not finite:
        raise SchemaError(f"{spec.input_path}: no finite ratio values to plot")
    finite.sort()
    xs = [p[0] for p in finite]
    ys = [p[1] for p in finite]
    ax.plot(xs, ys, color=_PALETTE[0])
    for mu1 in diverged:
        ax.axvline(mu1, color=_PALETTE[1], linestyle="--", linewidth=1)
    if diverged:
        ax.annotate(
            f"ratio diverges at mu1 = {min(diverged):g}",
            (min(diverged), max(ys)),
            fontsize=8,
            color=_PALETTE[1],
            ha="right",
        )
    ax.set_xlabel(spec.xlabel or "best mean mu1")
    ax.set_ylabel(spec.ylabel or "bound-coefficient ratio")


_BUILDERS = {
    "curves": _build_curves,
    "gap_functions": _build_gap_functions,
    "ratio": _build_ratio,
}


def build_figure(spec: PlotSpec):
    """Construct (but do not save) the matplotlib figure for ``spec``."""
    fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=150)
    try:
        _BUILDERS[spec.kind](spec, ax)
    except Exception:
        plt.close(fig)
        raise
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    return fig


def render(spec: PlotSpec) -> Path:
    """Build the figure and write it to ``spec.output_path``."""
    out = Path(spec.output_path)
    fig = build_figure(spec)
    try:
        # Empty metadata keeps PNG/SVG output byte-stable across runs.
        fig.savefig(out, metadata=_stable_metadata(out))
    finally:
        plt.close(fig)
    return out


def _stable_metadata(out: Path) -> dict:
    suffix = out.suffix.lower()
    if suffix == ".png":
        return {"Software": "bandit-plots"}
    if suffix == ".svg":
        return {"Date": None, "Creator": "bandit-plots"}
    return {}
