"""Convergence-figure rendering from solver trace CSVs.

Input is the trace schema written by the solver CLI:

    method,stage,iter,component_calls,paper_axis,objective,grad_norm,wall_seconds

One line per method tag, x = an evaluation counter column, y = objective
gap on a log scale.  Rendering reads the CSV(s) and writes one image;
nothing else is touched.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

TRACE_HEADER = [
    "method",
    "stage",
    "iter",
    "component_calls",
    "paper_axis",
    "objective",
    "grad_norm",
    "wall_seconds",
]

X_COLUMNS = ("component_calls", "paper_axis")
GAP_FLOOR = 1e-16


class TraceFormatError(ValueError):
    """The CSV is empty, malformed, or violates the trace ordering contract."""


@dataclass
class PlotSpec:
    inputs: list[str]
    output: str
    x_column: str = "paper_axis"
    f_star: float | None = None  # None -> min observed, with a warning
    title: str = ""


@dataclass
class Series:
    method: str
    x: list[int] = field(default_factory=list)
    gap: list[float] = field(default_factory=list)


def read_series(paths: list[str], x_column: str) -> dict[str, list[tuple[int, float]]]:
    """Per-method (x, objective) points from one or more trace CSVs."""
    if x_column not in X_COLUMNS:
        raise TraceFormatError(f"x column must be one of {X_COLUMNS}, got {x_column!r}")
    x_idx = TRACE_HEADER.index(x_column)
    obj_idx = TRACE_HEADER.index("objective")

    series: dict[str, list[tuple[int, float]]] = {}
    owner: dict[str, str] = {}
    for path in paths:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise TraceFormatError(f"{path}: empty file")
            if header != TRACE_HEADER:
                raise TraceFormatError(
                    f"{path}: unexpected header {header!r}; not a trace CSV")
            for row in reader:
                method = row[0]
                if owner.setdefault(method, path) != path:
                    raise TraceFormatError(
                        f"method {method!r} appears in both {owner[method]} "
                        f"and {path}; merge ambiguous")
                series.setdefault(method, []).append(
                    (int(row[x_idx]), float(row[obj_idx])))
    if not any(series.values()):
        raise TraceFormatError(f"no data rows in {', '.join(paths)}")

    for method, points in series.items():
        xs = [x for x, _ in points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise TraceFormatError(
                f"method {method!r}: rows are not strictly increasing in "
                f"{x_column}; the trace contract is violated")
    return series


def build_series(spec: PlotSpec) -> list[Series]:
    """Resolve the gap baseline and turn trace rows into plottable series."""
    raw = read_series(spec.inputs, spec.x_column)
    if spec.f_star is None:
        baseline = min(obj for pts in raw.values() for _, obj in pts) - GAP_FLOOR
        warnings.warn(
            "no reference optimum given; using the best observed objective "
            "as the gap baseline", stacklevel=2)
    else:
        baseline = spec.f_star
    out = []
    for method in sorted(raw):
        s = Series(method=method)
        for x, obj in raw[method]:
            s.x.append(x)
            s.gap.append(max(obj - baseline, GAP_FLOOR))
        out.append(s)
    return out


def render_convergence(spec: PlotSpec):
    """Render and write the figure; returns the matplotlib Figure."""
    series = build_series(spec)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for s in series:
        ax.plot(s.x, s.gap, label=s.method, linewidth=1.5)
    ax.set_yscale("log")
    ax.set_xlabel(spec.x_column.replace("_", " "))
    ax.set_ylabel("objective gap")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.output)
    return fig
