"""Component-gradient-evaluation accounting and convergence traces.

Two counters per run: ``component_calls`` is every single-component gradient
actually computed (an accelerated inner iteration costs 2b: the batch at the
new point and the re-evaluation at the stage anchor), while ``paper_axis``
counts n per full gradient plus b per mini-batch direction — the convention
used for complexity comparisons.  Objective values recorded into the trace
are measurements and are never charged.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field

CSV_HEADER = [
    "method",
    "stage",
    "iter",
    "component_calls",
    "paper_axis",
    "objective",
    "grad_norm",
    "wall_seconds",
]


@dataclass
class EvalCounter:
    component_calls: int = 0
    paper_axis: int = 0

    def charge(self, calls: int, axis_calls: int) -> None:
        if calls < 0 or axis_calls < 0 or calls < axis_calls:
            raise ValueError(f"bad charge ({calls}, {axis_calls})")
        self.component_calls += calls
        self.paper_axis += axis_calls


@dataclass
class TraceRecord:
    method: str
    stage: int
    iter: int
    component_calls: int
    paper_axis: int
    objective: float
    grad_norm: float | None
    wall_seconds: float


@dataclass
class Trace:
    """Single-owner record sink for one solver run."""

    method: str
    record_every: int = 0  # min paper-axis gap between rows; 0 = every call
    timing: bool = True
    counter: EvalCounter = field(default_factory=EvalCounter)
    records: list[TraceRecord] = field(default_factory=list)

    def __post_init__(self):
        self._t0 = time.perf_counter()

    def charge(self, calls: int, axis_calls: int) -> None:
        self.counter.charge(calls, axis_calls)

    def due(self) -> bool:
        """Whether a non-forced record would pass the cadence filter now.

        Callers use this to skip computing the (uncharged but real) objective
        measurement on iterations that would not be recorded anyway.
        """
        if not self.records:
            return True
        last = self.records[-1]
        if self.counter.component_calls <= last.component_calls:
            return False
        return self.counter.paper_axis - last.paper_axis >= self.record_every

    def record(
        self,
        stage: int,
        iteration: int,
        objective: float,
        grad_norm: float | None = None,
        force: bool = False,
    ) -> bool:
        """Append a row unless the cadence filter suppresses it.

        Rows are only ever appended at strictly increasing component_calls,
        so the trace axis is monotone by construction.
        """
        if not math.isfinite(objective):
            raise FloatingPointError(
                f"objective became {objective} at stage {stage}, iter {iteration}; "
                "the step size is likely too large for this problem"
            )
        if self.records:
            last = self.records[-1]
            if self.counter.component_calls <= last.component_calls:
                return False
            if not force and self.counter.paper_axis - last.paper_axis < self.record_every:
                return False
        self.records.append(
            TraceRecord(
                method=self.method,
                stage=stage,
                iter=iteration,
                component_calls=self.counter.component_calls,
                paper_axis=self.counter.paper_axis,
                objective=objective,
                grad_norm=grad_norm,
                wall_seconds=(time.perf_counter() - self._t0) if self.timing else 0.0,
            )
        )
        return True

    @property
    def last_objective(self) -> float:
        return self.records[-1].objective


def write_csv(path, traces: Trace | list[Trace]) -> None:
    """Write one or several traces into a single CSV (full float precision)."""
    if isinstance(traces, Trace):
        traces = [traces]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for trace in traces:
            for r in trace.records:
                writer.writerow(
                    [
                        r.method,
                        r.stage,
                        r.iter,
                        r.component_calls,
                        r.paper_axis,
                        repr(r.objective),
                        "" if r.grad_norm is None else repr(r.grad_norm),
                        repr(r.wall_seconds),
                    ]
                )


def read_csv(path) -> list[TraceRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected trace header {header!r}")
        for row in reader:
            records.append(
                TraceRecord(
                    method=row[0],
                    stage=int(row[1]),
                    iter=int(row[2]),
                    component_calls=int(row[3]),
                    paper_axis=int(row[4]),
                    objective=float(row[5]),
                    grad_norm=None if row[6] == "" else float(row[6]),
                    wall_seconds=float(row[7]),
                )
            )
    return records


def write_summary(path, summary: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
