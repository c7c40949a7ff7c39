"""Comparison solvers sharing the objective/trace/accounting surfaces.

* svrg_run  multi-stage variance reduction: full gradient at the stage
            anchor, then ``epoch_length`` plain steps along the anchored
            direction; the anchor moves to the last iterate.
* saga_run  table of n stored component gradients plus their running mean;
            one fresh component gradient per step.
* agd_run   the deterministic three-step accelerated method with exact
            gradients and the same alpha/tau schedules as the main solver.
* sgd_run   decaying-step mini-batch SGD, the unreduced-variance foil.

All methods charge the same counters, so traces align on the eval axis.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .amsvrg import RunResult, ScheduleParams, alpha, tau
from .geometry import convex_combine, mirror_step, sgd_step
from .objectives import Objective
from .sampling import SubsetSampler
from .tracing import Trace


@dataclass
class BaselineConfig:
    step_size: float
    batch: int = 1
    epoch_length: int | None = None  # svrg inner loop; default 2n
    seed: int = 0
    max_stages: int = 10**6
    max_iters: int | None = None
    max_evals: int | None = None  # paper-axis budget
    target_gap: float | None = None
    f_star: float | None = None

    def __post_init__(self):
        if not self.step_size > 0:
            raise ValueError(f"step_size must be positive, got {self.step_size}")
        if self.batch < 1:
            raise ValueError("batch must be >= 1")


def _budget_hit(trace: Trace, cfg: BaselineConfig) -> bool:
    return cfg.max_evals is not None and trace.counter.paper_axis >= cfg.max_evals


def _target_hit(obj: Objective, x: np.ndarray, cfg: BaselineConfig) -> bool:
    if cfg.target_gap is None or cfg.f_star is None:
        return False
    return obj.full_value(x) - cfg.f_star <= cfg.target_gap


def _finish(obj, x, trace, stop, stages, t0) -> RunResult:
    return RunResult(
        x=x,
        trace=trace,
        stop_reason=stop,
        stages=stages,
        final_objective=obj.full_value(x),
        wall_seconds=time.perf_counter() - t0,
    )


def svrg_run(
    obj: Objective,
    x0: np.ndarray,
    cfg: BaselineConfig,
    method: str = "svrg",
    timing: bool = True,
    record_every: int | None = None,
) -> RunResult:
    t0 = time.perf_counter()
    m = cfg.epoch_length if cfg.epoch_length is not None else 2 * obj.n
    sampler = SubsetSampler(obj.n, cfg.seed)
    trace = Trace(method, record_every=obj.n if record_every is None else record_every,
                  timing=timing)
    x = np.array(x0, dtype=float)
    stop = "max_stages"
    stages = 0
    for s in range(cfg.max_stages):
        if _budget_hit(trace, cfg):
            stop = "budget"
            break
        if _target_hit(obj, x, cfg):
            stop = "target"
            break
        anchor = x
        v_tilde = obj.full_gradient(anchor, trace.counter)
        trace.record(s, 0, obj.full_value(anchor),
                     grad_norm=float(np.linalg.norm(v_tilde)), force=True)
        truncated = False
        for t in range(m):
            rows = sampler.draw(cfg.batch)
            g_x = obj.batch_gradient(x, rows, trace.counter)
            if cfg.batch == obj.n:
                v = g_x  # full batch: anchor correction identically zero
            else:
                g_anchor = obj.batch_gradient(anchor, rows)
                v = (g_x - g_anchor) + v_tilde
            trace.counter.charge(len(rows), 0)
            x = x - cfg.step_size * v
            if trace.due():
                trace.record(s, t + 1, obj.full_value(x))
            if _budget_hit(trace, cfg):
                truncated = True
                break
        stages = s + 1
        if truncated:
            stop = "budget"
            break
    else:
        if _target_hit(obj, x, cfg):
            stop = "target"
    trace.record(stages, 0, obj.full_value(x), force=True)
    return _finish(obj, x, trace, stop, stages, t0)


@dataclass
class SagaStats:
    steps: int = 0
    max_mean_drift: float = 0.0


def saga_run(
    obj: Objective,
    x0: np.ndarray,
    cfg: BaselineConfig,
    method: str = "saga",
    timing: bool = True,
    validate_every: int = 0,
) -> tuple[RunResult, SagaStats]:
    """Table-based incremental gradient method.

    Stores the full gradient of every component (an n x dim table, fine at
    the scales this runs at) and keeps the table mean incrementally;
    ``validate_every`` > 0 recomputes the mean directly every that many
    steps and tracks the largest drift seen.
    """
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    trace = Trace(method, record_every=obj.n, timing=timing)
    x = np.array(x0, dtype=float)
    stats = SagaStats()
    trace.record(0, 0, obj.full_value(x), force=True)
    if _budget_hit(trace, cfg):
        return _finish(obj, x, trace, "budget", 0, t0), stats

    table = np.empty((obj.n, obj.dim_params))
    for i in range(obj.n):
        table[i] = obj.component_gradient(i, x)
    trace.counter.charge(obj.n, obj.n)
    mean = table.mean(axis=0)
    stop = "max_iters"
    step = 0
    while True:
        if _budget_hit(trace, cfg):
            stop = "budget"
            break
        if cfg.max_iters is not None and step >= cfg.max_iters:
            stop = "max_iters"
            break
        if step % obj.n == 0 and _target_hit(obj, x, cfg):
            stop = "target"
            break
        j = int(rng.integers(obj.n))
        g_new = obj.batch_gradient(x, np.array([j], dtype=np.int64), trace.counter)
        # g + (mean - table[j]): the correction vanishes exactly when the
        # table entry is fresh (n = 1 reduces to plain gradient descent)
        x = x - cfg.step_size * (g_new + (mean - table[j]))
        mean = mean + (g_new - table[j]) / obj.n
        table[j] = g_new
        step += 1
        stats.steps = step
        if validate_every and step % validate_every == 0:
            drift = float(np.linalg.norm(mean - table.mean(axis=0)))
            stats.max_mean_drift = max(stats.max_mean_drift, drift)
        if trace.due():
            trace.record(step // obj.n, step, obj.full_value(x))
    trace.record(step // obj.n, step, obj.full_value(x), force=True)
    return _finish(obj, x, trace, stop, 0, t0), stats


def agd_run(
    obj: Objective,
    x0: np.ndarray,
    cfg: BaselineConfig,
    method: str = "agd",
    timing: bool = True,
) -> RunResult:
    """Deterministic three-step accelerated descent (exact gradients)."""
    t0 = time.perf_counter()
    params = ScheduleParams(cfg.step_size)
    trace = Trace(method, record_every=0, timing=timing)
    y = np.array(x0, dtype=float)
    z = y.copy()
    trace.record(0, 0, obj.full_value(y), force=True)
    stop = "max_iters"
    k = 0
    while True:
        if _budget_hit(trace, cfg):
            stop = "budget"
            break
        if cfg.max_iters is not None and k >= cfg.max_iters:
            break
        if _target_hit(obj, y, cfg):
            stop = "target"
            break
        x = convex_combine(y, z, tau(params, k))
        g = obj.full_gradient(x, trace.counter)
        y = sgd_step(x, g, cfg.step_size)
        z = mirror_step(z, g, alpha(params, k))
        k += 1
        trace.record(0, k, obj.full_value(y))
    return _finish(obj, y, trace, stop, 0, t0)


def sgd_run(
    obj: Objective,
    x0: np.ndarray,
    cfg: BaselineConfig,
    method: str = "sgd",
    timing: bool = True,
) -> RunResult:
    """Plain mini-batch SGD with the decaying step eta_t = eta0/(1 + t/n)."""
    t0 = time.perf_counter()
    sampler = SubsetSampler(obj.n, cfg.seed)
    trace = Trace(method, record_every=obj.n, timing=timing)
    x = np.array(x0, dtype=float)
    trace.record(0, 0, obj.full_value(x), force=True)
    stop = "max_iters"
    t = 0
    while True:
        if _budget_hit(trace, cfg):
            stop = "budget"
            break
        if cfg.max_iters is not None and t >= cfg.max_iters:
            break
        rows = sampler.draw(cfg.batch)
        g = obj.batch_gradient(x, rows, trace.counter)
        eta_t = cfg.step_size / (1.0 + t / obj.n)
        x = x - eta_t * g
        t += 1
        if trace.due():
            trace.record(t * cfg.batch // obj.n, t, obj.full_value(x))
    trace.record(t * cfg.batch // obj.n, t, obj.full_value(x), force=True)
    return _finish(obj, x, trace, stop, 0, t0)
