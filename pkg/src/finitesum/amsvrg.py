"""Accelerated mini-batch variance-reduced solver.

A run is a sequence of stages.  Each stage anchors a full gradient at its
start point, then iterates the three-step accelerated update driven by the
variance-reduced direction

    v = grad_I(x) - grad_I(anchor) + full_grad(anchor)

over growing mini-batches.  Step schedules (for step size eta = 1/L):

    alpha_{k+1} = (k+2) eta / 4        mirror step size
    1/tau_k     = alpha_{k+1}/eta + 1/2  (= (k+4)/4, independent of eta)

Stage termination is a restart policy: a fixed horizon, the batch-budget
rule (first m with sum b >= n), the sign test (v, y_next - y_prev) > 0, or
their combination with a 10n hard cap.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import convex_combine, mirror_step, sgd_step
from .objectives import Objective
from .sampling import BatchSchedule, SubsetSampler
from .tracing import Trace

STATIONARY_GRAD_TOL = 1e-12


@dataclass(frozen=True)
class ScheduleParams:
    """Step size and the smoothness constant it encodes (L_used = 1/eta)."""

    eta: float

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")

    @property
    def L_used(self) -> float:
        return 1.0 / self.eta


def alpha(params: ScheduleParams, k: int) -> float:
    """Mirror step size alpha_{k+1} = (k+2)/(4 L_used)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return (k + 2) * params.eta / 4.0


def tau(params: ScheduleParams, k: int) -> float:
    """Mixing weight: 1/tau_k = L_used * alpha_{k+1} + 1/2 = (k+4)/4.

    The product L_used * alpha_{k+1} is (k+2)/4 identically, so tau is
    computed L-free; this keeps tau_0 == 1.0 exact for every step size.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return 4.0 / (k + 4)


def stage_length(L: float, V: float, gap: float, q: float) -> int:
    """Horizon m >= 4 sqrt(L V / (q gap)) that contracts the gap by q."""
    if min(L, V, gap, q) <= 0:
        raise ValueError("stage_length needs positive L, V, gap, q")
    return math.ceil(4.0 * math.sqrt(L * V / (q * gap)))


# -- restart policies ------------------------------------------------------


@dataclass(frozen=True)
class FixedM:
    m: int


@dataclass(frozen=True)
class R1:
    """Fixed horizon: first m whose cumulative batch total reaches n."""


@dataclass(frozen=True)
class R2:
    """Adaptive: stop when (v, y_next - y_prev) > 0, returning y_prev."""


@dataclass(frozen=True)
class R3:
    """R2 gated by sum b > n, plus a hard stop once sum b > 10n."""


RestartPolicy = FixedM | R1 | R2 | R3


def restart_r1_horizon(sched: BatchSchedule) -> int:
    m = 0
    total = 0
    while True:
        total += sched.batch_size(m)
        if total >= sched.n:
            return m
        m += 1


def restart_r2_trigger(v_next: np.ndarray, y_next: np.ndarray, y_prev: np.ndarray) -> bool:
    return float(v_next @ (y_next - y_prev)) > 0.0


def restart_r3_trigger(cumulative_b: int, n: int, r2_fired: bool) -> bool:
    return cumulative_b > 10 * n or (r2_fired and cumulative_b > n)


# -- configuration and results -----------------------------------------------


@dataclass
class SolverConfig:
    eta: float
    p: float = 0.1
    q: float = 0.25
    option: str = "I"
    restart: RestartPolicy = field(default_factory=R1)
    max_stages: int = 10**6
    max_evals: int | None = None  # paper-axis budget
    target_gap: float | None = None
    f_star: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.option not in ("I", "II"):
            raise ValueError(f"option must be 'I' or 'II', got {self.option!r}")
        if self.max_stages < 0:
            raise ValueError("max_stages must be >= 0")
        if self.max_evals is not None and self.max_evals < 0:
            raise ValueError("max_evals must be >= 0")


@dataclass
class StageResult:
    point: np.ndarray
    reason: str  # completed | r2 | r3 | r3_cap | truncated | stationary
    iterations: int
    sum_b: int
    truncated: bool


@dataclass
class RunResult:
    x: np.ndarray
    trace: Trace
    stop_reason: str
    stages: int
    final_objective: float
    wall_seconds: float


# -- stage and multi-stage drivers -----------------------------------------


def run_stage(
    obj: Objective,
    y0: np.ndarray,
    z0: np.ndarray,
    m: int | None,
    cfg: SolverConfig,
    sched: BatchSchedule,
    sampler: SubsetSampler,
    trace: Trace,
    stage: int = 0,
    stationary_tol: float | None = None,
) -> StageResult:
    """One stage.  ``m`` is the fixed horizon (k = 0..m inclusive), or None
    for the adaptive R2/R3 policies.  Charges n for the anchor gradient plus
    2b per inner iteration (b of it on the paper axis); every iteration
    emits a trace row (subject to the trace's cadence filter)."""
    params = ScheduleParams(cfg.eta)
    adaptive = m is None
    if adaptive and not isinstance(cfg.restart, (R2, R3)):
        raise ValueError("adaptive stages require an R2 or R3 restart policy")

    v_tilde = obj.full_gradient(y0, trace.counter)
    anchor_grad = float(np.linalg.norm(v_tilde))
    f_y0 = obj.full_value(y0)
    trace.record(stage, 0, f_y0, grad_norm=anchor_grad, force=True)
    if stationary_tol is not None and anchor_grad <= stationary_tol:
        return StageResult(y0, "stationary", 0, 0, False)

    y = y0
    z = z0
    x_sum = np.zeros_like(y0)
    best_y, best_f = y0, f_y0
    cum_b = 0
    k = 0
    while True:
        x = convex_combine(y, z, tau(params, k))
        b = sched.batch_size(k)
        rows = sampler.draw(b)
        g_x = obj.batch_gradient(x, rows, trace.counter)
        if b == obj.n:
            # full batch: the anchor correction is identically zero, so the
            # direction is the exact gradient (anchor gradient reused)
            v = g_x
        else:
            g_anchor = obj.batch_gradient(y0, rows)
            v = (g_x - g_anchor) + v_tilde
        trace.counter.charge(b, 0)  # anchor re-evaluation: raw calls only
        y_next = sgd_step(x, v, cfg.eta)
        z = mirror_step(z, v, alpha(params, k))
        cum_b += b
        x_sum += x

        f_next = obj.full_value(y_next)
        trace.record(stage, k + 1, f_next)
        if f_next < best_f:
            best_f, best_y = f_next, y_next

        if adaptive:
            fired = k >= 1 and restart_r2_trigger(v, y_next, y)
            if isinstance(cfg.restart, R2):
                if fired:
                    return StageResult(y, "r2", k + 1, cum_b, False)
            else:  # R3
                if cum_b > 10 * obj.n:
                    return StageResult(y_next, "r3_cap", k + 1, cum_b, False)
                if fired and cum_b > obj.n:
                    return StageResult(y, "r3", k + 1, cum_b, False)
        y = y_next

        if not adaptive and k == m:
            out = y if cfg.option == "I" else x_sum / (k + 1)
            return StageResult(out, "completed", k + 1, cum_b, False)
        if cfg.max_evals is not None and trace.counter.paper_axis >= cfg.max_evals:
            return StageResult(best_y, "truncated", k + 1, cum_b, True)
        k += 1


def _stage_horizon(cfg: SolverConfig, sched: BatchSchedule) -> int | None:
    if isinstance(cfg.restart, FixedM):
        return cfg.restart.m
    if isinstance(cfg.restart, R1):
        return restart_r1_horizon(sched)
    return None


def run_multistage(
    obj: Objective,
    w0: np.ndarray,
    cfg: SolverConfig,
    method: str = "amsvrg",
    timing: bool = True,
    record_every: int = 0,
) -> RunResult:
    """Full solver: stages with y_0 = z_0 = w_s until a stop condition."""
    return _run(obj, w0, cfg, method, timing, record_every, modified=False)


def run_modified(
    obj: Objective,
    w0: np.ndarray,
    cfg: SolverConfig,
    method: str = "amsvrg-mod",
    timing: bool = True,
    record_every: int = 0,
) -> RunResult:
    """Variant that re-anchors the mirror iterate at the original start:
    y_0 = w_s but z_0 = w_0 at every stage."""
    return _run(obj, w0, cfg, method, timing, record_every, modified=True)


def _run(obj, w0, cfg, method, timing, record_every, modified) -> RunResult:
    t_start = time.perf_counter()
    w0 = np.asarray(w0, dtype=float)
    if w0.shape != (obj.dim_params,):
        raise ValueError(f"start point must have shape ({obj.dim_params},)")
    sched = BatchSchedule(obj.n, cfg.p)
    sampler = SubsetSampler(obj.n, cfg.seed)
    trace = Trace(method, record_every=record_every, timing=timing)
    m = _stage_horizon(cfg, sched)

    w = w0
    stop = "max_stages"
    stages = 0
    for s in range(cfg.max_stages):
        if cfg.max_evals is not None and trace.counter.paper_axis >= cfg.max_evals:
            stop = "budget"
            break
        if _target_reached(obj, w, cfg):
            stop = "target"
            break
        z0 = w0 if modified else w
        result = run_stage(
            obj, w, z0, m, cfg, sched, sampler, trace,
            stage=s, stationary_tol=STATIONARY_GRAD_TOL,
        )
        w = result.point
        stages = s + 1
        if result.reason == "stationary":
            stop = "stationary"
            break
        if result.truncated:
            stop = "budget"
            break
    else:
        if _target_reached(obj, w, cfg):
            stop = "target"

    return RunResult(
        x=w,
        trace=trace,
        stop_reason=stop,
        stages=stages,
        final_objective=obj.full_value(w),
        wall_seconds=time.perf_counter() - t_start,
    )


def _target_reached(obj: Objective, w: np.ndarray, cfg: SolverConfig) -> bool:
    if cfg.target_gap is None or cfg.f_star is None:
        return False
    return obj.full_value(w) - cfg.f_star <= cfg.target_gap
