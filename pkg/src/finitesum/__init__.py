"""Finite-sum convex optimization solvers with evaluation accounting.

Minimizes f(x) = (1/n) sum_i f_i(x) (least squares, binary or multinomial
logistic, optional L2 term) with an accelerated mini-batch variance-reduced
solver plus SVRG/SAGA/AGD/SGD baselines, all instrumented by
component-gradient-evaluation counters for cost-aligned comparisons.
"""

from ._kernels import backend_name
from .amsvrg import (
    FixedM,
    R1,
    R2,
    R3,
    RunResult,
    ScheduleParams,
    SolverConfig,
    alpha,
    restart_r1_horizon,
    restart_r2_trigger,
    restart_r3_trigger,
    run_modified,
    run_multistage,
    run_stage,
    stage_length,
    tau,
)
from .baselines import BaselineConfig, agd_run, saga_run, sgd_run, svrg_run
from .datasets import (
    Dataset,
    SparseExample,
    load_libsvm,
    parse_libsvm_line,
    save_libsvm,
    scale_features,
)
from .geometry import bregman_value, convex_combine, mirror_step, sgd_step
from .objectives import Objective
from .sampling import BatchSchedule, SubsetSampler, delta
from .synthetic import gen_synthetic, make_synthetic
from .tracing import EvalCounter, Trace, TraceRecord, read_csv, write_csv

__version__ = "0.1.0"

__all__ = [
    "BatchSchedule",
    "BaselineConfig",
    "Dataset",
    "EvalCounter",
    "FixedM",
    "Objective",
    "R1",
    "R2",
    "R3",
    "RunResult",
    "ScheduleParams",
    "SolverConfig",
    "SparseExample",
    "SubsetSampler",
    "Trace",
    "TraceRecord",
    "agd_run",
    "alpha",
    "backend_name",
    "bregman_value",
    "convex_combine",
    "delta",
    "gen_synthetic",
    "load_libsvm",
    "make_synthetic",
    "mirror_step",
    "parse_libsvm_line",
    "read_csv",
    "restart_r1_horizon",
    "restart_r2_trigger",
    "restart_r3_trigger",
    "run_modified",
    "run_multistage",
    "run_stage",
    "saga_run",
    "save_libsvm",
    "scale_features",
    "sgd_run",
    "sgd_step",
    "stage_length",
    "svrg_run",
    "tau",
    "write_csv",
]
