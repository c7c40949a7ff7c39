"""Command-line front end.

Subcommands:

* ``run``      one solver on one dataset -> trace CSV + JSON summary
* ``compare``  several methods under an equal eval budget -> merged CSV
* ``verify``   the brute-force oracle suite -> pass/fail table
* ``gen``      synthetic LIBSVM datasets from planted models

Every flag has a default; all randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import amsvrg, baselines, refsolve
from ._kernels import backend_name
from .datasets import load_libsvm, scale_features
from .objectives import Objective
from .oracles import verify_all
from .synthetic import gen_synthetic
from .tracing import write_csv, write_summary

OBJ_KINDS = {
    "least-squares": "least_squares",
    "logistic": "logistic_binary",
    "multinomial": "logistic_multinomial",
}

AMSVRG_RESTARTS = {
    "r1": amsvrg.R1,
    "r2": amsvrg.R2,
    "r3": amsvrg.R3,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FloatingPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finitesum",
        description="Finite-sum convex optimization benchmark "
                    f"(kernel backend: {backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one solver, write trace CSV + summary JSON")
    _add_data_flags(run)
    run.add_argument("--method", required=True,
                     choices=["amsvrg", "amsvrg-mod", "svrg", "saga", "agd", "sgd"])
    run.add_argument("--restart", default="r1", choices=["r1", "r2", "r3", "fixed"],
                     help="stage restart policy for amsvrg (default r1)")
    run.add_argument("--m", type=int, default=None,
                     help="stage horizon for --restart fixed")
    run.add_argument("--option", default="1", choices=["1", "2"],
                     help="stage return: last y (1) or averaged x (2); default 1")
    run.add_argument("--eta", default="auto",
                     help="amsvrg step size, or 'auto' for 1/L (default auto)")
    run.add_argument("--p", type=float, default=0.1,
                     help="batch growth parameter (default 0.1)")
    run.add_argument("--q", type=float, default=0.25,
                     help="stage contraction target for fixed horizons (default 0.25)")
    run.add_argument("--step-size", default="auto",
                     help="baseline step size, or 'auto' for the per-method "
                          "default: svrg 1/(10L), saga 1/(3L), agd/sgd 1/L")
    run.add_argument("--batch", type=int, default=1,
                     help="mini-batch size for svrg/sgd (default 1)")
    run.add_argument("--epoch-len", type=int, default=None,
                     help="svrg inner iterations per stage (default 2n)")
    _add_budget_flags(run)
    run.add_argument("--out", required=True, help="trace CSV path")
    run.add_argument("--summary", default=None,
                     help="summary JSON path (default <out>.summary.json)")
    run.set_defaults(func=cmd_run)

    comp = sub.add_parser("compare",
                          help="run several methods under one eval budget")
    _add_data_flags(comp)
    comp.add_argument("--methods", required=True,
                      help="comma list, e.g. amsvrg-r1,amsvrg-r2,svrg,saga,sgd")
    comp.add_argument("--budget", type=int, default=None,
                      help="per-method paper-axis eval budget (default 100n)")
    comp.add_argument("--eta", default="auto")
    comp.add_argument("--p", type=float, default=0.1)
    comp.add_argument("--out", required=True,
                      help="merged CSV path (lambda sweeps add a suffix)")
    comp.set_defaults(func=cmd_compare)

    ver = sub.add_parser("verify", help="run the oracle verification suite")
    ver.add_argument("--scale", default="small", choices=["small", "full"])
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="generate a synthetic LIBSVM dataset")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--kind", required=True, choices=["least-squares", "logistic"])
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--unit-rows", action="store_true",
                     help="normalize every feature row to unit Euclidean norm")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    return parser


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", required=True, help="LIBSVM dataset path")
    p.add_argument("--obj", default="logistic", choices=sorted(OBJ_KINDS),
                   help="objective kind (default logistic)")
    p.add_argument("--lambda", dest="lam", default="0",
                   help="L2 coefficient; compare accepts a comma list (default 0)")
    p.add_argument("--scale", default="none", choices=["none", "unit_row_norm"],
                   help="feature scaling (default none)")
    p.add_argument("--dim", type=int, default=0,
                   help="force the feature dimension upward (default: from data)")
    p.add_argument("--seed", type=int, default=0)


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-evals", type=int, default=None,
                   help="paper-axis eval budget (default 100n)")
    p.add_argument("--max-stages", type=int, default=10**6)
    p.add_argument("--max-iters", type=int, default=None,
                   help="iteration cap for saga/agd/sgd (default: budget only)")
    p.add_argument("--target-gap", type=float, default=None,
                   help="stop once objective - f* <= this (needs --fstar)")
    p.add_argument("--fstar", default=None,
                   help="reference optimum: a number, or 'auto' to solve/cache")
    p.add_argument("--no-timing", action="store_true",
                   help="write zeros in wall_seconds for reproducible CSVs")


def _load_objective(args, lam: float) -> Objective:
    kind = OBJ_KINDS[args.obj]
    ds = load_libsvm(args.data, min_dim=args.dim)
    if kind == "logistic_binary":
        classes = sorted(set(ds.labels.tolist()))
        if set(classes) != {-1.0, 1.0}:
            if len(classes) != 2:
                raise SystemExit(
                    f"error: logistic needs 2 classes, found {len(classes)}")
            ds = load_libsvm(args.data, min_dim=args.dim,
                             binary_label_map={classes[0]: -1.0, classes[1]: 1.0})
    ds = scale_features(ds, args.scale)
    return Objective(ds, kind, lam=lam)


def _resolve_fstar(args, obj: Objective, lam: float) -> float | None:
    if args.fstar is None:
        return None
    if args.fstar != "auto":
        return float(args.fstar)
    cache_path = f"{args.data}.fstar.json"
    with open(args.data, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()[:16]
    key = f"{digest}:{obj.kind}:{lam!r}:{args.scale}"
    cache = {}
    try:
        with open(cache_path, "r", encoding="utf-8") as fh:
            cache = json.load(fh)
    except (OSError, json.JSONDecodeError):
        pass
    if key in cache:
        return cache[key]
    ref = refsolve.minimum(obj)
    cache[key] = ref.value
    with open(cache_path, "w", encoding="utf-8") as fh:
        json.dump(cache, fh, indent=2, sort_keys=True)
    return ref.value


def _parse_lambdas(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _execute(method: str, restart: str, obj: Objective, args, lam: float,
             budget: int | None, fstar: float | None):
    """Build the per-method config and run; returns a RunResult."""
    L = obj.smoothness_bound()
    x0 = obj.zero_point()
    timing = not getattr(args, "no_timing", False)
    seed = args.seed
    target_gap = getattr(args, "target_gap", None)

    if method in ("amsvrg", "amsvrg-mod"):
        eta = (1.0 / L) if args.eta == "auto" else float(args.eta)
        if restart == "fixed":
            m = getattr(args, "m", None)
            if m is None:
                raise SystemExit("error: --restart fixed needs --m")
            policy = amsvrg.FixedM(m)
        else:
            policy = AMSVRG_RESTARTS[restart]()
        cfg = amsvrg.SolverConfig(
            eta=eta, p=args.p, q=getattr(args, "q", 0.25),
            option="I" if getattr(args, "option", "1") == "1" else "II",
            restart=policy, max_stages=getattr(args, "max_stages", 10**6),
            max_evals=budget, target_gap=target_gap, f_star=fstar, seed=seed,
        )
        tag = f"{method}-{restart}"
        runner = amsvrg.run_modified if method == "amsvrg-mod" else amsvrg.run_multistage
        return runner(obj, x0, cfg, method=tag, timing=timing)

    step_raw = getattr(args, "step_size", "auto")
    defaults = {"svrg": 1.0 / (10.0 * L), "saga": 1.0 / (3.0 * L),
                "agd": 1.0 / L, "sgd": 1.0 / L}
    step = defaults[method] if step_raw == "auto" else float(step_raw)
    cfg = baselines.BaselineConfig(
        step_size=step,
        batch=getattr(args, "batch", 1),
        epoch_length=getattr(args, "epoch_len", None),
        seed=seed,
        max_stages=getattr(args, "max_stages", 10**6),
        max_iters=getattr(args, "max_iters", None),
        max_evals=budget,
        target_gap=target_gap,
        f_star=fstar,
    )
    if method == "svrg":
        return baselines.svrg_run(obj, x0, cfg, timing=timing)
    if method == "saga":
        return baselines.saga_run(obj, x0, cfg, timing=timing)[0]
    if method == "agd":
        return baselines.agd_run(obj, x0, cfg, timing=timing)
    return baselines.sgd_run(obj, x0, cfg, timing=timing)


def cmd_run(args) -> int:
    lams = _parse_lambdas(args.lam)
    if len(lams) != 1:
        raise SystemExit("error: run takes a single --lambda; use compare for sweeps")
    lam = lams[0]
    obj = _load_objective(args, lam)
    budget = args.max_evals if args.max_evals is not None else 100 * obj.n
    fstar = _resolve_fstar(args, obj, lam)
    result = _execute(args.method, args.restart, obj, args, lam, budget, fstar)
    write_csv(args.out, result.trace)
    summary = {
        "method": result.trace.method,
        "stop_reason": result.stop_reason,
        "final_objective": result.final_objective,
        "final_gap": None if fstar is None else result.final_objective - fstar,
        "component_calls": result.trace.counter.component_calls,
        "paper_axis": result.trace.counter.paper_axis,
        "wall_seconds": result.wall_seconds,
        "config": {
            "data": args.data, "obj": args.obj, "lambda": lam,
            "scale": args.scale, "seed": args.seed, "max_evals": budget,
            "method": args.method, "restart": args.restart,
            "eta": args.eta, "p": args.p,
            "step_size": getattr(args, "step_size", "auto"),
            "batch": getattr(args, "batch", 1),
            "kernel_backend": backend_name(),
        },
    }
    write_summary(args.summary or f"{args.out}.summary.json", summary)
    print(f"{result.trace.method}: stop={result.stop_reason} "
          f"f={result.final_objective:.6e} axis={result.trace.counter.paper_axis}")
    return 0


def _parse_method_spec(spec: str) -> tuple[str, str]:
    spec = spec.strip()
    if spec.startswith("amsvrg-mod"):
        rest = spec[len("amsvrg-mod-"):] or "r1"
        return "amsvrg-mod", rest
    if spec.startswith("amsvrg"):
        rest = spec[len("amsvrg-"):] or "r1"
        return "amsvrg", rest
    if spec in ("svrg", "saga", "agd", "sgd"):
        return spec, ""
    raise SystemExit(f"error: unknown method spec {spec!r}")


def cmd_compare(args) -> int:
    specs = [tok for tok in args.methods.split(",") if tok.strip()]
    if len(specs) < 2:
        raise SystemExit("error: compare needs at least two methods")
    lams = _parse_lambdas(args.lam)
    sweep = len(lams) > 1
    exit_code = 0
    for lam in lams:
        obj = _load_objective(args, lam)
        budget = args.budget if args.budget is not None else 100 * obj.n
        out = args.out if not sweep else _suffixed(args.out, f"_lam{lam:g}")
        traces = []
        rows = []
        for spec in specs:
            method, restart = _parse_method_spec(spec)
            result = _execute(method, restart, obj, args, lam, budget, None)
            traces.append(result.trace)
            rows.append({
                "method": result.trace.method,
                "stop_reason": result.stop_reason,
                "final_objective": result.final_objective,
                "best_objective": min(r.objective for r in result.trace.records),
                "paper_axis": result.trace.counter.paper_axis,
                "component_calls": result.trace.counter.component_calls,
            })
        write_csv(out, traces)
        table = _budget_table(traces, budget)
        write_summary(f"{out}.summary.json",
                      {"lambda": lam, "budget": budget, "methods": rows,
                       "best_objective_by_budget": table})
        print(f"lambda={lam:g} budget={budget}")
        for row in rows:
            print(f"  {row['method']:<14} stop={row['stop_reason']:<10} "
                  f"best={row['best_objective']:.6e}")
    return exit_code


def _budget_table(traces, budget: int, points: int = 10) -> list[dict]:
    """Best objective reached by each method at evenly spaced budgets."""
    marks = [budget * (i + 1) // points for i in range(points)]
    table = []
    for mark in marks:
        entry = {"paper_axis": mark}
        for trace in traces:
            seen = [r.objective for r in trace.records if r.paper_axis <= mark]
            entry[trace.method] = min(seen) if seen else None
        table.append(entry)
    return table


def _suffixed(path: str, suffix: str) -> str:
    if "." in path.rsplit("/", 1)[-1]:
        stem, ext = path.rsplit(".", 1)
        return f"{stem}{suffix}.{ext}"
    return f"{path}{suffix}"


def cmd_verify(args) -> int:
    results = verify_all(scale=args.scale, seed=args.seed)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  {r.detail}")
        failures += 0 if r.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def cmd_gen(args) -> int:
    kind = "least_squares" if args.kind == "least-squares" else "logistic"
    ds, meta = gen_synthetic(args.n, args.d, kind, noise=args.noise,
                             seed=args.seed, path=args.out,
                             unit_rows=args.unit_rows)
    print(f"wrote {args.out}: n={ds.n} d={ds.dim} kind={kind} "
          f"(planted model in {args.out}.meta.json)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
