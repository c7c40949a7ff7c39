"""Brute-force and exact-arithmetic checkers behind the property tests
and the ``verify`` subcommand.

Each oracle recomputes its quantity by a route independent of the code it
checks: exhaustive subset enumeration for the variance identities, exact
rational arithmetic for the step-schedule identities, central finite
differences for gradients, and linear scans for the batch schedule.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import refsolve
from .amsvrg import ScheduleParams, alpha, restart_r1_horizon, tau
from .objectives import Objective
from .sampling import BatchSchedule, delta

ENUMERATION_CAP = 12


def _check_enumerable(n: int) -> None:
    if n > ENUMERATION_CAP:
        raise ValueError(f"n={n} too large for exhaustive enumeration (cap {ENUMERATION_CAP})")


def oracle_subset_variance(vectors, b: int) -> tuple[float, float]:
    """Exhaustive LHS and closed-form RHS of the subset-mean variance
    identity  E||mean_S xi - mu||^2 = (n-b)/(b(n-1)) * mean_i ||xi_i - mu||^2."""
    xs = [np.atleast_1d(np.asarray(v, dtype=float)) for v in vectors]
    n = len(xs)
    _check_enumerable(n)
    if not 1 <= b <= n:
        raise ValueError(f"b={b} out of range [1, {n}]")
    mu = np.mean(xs, axis=0)
    lhs = 0.0
    count = 0
    for subset in itertools.combinations(range(n), b):
        dev = np.mean([xs[i] for i in subset], axis=0) - mu
        lhs += float(dev @ dev)
        count += 1
    lhs /= count
    rhs = delta(n, b) * float(np.mean([(x - mu) @ (x - mu) for x in xs]))
    return lhs, rhs


def oracle_unbiasedness(obj: Objective, x, y0, b: int) -> float:
    """Norm of (exhaustive subset average of the anchored direction) minus
    the full gradient at x; zero when the direction is unbiased."""
    _check_enumerable(obj.n)
    v_tilde = obj.full_gradient(y0)
    target = obj.full_gradient(x)
    acc = np.zeros_like(target)
    count = 0
    for subset in itertools.combinations(range(obj.n), b):
        rows = np.array(subset, dtype=np.int64)
        v = obj.batch_gradient(x, rows) - obj.batch_gradient(y0, rows) + v_tilde
        acc += v
        count += 1
    return float(np.linalg.norm(acc / count - target))


def oracle_variance_bound(obj: Objective, x, y0, b: int, x_star=None) -> tuple[float, float]:
    """Exhaustive conditional variance of the anchored direction, and the
    bound 4 L delta (f(x) - f* + f(y0) - f*)."""
    _check_enumerable(obj.n)
    if x_star is None:
        x_star = refsolve.minimum(obj).x
    f_star = obj.full_value(x_star)
    v_tilde = obj.full_gradient(y0)
    grad = obj.full_gradient(x)
    variance = 0.0
    count = 0
    for subset in itertools.combinations(range(obj.n), b):
        rows = np.array(subset, dtype=np.int64)
        v = obj.batch_gradient(x, rows) - obj.batch_gradient(y0, rows) + v_tilde
        dev = v - grad
        variance += float(dev @ dev)
        count += 1
    variance /= count
    L = obj.smoothness_bound()
    bound = 4.0 * L * delta(obj.n, b) * (
        (obj.full_value(x) - f_star) + (obj.full_value(y0) - f_star)
    )
    return variance, bound


def oracle_fd_gradient(obj: Objective, i: int, x, step: float = 1e-5) -> float:
    """Relative error of the component gradient against central differences:
    ||grad - fd|| / max(1, ||fd||)."""
    x = np.asarray(x, dtype=float)
    fd = np.zeros_like(x)
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = step
        fd[j] = (obj.component_value(i, x + e) - obj.component_value(i, x - e)) / (2 * step)
    g = obj.component_gradient(i, x)
    return float(np.linalg.norm(g - fd) / max(1.0, np.linalg.norm(fd)))


# -- batch schedule and restart horizon ----------------------------------


def oracle_min_batch(n: int, p: float, k: int) -> int:
    """Smallest b in 1..n with 4 L delta_{k+1} alpha_{k+1} <= p, scanned in
    exact rationals ((n-b)(k+2) <= p b (n-1); the L factors cancel)."""
    pf = Fraction(p)
    for b in range(1, n + 1):
        if Fraction((n - b) * (k + 2)) <= pf * b * (n - 1):
            return b
    return n


def oracle_r1(n: int, p: float) -> int:
    """Linear-scan restart horizon: first m with sum_{k<=m} b_{k+1} >= n,
    batch sizes from the independent exact scan."""
    total = 0
    m = 0
    while True:
        total += oracle_min_batch(n, p, m)
        if total >= n:
            return m
        m += 1


# -- exact-rational schedule identities ------------------------------------


def exact_alpha(L: Fraction, k: int) -> Fraction:
    return Fraction(k + 2) / (4 * L)


def exact_tau(L: Fraction, k: int) -> Fraction:
    return 1 / (L * exact_alpha(L, k) + Fraction(1, 2))


def telescoping_residual(L, k: int) -> Fraction:
    """L a_{k+1}^2 - a_{k+1}/2 - L a_k^2 + 1/(16L), exactly; the schedule
    satisfies the telescoping identity iff this is zero.  Defined for k >= 1
    (a_k needs k-1 >= 0)."""
    Lf = Fraction(L)
    a_next = exact_alpha(Lf, k)
    a_prev = exact_alpha(Lf, k - 1)
    return Lf * a_next**2 - a_next / 2 - Lf * a_prev**2 + 1 / (16 * Lf)


def theorem_coefficient(n: int, p: float, k: int, L, b: int | None = None) -> Fraction:
    """1/tau_k - (1 + 4 delta_{k+1}) L alpha_{k+1} in exact arithmetic,
    using the implementation's batch size unless b is given.  Nonnegative
    whenever the batch rule enforces 4 L delta alpha <= p <= 1/2."""
    if b is None:
        b = BatchSchedule(n, p).batch_size(k)
    Lf = Fraction(L)
    a = exact_alpha(Lf, k)
    inv_tau = Lf * a + Fraction(1, 2)
    d = Fraction(n - b, b * (n - 1)) if n > 1 else Fraction(0)
    return inv_tau - (1 + 4 * d) * Lf * a


def schedule_float_error(eta: float, k_max: int) -> float:
    """Worst relative error of the float alpha/tau against their exact
    rational values over k = 0..k_max (ties the float path to the oracle)."""
    params = ScheduleParams(eta)
    L = 1 / Fraction(eta)
    worst = 0.0
    for k in range(k_max + 1):
        a_exact = exact_alpha(L, k)
        t_exact = exact_tau(L, k)
        worst = max(
            worst,
            abs(alpha(params, k) - a_exact) / a_exact,
            abs(tau(params, k) - t_exact) / t_exact,
        )
    return float(worst)


# -- the verify report ----------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_objective(rng, n, d, kind, lam) -> Objective:
    from .synthetic import make_synthetic

    ds, _ = make_synthetic(
        n=n, d=d,
        kind="least_squares" if kind == "least_squares" else "logistic",
        noise=0.25,
        seed=int(rng.integers(2**31)),
    )
    return Objective(ds, kind, lam=lam)


def verify_all(scale: str = "small", seed: int = 0) -> list[CheckResult]:
    """Run every oracle check; ``full`` uses the acceptance-level counts."""
    full = scale == "full"
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []

    # subset-mean variance identity, exhaustive vs closed form
    cases = 100 if full else 25
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(1, 5))
        b = int(rng.integers(1, n + 1))
        vectors = [rng.standard_normal(d) for _ in range(n)]
        lhs, rhs = oracle_subset_variance(vectors, b)
        worst = max(worst, abs(lhs - rhs))
    results.append(CheckResult(
        "subset_variance_identity", worst <= 1e-12,
        f"{cases} instances, max |lhs-rhs| = {worst:.2e}"))

    # unbiasedness of the anchored direction
    cases = 60 if full else 20
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(1, 5))
        kind = ("least_squares", "logistic_binary")[int(rng.integers(2))]
        obj = _random_objective(rng, n, d, kind, lam=float(rng.choice([0.0, 0.1])))
        b = int(rng.integers(1, n + 1))
        x = rng.standard_normal(obj.dim_params)
        y0 = rng.standard_normal(obj.dim_params)
        worst = max(worst, oracle_unbiasedness(obj, x, y0, b))
    results.append(CheckResult(
        "direction_unbiasedness", worst <= 1e-12,
        f"{cases} instances, max deviation = {worst:.2e}"))

    # variance bound on least-squares instances with direct minimizers
    cases = 100 if full else 25
    violations = 0
    margin = np.inf
    for _ in range(cases):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(1, 5))
        obj = _random_objective(rng, n, d, "least_squares", lam=0.05)
        b = int(rng.integers(1, n + 1))
        x = rng.standard_normal(obj.dim_params)
        y0 = rng.standard_normal(obj.dim_params)
        variance, bound = oracle_variance_bound(obj, x, y0, b)
        if variance > bound + 1e-12:
            violations += 1
        margin = min(margin, bound - variance)
    results.append(CheckResult(
        "direction_variance_bound", violations == 0,
        f"{cases} instances, {violations} violations, min margin = {margin:.2e}"))

    # gradients vs central differences
    cases = 50 if full else 15
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(1, 5))
        kind = ("least_squares", "logistic_binary", "logistic_multinomial")[
            int(rng.integers(3))]
        obj = _random_objective(rng, n, d, kind, lam=float(rng.choice([0.0, 0.5])))
        i = int(rng.integers(obj.n))
        x = rng.standard_normal(obj.dim_params)
        worst = max(worst, oracle_fd_gradient(obj, i, x))
    results.append(CheckResult(
        "finite_difference_gradients", worst <= 1e-6,
        f"{cases} instances, max rel err = {worst:.2e}"))

    # schedule identities in exact arithmetic
    k_max = 10**4 if full else 10**3
    worst_frac = Fraction(0)
    for L in (Fraction(1, 10), Fraction(1), Fraction(10)):
        for k in range(1, k_max + 1):
            worst_frac = max(worst_frac, abs(telescoping_residual(L, k)) * 16 * L)
    tau0_ok = all(tau(ScheduleParams(1.0 / L), 0) == 1.0 for L in (0.1, 1.0, 10.0))
    float_err = max(schedule_float_error(eta, 2000) for eta in (10.0, 1.0, 0.1))
    ok = worst_frac == 0 and tau0_ok and float_err <= 1e-14
    results.append(CheckResult(
        "schedule_identities", ok,
        f"k<= {k_max}: telescoping residual {float(worst_frac):.1e}, "
        f"tau0==1 {tau0_ok}, float-vs-exact rel err {float_err:.2e}"))

    # Theorem-style coefficient nonnegativity under the batch rule
    k_max = 10**4 if full else 10**3
    worst_coeff = None
    for p in (0.1, 0.25, 0.5):
        sched = BatchSchedule(1000, p)
        for k in range(k_max + 1):
            c = theorem_coefficient(1000, p, k, 1, b=sched.batch_size(k))
            if worst_coeff is None or c < worst_coeff:
                worst_coeff = c
    results.append(CheckResult(
        "stage_coefficient_nonnegative", worst_coeff >= 0,
        f"min coefficient = {float(worst_coeff):.3e} over k<={k_max}, p in {{0.1,0.25,0.5}}"))

    # batch size minimality against the exact scan
    mismatches = 0
    for n in (10, 100, 1000):
        for p in (0.1, 0.5):
            sched = BatchSchedule(n, p)
            for k in range(0, 201):
                if sched.batch_size(k) != oracle_min_batch(n, p, k):
                    mismatches += 1
    results.append(CheckResult(
        "batch_size_minimality", mismatches == 0,
        f"grid n in {{10,100,1000}}, p in {{0.1,0.5}}, k<=200: {mismatches} mismatches"))

    # restart horizon agreement
    mismatches = 0
    n_grid = range(1, 501) if full else range(1, 501, 7)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # p > 1/2 is deliberate on this grid
        for n in n_grid:
            for p in (0.1, 0.5, 1.0, 2.0):
                if restart_r1_horizon(BatchSchedule(n, p)) != oracle_r1(n, p):
                    mismatches += 1
    spot = restart_r1_horizon(BatchSchedule(100, 0.5))
    results.append(CheckResult(
        "restart_horizon_agreement", mismatches == 0 and spot == 9,
        f"{mismatches} mismatches; spot n=100,p=0.5 -> m={spot} (expect 9)"))

    return results
