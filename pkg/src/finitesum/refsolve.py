"""Reference minimizers used as gap baselines and oracle ground truth.

Deliberately independent of the solver implementations: least squares is
solved by forming and factoring the normal equations, everything else by a
long-horizon deterministic accelerated descent with function restarts, run
to a gradient-norm tolerance (capped at one million iterations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .objectives import Objective


@dataclass
class ReferenceSolution:
    x: np.ndarray
    value: float
    grad_norm: float
    iterations: int


def least_squares_minimum(obj: Objective) -> ReferenceSolution:
    """Exact ridge minimizer via the normal equations
    (X^T X / n + lam I) x = X^T y / n."""
    if obj.kind != "least_squares":
        raise ValueError("direct solve only applies to least squares")
    X = obj.dataset.to_dense()
    y = obj.dataset.labels
    n = obj.n
    gram = X.T @ X / n + obj.lam * np.eye(obj.dim)
    rhs = X.T @ y / n
    try:
        x_star = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        x_star = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    g = obj.full_gradient(x_star)
    return ReferenceSolution(
        x=x_star,
        value=obj.full_value(x_star),
        grad_norm=float(np.linalg.norm(g)),
        iterations=0,
    )


def reference_minimum(
    obj: Objective,
    x0: np.ndarray | None = None,
    grad_tol: float = 1e-12,
    max_iter: int = 10**6,
) -> ReferenceSolution:
    """Deterministic Nesterov descent with function restarts, to grad_tol."""
    L = obj.smoothness_bound()
    eta = 1.0 / L
    x = obj.zero_point() if x0 is None else np.array(x0, dtype=float)
    y = x.copy()
    t = 1.0
    f_x = obj.full_value(x)
    best_x, best_f = x.copy(), f_x
    iterations = 0
    for it in range(max_iter):
        g = obj.full_gradient(y)
        gnorm = float(np.linalg.norm(g))
        iterations = it
        if gnorm <= grad_tol:
            f_y = obj.full_value(y)
            if f_y <= best_f:
                best_x, best_f = y, f_y
            break
        x_new = y - eta * g
        f_new = obj.full_value(x_new)
        if f_new < best_f:
            best_f, best_x = f_new, x_new
        if f_new > f_x:
            # momentum overshoot: restart from the plain gradient step
            y = x_new
            t = 1.0
        else:
            t_new = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
            y = x_new + ((t - 1.0) / t_new) * (x_new - x)
            t = t_new
        x, f_x = x_new, f_new
    g_best = obj.full_gradient(best_x)
    return ReferenceSolution(
        x=best_x,
        value=best_f,
        grad_norm=float(np.linalg.norm(g_best)),
        iterations=iterations,
    )


def minimum(obj: Objective, grad_tol: float = 1e-12, max_iter: int = 10**6) -> ReferenceSolution:
    """Dispatch: direct solve when available, reference descent otherwise."""
    if obj.kind == "least_squares":
        return least_squares_minimum(obj)
    return reference_minimum(obj, grad_tol=grad_tol, max_iter=max_iter)
