"""Finite-sum objectives f(x) = (1/n) sum_i f_i(x) with L2 regularization.

Three losses over (a_i, b_i) pairs:

* ``least_squares``        f_i(x) = 1/2 (a_i.x - b_i)^2
* ``logistic_binary``      f_i(x) = log(1 + exp(-b_i a_i.x)),  b_i in {-1,+1}
* ``logistic_multinomial`` softmax cross-entropy over C classes, parameters
  flattened from a (dim, C) block

The (lam/2)||x||^2 term is folded into every component, so the full
objective is lam-strongly convex whenever lam > 0.  Gradient entry points
optionally charge an evaluation counter: one unit per component touched.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit, logsumexp

from . import _kernels
from .datasets import Dataset

KINDS = ("least_squares", "logistic_binary", "logistic_multinomial")


class Objective:
    """Bundle of component values/gradients over a fixed dataset."""

    def __init__(self, dataset: Dataset, kind: str, lam: float = 0.0):
        if kind not in KINDS:
            raise ValueError(f"unknown objective kind {kind!r}")
        if not np.isfinite(lam) or lam < 0:
            raise ValueError(f"lambda must be finite and >= 0, got {lam}")
        self.dataset = dataset
        self.kind = kind
        self.lam = float(lam)
        self.n = dataset.n
        self.dim = dataset.dim
        self._matrix = _kernels.make_matrix(
            dataset.indptr, dataset.indices, dataset.data, dataset.n, dataset.dim
        )
        self._all_rows = np.arange(self.n, dtype=np.int64)
        self._sq_norms = _kernels.row_sq_norms(self._matrix)

        if kind == "logistic_binary":
            if set(dataset.labels.tolist()) - {-1.0, 1.0}:
                raise ValueError("logistic_binary needs labels in {-1, +1}")
        if kind == "logistic_multinomial":
            self.classes = np.array(sorted(set(dataset.labels.tolist())))
            self.n_classes = len(self.classes)
            lookup = {c: j for j, c in enumerate(self.classes)}
            self._y = np.array([lookup[v] for v in dataset.labels], dtype=np.int64)
            self.dim_params = self.dim * self.n_classes
        else:
            self.n_classes = 1
            self.dim_params = self.dim

    # -- values ----------------------------------------------------------

    def batch_value(self, x: np.ndarray, rows: np.ndarray | None = None) -> float:
        """Mean of f_i over ``rows`` (all components when rows is None)."""
        rows = self._rows(rows)
        reg = 0.5 * self.lam * float(x @ x)
        if self.kind == "least_squares":
            t = _kernels.subset_dots(self._matrix, rows, x)
            r = t - self.dataset.labels[rows]
            return 0.5 * float(r @ r) / len(rows) + reg
        if self.kind == "logistic_binary":
            t = _kernels.subset_dots(self._matrix, rows, x)
            z = -self.dataset.labels[rows] * t
            return float(np.mean(np.logaddexp(0.0, z))) + reg
        W = x.reshape(self.dim, self.n_classes)
        scores = _kernels.subset_dots(self._matrix, rows, W)
        lse = logsumexp(scores, axis=1)
        picked = scores[np.arange(len(rows)), self._y[rows]]
        return float(np.mean(lse - picked)) + reg

    def component_value(self, i: int, x: np.ndarray) -> float:
        """f_i(x) including the regularization term."""
        self._check_index(i)
        return self.batch_value(x, np.array([i], dtype=np.int64))

    def full_value(self, x: np.ndarray) -> float:
        return self.batch_value(x, None)

    # -- gradients ---------------------------------------------------------

    def batch_gradient(self, x, rows=None, counter=None) -> np.ndarray:
        """(1/|rows|) sum of component gradients; charges |rows| evaluations
        (both raw and paper-axis) when a counter is given."""
        rows = self._rows(rows)
        b = len(rows)
        if b == 0:
            raise ValueError("empty batch")
        if counter is not None:
            counter.charge(b, b)

        if self.kind == "least_squares":
            t = _kernels.subset_dots(self._matrix, rows, x)
            coef = (t - self.dataset.labels[rows]) / b
            return _kernels.subset_weighted_sum(self._matrix, rows, coef) + self.lam * x
        if self.kind == "logistic_binary":
            t = _kernels.subset_dots(self._matrix, rows, x)
            y = self.dataset.labels[rows]
            coef = -y * expit(-y * t) / b
            return _kernels.subset_weighted_sum(self._matrix, rows, coef) + self.lam * x
        W = x.reshape(self.dim, self.n_classes)
        scores = _kernels.subset_dots(self._matrix, rows, W)
        probs = np.exp(scores - logsumexp(scores, axis=1, keepdims=True))
        probs[np.arange(b), self._y[rows]] -= 1.0
        grad = _kernels.subset_weighted_sum(self._matrix, rows, probs / b)
        return grad.ravel() + self.lam * x

    def component_gradient(self, i: int, x: np.ndarray) -> np.ndarray:
        self._check_index(i)
        return self.batch_gradient(x, np.array([i], dtype=np.int64))

    def full_gradient(self, x, counter=None) -> np.ndarray:
        """Average over all n components; charges n when a counter is given."""
        return self.batch_gradient(x, None, counter=counter)

    # -- curvature bounds --------------------------------------------------

    def smoothness_bound(self) -> float:
        """Closed-form upper bound L on the component gradient Lipschitz
        constant (loose but safe for the eta = 1/L default)."""
        max_sq = float(self._sq_norms.max()) if self.n else 0.0
        scale = {"least_squares": 1.0, "logistic_binary": 0.25,
                 "logistic_multinomial": 0.5}[self.kind]
        return scale * max_sq + self.lam

    def strong_convexity_bound(self) -> float:
        """mu = lam: the regularizer is the only guaranteed curvature."""
        return self.lam

    # -- helpers -------------------------------------------------------

    def zero_point(self) -> np.ndarray:
        return np.zeros(self.dim_params)

    def _rows(self, rows) -> np.ndarray:
        if rows is None:
            return self._all_rows
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim != 1:
            raise ValueError("rows must be one-dimensional")
        if len(rows) == self.n:
            # the only size-n subset is everything: normalize so the full
            # and batch code paths coincide bit for bit
            return self._all_rows
        if len(rows) and (rows.min() < 0 or rows.max() >= self.n):
            raise IndexError("component index out of range")
        return rows

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"component index {i} out of range [0, {self.n})")
