"""Synthetic LIBSVM datasets from planted linear models.

Desk-scale stand-ins for the large public datasets: Gaussian feature rows,
labels from a planted weight vector plus noise.  The planted model (and
everything needed to recompute the generation) goes into a sidecar
``<out>.meta.json`` so gap baselines can be rebuilt later.
"""

from __future__ import annotations

import json

import numpy as np

from .datasets import Dataset, from_examples, save_libsvm, SparseExample

KINDS = ("least_squares", "logistic")


def make_synthetic(
    n: int,
    d: int,
    kind: str,
    noise: float = 0.0,
    seed: int = 0,
    unit_rows: bool = False,
) -> tuple[Dataset, dict]:
    """Build the dataset in memory; returns (dataset, metadata).

    least_squares:  b_i = a_i . w + noise * eps_i
    logistic:       b_i = sign(a_i . w), flipped with probability ``noise``
    """
    if kind not in KINDS:
        raise ValueError(f"unknown synthetic kind {kind!r}")
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    if unit_rows:
        X /= np.linalg.norm(X, axis=1, keepdims=True)
    w = rng.standard_normal(d) / np.sqrt(d)
    margins = X @ w
    if kind == "least_squares":
        labels = margins + noise * rng.standard_normal(n)
    else:
        labels = np.where(margins >= 0.0, 1.0, -1.0)
        if noise > 0.0:
            flips = rng.random(n) < noise
            labels[flips] = -labels[flips]

    examples = [
        SparseExample(
            features=tuple((j + 1, float(X[i, j])) for j in range(d)),
            label=float(labels[i]),
        )
        for i in range(n)
    ]
    ds = from_examples(examples, min_dim=d)
    meta = {
        "kind": kind,
        "n": n,
        "d": d,
        "noise": noise,
        "seed": seed,
        "unit_rows": unit_rows,
        "planted_weights": [float(v) for v in w],
    }
    return ds, meta


def gen_synthetic(
    n: int,
    d: int,
    kind: str,
    noise: float,
    seed: int,
    path,
    unit_rows: bool = False,
) -> tuple[Dataset, dict]:
    """Generate and write the LIBSVM file plus its metadata sidecar."""
    ds, meta = make_synthetic(n, d, kind, noise=noise, seed=seed, unit_rows=unit_rows)
    save_libsvm(ds, path)
    with open(f"{path}.meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return ds, meta
