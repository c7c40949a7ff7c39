import numpy as np
import pytest

from finitesum.datasets import Dataset, SparseExample, from_examples


def dataset_from_rows(rows, labels, dim=None):
    """Dense row list -> Dataset (exact values, implicit zeros kept)."""
    examples = []
    for row, label in zip(rows, labels):
        feats = tuple(
            (j + 1, float(v)) for j, v in enumerate(row) if float(v) != 0.0
        )
        examples.append(SparseExample(features=feats, label=float(label)))
    d = dim if dim is not None else max(len(r) for r in rows)
    return from_examples(examples, min_dim=d)


def random_dataset(rng, n, d, labels="real") -> Dataset:
    X = rng.standard_normal((n, d))
    if labels == "real":
        y = rng.standard_normal(n)
    elif labels == "binary":
        y = rng.choice([-1.0, 1.0], size=n)
    else:
        y = rng.integers(0, 3, size=n).astype(float)
    return dataset_from_rows(X, y, dim=d)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
