"""LIBSVM-format sparse datasets.

On disk a line is ``<label> <index>:<value> ...`` with 1-based, strictly
increasing indices and ``#`` starting a comment.  In memory indices are
0-based CSR arrays; absent features are implicit zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class LibsvmParseError(ValueError):
    """Malformed LIBSVM text (bad token, bad index order, bad labels)."""


@dataclass(frozen=True)
class SparseExample:
    """One ``(a_i, b_i)`` pair: 1-based sorted feature pairs plus a label."""

    features: tuple[tuple[int, float], ...]
    label: float


@dataclass
class Dataset:
    """Immutable-after-load CSR design matrix with labels.

    ``indptr``/``indices``/``data`` are the usual CSR triplet (0-based,
    int64 indices) over an ``n x dim`` matrix; ``labels`` has length n.
    """

    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    labels: np.ndarray
    dim: int
    class_labels: tuple[float, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return len(self.labels)

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """0-based indices and values of example i."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.data[lo:hi]

    def row_sq_norms(self) -> np.ndarray:
        out = np.zeros(self.n)
        np.add.at(out, np.repeat(np.arange(self.n), np.diff(self.indptr)), self.data**2)
        return out

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n, self.dim))
        for i in range(self.n):
            idx, val = self.row(i)
            dense[i, idx] = val
        return dense


def parse_libsvm_line(line: str, lineno: int = 0) -> SparseExample:
    """Parse one LIBSVM line; text after ``#`` is ignored.

    Raises LibsvmParseError on malformed tokens or non-increasing indices.
    """
    text = line.split("#", 1)[0].strip()
    if not text:
        raise LibsvmParseError(f"line {lineno}: empty after stripping comment")
    tokens = text.split()
    try:
        label = float(tokens[0])
    except ValueError as exc:
        raise LibsvmParseError(f"line {lineno}: bad label {tokens[0]!r}") from exc

    pairs: list[tuple[int, float]] = []
    prev_idx = 0
    for tok in tokens[1:]:
        if ":" not in tok:
            raise LibsvmParseError(f"line {lineno}: bad token {tok!r}")
        idx_s, val_s = tok.split(":", 1)
        try:
            idx = int(idx_s)
            val = float(val_s)
        except ValueError as exc:
            raise LibsvmParseError(f"line {lineno}: bad token {tok!r}") from exc
        if idx < 1:
            raise LibsvmParseError(f"line {lineno}: index {idx} is not 1-based")
        if idx <= prev_idx:
            raise LibsvmParseError(
                f"line {lineno}: index {idx} not strictly increasing after {prev_idx}"
            )
        if not math.isfinite(val):
            raise LibsvmParseError(f"line {lineno}: non-finite value {val_s!r}")
        pairs.append((idx, val))
        prev_idx = idx
    return SparseExample(features=tuple(pairs), label=label)


def load_libsvm(
    path,
    binary_label_map: dict[float, float] | None = None,
    min_dim: int = 0,
) -> Dataset:
    """Load a LIBSVM file into a Dataset.

    ``binary_label_map`` remaps exactly-two-class label sets into {-1, +1}
    (values of the map must be -1/+1).  ``min_dim`` forces the dimension up,
    for train/test files whose max index differs.
    """
    examples: list[SparseExample] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.split("#", 1)[0].strip():
                continue
            examples.append(parse_libsvm_line(raw, lineno))
    if not examples:
        raise LibsvmParseError(f"{path}: no examples")
    return from_examples(examples, binary_label_map=binary_label_map, min_dim=min_dim)


def from_examples(
    examples: list[SparseExample],
    binary_label_map: dict[float, float] | None = None,
    min_dim: int = 0,
) -> Dataset:
    n = len(examples)
    nnz = sum(len(ex.features) for ex in examples)
    indptr = np.zeros(n + 1, dtype=np.int64)
    indices = np.zeros(nnz, dtype=np.int64)
    data = np.zeros(nnz, dtype=np.float64)
    labels = np.zeros(n, dtype=np.float64)

    pos = 0
    dim = min_dim
    for i, ex in enumerate(examples):
        labels[i] = ex.label
        for idx, val in ex.features:
            indices[pos] = idx - 1  # disk is 1-based, memory is 0-based
            data[pos] = val
            pos += 1
            if idx > dim:
                dim = idx
        indptr[i + 1] = pos

    if binary_label_map is not None:
        distinct = set(labels.tolist())
        if len(distinct) != 2:
            raise LibsvmParseError(
                f"binary label map given but {len(distinct)} classes observed"
            )
        if distinct != set(binary_label_map.keys()):
            raise LibsvmParseError(
                f"binary label map keys {sorted(binary_label_map)} do not match "
                f"observed labels {sorted(distinct)}"
            )
        if set(binary_label_map.values()) != {-1.0, 1.0}:
            raise LibsvmParseError("binary label map must target {-1, +1}")
        labels = np.array([binary_label_map[v] for v in labels])

    class_labels = tuple(sorted(set(labels.tolist())))
    return Dataset(
        indptr=indptr,
        indices=indices,
        data=data,
        labels=labels,
        dim=dim,
        class_labels=class_labels,
    )


def scale_features(ds: Dataset, mode: str = "none") -> Dataset:
    """Return a scaled copy: ``unit_row_norm`` divides each nonzero row by
    its Euclidean norm (zero rows untouched); ``none`` is the identity."""
    if mode == "none":
        return ds
    if mode != "unit_row_norm":
        raise ValueError(f"unknown scale mode {mode!r}")
    data = ds.data.copy()
    norms = np.sqrt(ds.row_sq_norms())
    for i in range(ds.n):
        lo, hi = ds.indptr[i], ds.indptr[i + 1]
        if norms[i] > 0.0:
            data[lo:hi] /= norms[i]
    return Dataset(
        indptr=ds.indptr.copy(),
        indices=ds.indices.copy(),
        data=data,
        labels=ds.labels.copy(),
        dim=ds.dim,
        class_labels=ds.class_labels,
    )


def to_libsvm_text(ds: Dataset) -> str:
    """Serialize back to LIBSVM text (1-based indices, round-trip exact)."""
    lines = []
    for i in range(ds.n):
        idx, val = ds.row(i)
        parts = [repr(float(ds.labels[i]))]
        parts.extend(f"{int(j) + 1}:{float(v)!r}" for j, v in zip(idx, val))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def save_libsvm(ds: Dataset, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_libsvm_text(ds))
