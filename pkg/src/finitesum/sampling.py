"""Uniform subset sampling and the growing mini-batch schedule.

The batch size at inner iteration k is

    b_{k+1} = min(n, ceil( n (k+2) / (p (n-1) + k+2) ))

the minimal integer batch for which the variance shrink factor
delta = (n-b)/(b(n-1)) satisfies 4 L delta alpha_{k+1} <= p under the
alpha_{k+1} = (k+2)/(4L) step schedule (L cancels).  The ceiling is taken
in exact rational arithmetic so minimality holds even at exact ties.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

import numpy as np


def delta(n: int, b: int) -> float:
    """Variance shrink factor (n-b)/(b(n-1)) of a size-b uniform subset."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 1 <= b <= n:
        raise ValueError(f"batch size {b} out of range [1, {n}]")
    if n == 1:
        return 0.0
    return (n - b) / (b * (n - 1))


class BatchSchedule:
    """b_{k+1} as a function of the inner iteration index k >= 0."""

    def __init__(self, n: int, p: float):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        if not (p > 0) or not math.isfinite(p):
            raise ValueError(f"p must be positive and finite, got {p}")
        if p > 0.5:
            warnings.warn(
                f"p={p} is outside the analyzed range (0, 1/2]; the schedule "
                "still applies but the per-stage bound is not guaranteed",
                stacklevel=2,
            )
        self.n = n
        self.p = float(p)
        self._p_frac = Fraction(self.p)
        self._cache: list[int] = []

    def batch_size(self, k: int) -> int:
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        while len(self._cache) <= k:
            self._cache.append(self._compute(len(self._cache)))
        return self._cache[k]

    def _compute(self, k: int) -> int:
        n = self.n
        num = Fraction(n * (k + 2))
        den = self._p_frac * (n - 1) + (k + 2)
        return min(n, math.ceil(num / den))

    def cumulative(self, m: int) -> int:
        """sum_{k=0}^{m} b_{k+1}."""
        return sum(self.batch_size(k) for k in range(m + 1))


class SubsetSampler:
    """Seeded uniform sampling of size-b subsets, without replacement.

    Partial Fisher-Yates over a persistent index buffer: each draw costs
    O(b), each distinct seed gives a reproducible subset sequence, and the
    returned subset is sorted (subsets are unordered; sorting fixes the
    accumulation order for bit-deterministic gradients).
    """

    def __init__(self, n: int, seed: int):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        self.n = n
        self.seed = seed
        self._rng = np.random.Generator(np.random.PCG64(seed))
        self._buf = np.arange(n, dtype=np.int64)

    def draw(self, b: int) -> np.ndarray:
        if not 1 <= b <= self.n:
            raise ValueError(f"subset size {b} out of range [1, {self.n}]")
        buf = self._buf
        for j in range(b):
            swap = j + int(self._rng.integers(self.n - j))
            buf[j], buf[swap] = buf[swap], buf[j]
        return np.sort(buf[:b])
