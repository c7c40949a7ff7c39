"""Euclidean geometry for the three-step accelerated iteration.

The distance generating function is d(x) = 1/2 ||x||^2, so the Bregman
divergence is V_x(y) = 1/2 ||x - y||^2 and both prox subproblems (the
gradient step and the mirror step) have the closed forms below.  The class
is the seam where a non-Euclidean geometry would plug in; only the
Euclidean case is implemented.
"""

from __future__ import annotations

import numpy as np


class EuclideanBregman:
    """V_x(y) = 1/2 ||x - y||^2 and its induced prox steps."""

    @staticmethod
    def value(x: np.ndarray, y: np.ndarray) -> float:
        if x.shape != y.shape:
            raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
        d = x - y
        return 0.5 * float(d @ d)

    @staticmethod
    def mirror_step(z: np.ndarray, v: np.ndarray, alpha: float) -> np.ndarray:
        """argmin_u alpha (v, u - z) + V_z(u), i.e. z - alpha v."""
        if alpha <= 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        return z - alpha * v


def bregman_value(x: np.ndarray, y: np.ndarray) -> float:
    return EuclideanBregman.value(x, y)


def sgd_step(x: np.ndarray, v: np.ndarray, eta: float) -> np.ndarray:
    """argmin_y eta (v, y - x) + 1/2 ||y - x||^2, i.e. x - eta v."""
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta}")
    return x - eta * v


def mirror_step(z: np.ndarray, v: np.ndarray, alpha: float) -> np.ndarray:
    return EuclideanBregman.mirror_step(z, v, alpha)


def convex_combine(y: np.ndarray, z: np.ndarray, tau: float) -> np.ndarray:
    """(1 - tau) y + tau z for tau in [0, 1]."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    return (1.0 - tau) * y + tau * z
