"""Estimators for Monte Carlo output: Laplace transforms, tail index, KS distance."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import EmptySample, InsufficientTail, InvalidParameter

__all__ = ["LTEstimate", "empirical_lt", "hill_index", "default_hill_m", "ks_distance"]


@dataclass(frozen=True)
class LTEstimate:
    theta: float
    estimate: float
    stderr: float
    n: int


def empirical_lt(samples, theta: float) -> LTEstimate:
    """Mean of exp(-theta W) with its standard error.

    The summand lies in [0, 1], so the plain sample standard deviation is
    used for the error bar.
    """
    w = np.asarray(samples, dtype=float).ravel()
    if w.size < 2:
        raise EmptySample("empirical_lt needs at least two samples")
    if theta < 0:
        raise InvalidParameter("theta must be >= 0")
    if np.any(w < 0):
        raise InvalidParameter("samples must be nonnegative")
    e = np.exp(-theta * w)
    return LTEstimate(float(theta), float(e.mean()), float(e.std(ddof=1) / math.sqrt(w.size)), int(w.size))


def default_hill_m(n: int) -> int:
    return max(math.ceil(n / 100), 100)


def hill_index(samples, m: Optional[int] = None) -> float:
    """Hill estimate of the tail index alpha in P(X > x) ~ x^{-alpha}.

    Uses the m largest order statistics and the (m+1)-th as threshold.
    """
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    if m is None:
        m = default_hill_m(n)
    if not 1 <= m < n:
        raise InsufficientTail(f"need 1 <= m < n, got m={m}, n={n}")
    top = np.sort(np.partition(x, n - m - 1)[n - m - 1:])
    threshold = top[0]
    if not threshold > 0:
        raise InsufficientTail("Hill estimator needs positive order statistics")
    mean_excess = np.log(top[1:] / threshold).mean()
    if not mean_excess > 0:
        raise InsufficientTail("top order statistics are tied; tail index undefined")
    return float(1.0 / mean_excess)


def ks_distance(samples, cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """sup_y |F_n(y) - F(y)| for a continuous model CDF."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise EmptySample("ks_distance needs at least one sample")
    f = np.clip(np.asarray(cdf(x), dtype=float), 0.0, 1.0)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
