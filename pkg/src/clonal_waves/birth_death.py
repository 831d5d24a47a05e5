"""Transient law of the linear birth-death process started from one cell.

With birth rate ``a``, death rate ``d`` and ``lam = a - d > 0``, write
``E = exp(-lam * r)``.  Then

    P(Z_r = 0)        = d (1 - E) / (a - d E)
    Z_r | Z_r > 0     ~ Geometric(p) on {1, 2, ...},  p = lam E / (a - d E)

All expressions below use ``E`` rather than ``exp(lam * r)`` so nothing
overflows for large ``lam * r``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter

__all__ = [
    "LineageParams",
    "extinct_prob",
    "survival_geometric_p",
    "transient_lt",
    "one_minus_transient_lt",
    "transient_pmf",
    "sample_size",
    "sample_sizes",
    "sample_limit_mark",
    "limit_mark_lt",
]


@dataclass(frozen=True)
class LineageParams:
    a: float
    d: float

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidParameter(f"birth rate must be positive, got {self.a}")
        if self.d < 0:
            raise InvalidParameter(f"death rate must be >= 0, got {self.d}")
        if not self.a > self.d:
            raise InvalidParameter("only supercritical lineages (a > d) are supported")

    @property
    def lam(self) -> float:
        return self.a - self.d


def _decay(p: LineageParams, r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise InvalidParameter("elapsed time must be >= 0")
    return np.exp(-p.lam * r)


def extinct_prob(p: LineageParams, r):
    """P(Z_r = 0 | Z_0 = 1)."""
    E = _decay(p, r)
    return p.d * (1.0 - E) / (p.a - p.d * E)


def survival_geometric_p(p: LineageParams, r):
    """Success probability of the geometric law of Z_r given survival."""
    E = _decay(p, r)
    return p.lam * E / (p.a - p.d * E)


def one_minus_transient_lt(p: LineageParams, r, theta):
    """1 - E exp(-theta Z_r), evaluated without cancellation.

    With ``w = 1 - exp(-theta)`` the transform reduces to
    ``lam w / (a w + (lam - a w) E)``.  Valid for theta slightly below 0 too,
    as long as the denominator stays positive.
    """
    E = _decay(p, r)
    w = -np.expm1(-np.asarray(theta, dtype=float))
    return p.lam * w / (p.a * w + (p.lam - p.a * w) * E)


def transient_lt(p: LineageParams, r, theta):
    """E exp(-theta Z_r) for Z_0 = 1."""
    return 1.0 - one_minus_transient_lt(p, r, theta)


def transient_pmf(p: LineageParams, r, n):
    """Exact P(Z_r = n) (zero-inflated geometric)."""
    n = np.asarray(n)
    q0 = extinct_prob(p, r)
    ps = survival_geometric_p(p, r)
    pos = (1.0 - q0) * ps * np.power(1.0 - ps, np.maximum(n - 1, 0))
    return np.where(n == 0, q0, np.where(n > 0, pos, 0.0))


def sample_size(p: LineageParams, r, rng: np.random.Generator, size=None):
    """Exact draws of Z_r given Z_0 = 1.

    ``r`` may be an array (one draw per entry) when ``size`` is None.
    Returned as float64 so very large lineages do not overflow an integer.
    """
    return sample_sizes(p.a, p.d, r, rng, size)


def sample_sizes(a, d, r, rng: np.random.Generator, size=None):
    """Vectorized :func:`sample_size` with per-lineage birth rates ``a``."""
    a = np.asarray(a, dtype=float)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise InvalidParameter("elapsed time must be >= 0")
    lam = a - d
    E = np.exp(-lam * r)
    den = a - d * E
    q0 = d * (1.0 - E) / den
    ps = lam * E / den
    if size is None:
        size = np.broadcast(q0, ps).shape
    u_die = rng.random(size)
    u_geo = rng.random(size)
    # inversion of the geometric law; log1p keeps tiny p accurate
    with np.errstate(divide="ignore", invalid="ignore"):
        geo = 1.0 + np.floor(np.log1p(-u_geo) / np.log1p(-ps))
    geo = np.where(ps >= 1.0, 1.0, geo)
    return np.where(u_die < q0, 0.0, geo)


def sample_limit_mark(p: LineageParams, rng: np.random.Generator, size=None):
    """Draw the limit of exp(-lam r) Z_r as r -> infinity.

    Atom of mass d/a at 0, otherwise exponential with rate lam/a.
    """
    u = rng.random(size)
    expo = rng.standard_exponential(size) * (p.a / p.lam)
    return np.where(u < p.d / p.a, 0.0, expo)


def limit_mark_lt(p: LineageParams, theta):
    """Laplace transform of the limit mark."""
    theta = np.asarray(theta, dtype=float)
    rate = p.lam / p.a
    return p.d / p.a + rate * rate / (theta + rate)
