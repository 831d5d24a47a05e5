"""Branching-process parameterization and fitness-increment laws.

A type-0 population grows at net rate ``lambda0 = a0 - b0``.  Type-k cells
mutate to type k+1 at rate ``u[k]`` per cell, and every mutation adds an
independent increment drawn from the fitness law to the birth rate of the
new lineage.  Death rate ``b0`` is shared by all types.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy import integrate, optimize

from .errors import (
    InvalidDensity,
    InvalidParameter,
    InvalidTail,
    NonSupercritical,
    UnboundedLaw,
    ZeroRate,
)

__all__ = [
    "BoundedFitness",
    "UnboundedFitness",
    "FitnessLaw",
    "BranchingModel",
    "validate",
    "exponent_pk",
    "composite_rate_u1k",
    "pk_value",
]

DETERMINISTIC = "deterministic"
STOCHASTIC = "stochastic"
Z0_MODES = (DETERMINISTIC, STOCHASTIC)


@dataclass(frozen=True)
class BoundedFitness:
    """Fitness increments with a density ``g`` supported on ``[0, b]``.

    ``density`` must accept numpy arrays.  ``g_at_b`` is supplied rather than
    estimated because every asymptotic constant depends on it exactly.
    ``quantile`` (inverse CDF on ``(0, 1)``) is optional; without it a
    tabulated inverse CDF is built on first use.
    """

    b: float
    density: Callable[[np.ndarray], np.ndarray]
    g_at_b: float
    G: float
    quantile: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False)
    name: str = "custom"

    @classmethod
    def uniform(cls, b: float) -> "BoundedFitness":
        b = float(b)
        height = 1.0 / b
        return cls(
            b=b,
            density=lambda x: np.full(np.shape(x), height),
            g_at_b=height,
            G=height,
            quantile=lambda q: b * np.asarray(q, dtype=float),
            name="uniform",
        )

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= 0.0) & (x <= self.b)
        return np.where(inside, self.density(np.clip(x, 0.0, self.b)), 0.0)

    @cached_property
    def _cdf_table(self):
        grid = np.linspace(0.0, self.b, 8193)
        dens = self.pdf(grid)
        cdf = np.concatenate(([0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(grid))))
        cdf /= cdf[-1]
        return grid, cdf

    def ppf(self, q):
        q = np.asarray(q, dtype=float)
        if self.quantile is not None:
            return self.quantile(q)
        grid, cdf = self._cdf_table
        return np.interp(q, cdf, grid)

    def sample(self, rng: np.random.Generator, size=None):
        return self.ppf(rng.random(size))


@dataclass(frozen=True)
class UnboundedFitness:
    """Generalized Frechet increments, ``P(X > x) = x**beta * exp(-gamma * x**alpha)``.

    For ``beta != 0`` the raw tail exceeds 1 (or is not monotone) near 0, so
    the sampling law is ``P(X > x) = min(1, T(x))`` on ``[x_floor, inf)``,
    where ``x_floor`` is the largest root of ``T(x) = 1``.  When ``beta > 0``
    and ``T`` never reaches 1, ``x_floor`` is the mode of ``T`` and the
    missing mass sits as an atom there.  Large-x behaviour is untouched.
    """

    alpha: float
    beta: float
    gamma: float

    def log_tail_raw(self, x):
        x = np.asarray(x, dtype=float)
        if self.beta == 0.0:
            return -self.gamma * x**self.alpha
        with np.errstate(divide="ignore"):
            return self.beta * np.log(x) - self.gamma * x**self.alpha

    @cached_property
    def x_floor(self) -> float:
        a, bt, g = self.alpha, self.beta, self.gamma
        if bt == 0.0:
            return 0.0
        f = lambda x: bt * math.log(x) - g * x**a
        if bt < 0.0:
            hi = 1.0
            while f(hi) > 0.0:
                hi *= 2.0
            lo = min(1.0, hi) * 0.5
            while f(lo) < 0.0:
                lo *= 0.5
            return optimize.brentq(f, lo, hi, xtol=1e-15, rtol=1e-14)
        mode = (bt / (g * a)) ** (1.0 / a)
        if f(mode) < 0.0:
            return mode
        hi = 2.0 * mode + 1.0
        while f(hi) > 0.0:
            hi *= 2.0
        return optimize.brentq(f, mode, hi, xtol=1e-15, rtol=1e-14)

    def log_tail(self, x):
        """log P(X > x) under the proper sampling law."""
        x = np.asarray(x, dtype=float)
        xf = self.x_floor
        raw = np.minimum(self.log_tail_raw(np.maximum(x, xf)), 0.0)
        return np.where(x < xf, 0.0, raw)

    def tail(self, x):
        return np.exp(self.log_tail(x))

    def inverse_log_tail(self, log_p):
        """Solve ``log T(x) = log_p`` for x >= x_floor (vectorized)."""
        log_p = np.asarray(log_p, dtype=float)
        a, bt, g = self.alpha, self.beta, self.gamma
        if bt == 0.0:
            return (np.maximum(-log_p, 0.0) / g) ** (1.0 / a)
        xf = self.x_floor
        lo = np.full(log_p.shape, xf)
        hi = np.maximum(((np.abs(log_p) + abs(bt)) / g) ** (1.0 / a), xf) + 1.0
        # widen until bracketed
        for _ in range(200):
            bad = self.log_tail_raw(hi) > log_p
            if not bad.any():
                break
            hi = np.where(bad, 2.0 * hi, hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            above = self.log_tail_raw(mid) > log_p
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
            if np.all(hi - lo <= 4e-16 * np.maximum(hi, 1.0)):
                break
        return 0.5 * (lo + hi)

    def sample(self, rng: np.random.Generator, size=None):
        u = rng.random(size)
        log_u = np.log(u)
        atom = float(self.log_tail(self.x_floor))
        x = self.inverse_log_tail(np.minimum(log_u, atom))
        return np.where(log_u >= atom, self.x_floor, x)

    def sample_above(self, rng: np.random.Generator, x_min):
        """Draw X conditioned on X > x_min (one draw per entry of x_min)."""
        x_min = np.asarray(x_min, dtype=float)
        log_u = np.log(rng.random(x_min.shape))
        return self.inverse_log_tail(log_u + self.log_tail(x_min))


FitnessLaw = Union[BoundedFitness, UnboundedFitness]


@dataclass(frozen=True)
class BranchingModel:
    """Rates of the multi-type process.

    ``u`` holds u_1..u_K (u[0] is the type-0 -> type-1 rate).  ``lambda0`` is
    always derived from ``a0 - b0``.
    """

    a0: float
    b0: float
    u: Sequence[float]
    V0: float
    fitness: FitnessLaw
    z0_mode: str = DETERMINISTIC

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(float(v) for v in np.atleast_1d(self.u)))
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "b0", float(self.b0))
        object.__setattr__(self, "V0", float(self.V0))

    @property
    def lambda0(self) -> float:
        return self.a0 - self.b0

    @property
    def bounded(self) -> bool:
        return isinstance(self.fitness, BoundedFitness)

    @property
    def b(self) -> float:
        if not self.bounded:
            raise UnboundedLaw("upper endpoint b is undefined for an unbounded fitness law")
        return self.fitness.b

    @property
    def g_at_b(self) -> float:
        if not self.bounded:
            raise UnboundedLaw("g(b) is undefined for an unbounded fitness law")
        return self.fitness.g_at_b

    def rate(self, k: int) -> float:
        """Mutation rate u_k out of type k-1 (k >= 1)."""
        if k < 1 or k > len(self.u):
            raise InvalidParameter(f"mutation rate u_{k} not supplied (have {len(self.u)})")
        return self.u[k - 1]

    def replace(self, **changes) -> "BranchingModel":
        return replace(self, **changes)


def validate(model: BranchingModel) -> BranchingModel:
    if not model.a0 > model.b0:
        raise NonSupercritical(f"need a0 > b0, got a0={model.a0}, b0={model.b0}")
    if model.b0 < 0:
        raise InvalidParameter("death rate b0 must be >= 0")
    if any(v < 0 for v in model.u):
        raise InvalidParameter("mutation rates must be >= 0")
    if not model.V0 > 0:
        raise InvalidParameter("V0 must be positive")
    if model.z0_mode not in Z0_MODES:
        raise InvalidParameter(f"z0_mode must be one of {Z0_MODES}")
    if model.z0_mode == STOCHASTIC and model.V0 != round(model.V0):
        raise InvalidParameter("stochastic type-0 mode needs an integer V0")
    law = model.fitness
    if isinstance(law, BoundedFitness):
        _check_density(law)
    elif isinstance(law, UnboundedFitness):
        if not law.gamma > 0:
            raise InvalidTail(f"gamma must be > 0, got {law.gamma}")
        if not law.alpha >= 1:
            raise InvalidTail(f"alpha must be >= 1, got {law.alpha}")
    else:
        raise InvalidParameter(f"unknown fitness law {type(law).__name__}")
    return model


def _check_density(law: BoundedFitness) -> None:
    if not law.b > 0:
        raise InvalidDensity("upper endpoint b must be positive")
    if not law.g_at_b > 0:
        raise InvalidDensity("condition g(b) > 0 violated")
    at_b = float(np.asarray(law.density(np.array([law.b])))[0])
    if abs(at_b - law.g_at_b) > 1e-9 * max(1.0, law.g_at_b):
        raise InvalidDensity(f"density(b)={at_b} disagrees with g_at_b={law.g_at_b}")
    grid = np.linspace(0.0, law.b, 10001)
    vals = np.asarray(law.density(grid), dtype=float)
    if np.any(vals < 0):
        raise InvalidDensity("density is negative somewhere on [0, b]")
    if np.any(vals > law.G * (1 + 1e-12)):
        raise InvalidDensity(f"density exceeds the bound G={law.G}")
    total, _ = integrate.quad(
        lambda x: float(law.density(np.array([x]))[0]), 0.0, law.b, epsabs=1e-13, epsrel=1e-12, limit=200
    )
    if abs(total - 1.0) > 1e-9:
        raise InvalidDensity(f"density integrates to {total!r}, not 1")


def pk_value(lambda0: float, b: float, k: int) -> float:
    """p_k from k + p_k = sum_{j<k} (lambda0 + k b) / (lambda0 + j b)."""
    if k < 1:
        raise InvalidParameter("generation index k must be >= 1")
    top = lambda0 + k * b
    return math.fsum(top / (lambda0 + j * b) for j in range(k)) - k


def exponent_pk(model: BranchingModel, k: int) -> float:
    return pk_value(model.lambda0, model.b, k)


def composite_rate_u1k(model: BranchingModel, k: int) -> float:
    """u_{1,k} = prod_j u_j ** (lambda0 / (lambda0 + (j-1) b))."""
    b = model.b
    if k < 1:
        raise InvalidParameter("generation index k must be >= 1")
    lam0 = model.lambda0
    log_total = 0.0
    for j in range(1, k + 1):
        uj = model.rate(j)
        if uj == 0.0:
            raise ZeroRate(f"u_{j} = 0 makes u_(1,{k}) vanish")
        log_total += lam0 / (lam0 + (j - 1) * b) * math.log(uj)
    return math.exp(log_total)
