"""Monte Carlo of the per-type populations Z_k(t).

Type-1 mutants arrive off the type-0 population as an inhomogeneous Poisson
process.  Every mutant lineage of generation k < K is run by a hybrid engine
(exact events while small, deterministic growth once it reaches ``n_star``
cells) so its own mutants can be emitted; the last generation K only needs
its size at t, which is drawn exactly from the birth-death transient law.

``naive_gillespie`` is an independent oracle that simulates every clone of
the population event by event.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, NamedTuple, Optional

import numpy as np
from scipy import stats
from scipy.special import logsumexp

from . import _kernels
from .birth_death import sample_sizes
from .errors import BudgetExceeded, InvalidParameter, UnboundedLaw
from .model import DETERMINISTIC, STOCHASTIC, BranchingModel, UnboundedFitness, exponent_pk

__all__ = [
    "SimOptions",
    "LineageRecord",
    "LineageTable",
    "PopulationSample",
    "UnboundedDraw",
    "simulate_population",
    "naive_gillespie",
    "scaled_statistic",
    "log_scale_factor",
    "simulate_log_z1_unbounded",
]


@dataclass(frozen=True)
class SimOptions:
    n_star: int = 1000
    max_events: int = 50_000_000
    z0_mode: Optional[str] = None  # None: use the model's own mode

    def __post_init__(self):
        if self.n_star < 1:
            raise InvalidParameter("n_star must be >= 1")
        if self.max_events < 1:
            raise InvalidParameter("max_events must be >= 1")


@dataclass(frozen=True)
class LineageRecord:
    id: int
    type_index: int
    birth_time: float
    x_sum: float
    parent: int  # -1 for a lineage founded by a type-0 cell
    size_at_t: float
    log_size: float = math.nan


@dataclass
class LineageTable:
    """Column storage for mutant lineages; row i has id i."""

    type_index: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    birth_time: np.ndarray = field(default_factory=lambda: np.empty(0))
    x_sum: np.ndarray = field(default_factory=lambda: np.empty(0))
    parent: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    size_at_t: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __len__(self) -> int:
        return int(self.type_index.shape[0])

    def record(self, i: int) -> LineageRecord:
        size = float(self.size_at_t[i])
        return LineageRecord(
            id=int(i),
            type_index=int(self.type_index[i]),
            birth_time=float(self.birth_time[i]),
            x_sum=float(self.x_sum[i]),
            parent=int(self.parent[i]),
            size_at_t=size,
            log_size=math.log(size) if size > 0 else -math.inf,
        )

    def append(self, type_index, birth_time, x_sum, parent, size_at_t) -> None:
        self.type_index = np.concatenate((self.type_index, np.asarray(type_index, dtype=np.int64)))
        self.birth_time = np.concatenate((self.birth_time, np.asarray(birth_time, dtype=float)))
        self.x_sum = np.concatenate((self.x_sum, np.asarray(x_sum, dtype=float)))
        self.parent = np.concatenate((self.parent, np.asarray(parent, dtype=np.int64)))
        self.size_at_t = np.concatenate((self.size_at_t, np.asarray(size_at_t, dtype=float)))


@dataclass
class PopulationSample:
    t: float
    counts: np.ndarray  # Z_0 .. Z_K
    table: LineageTable
    dominant: Optional[int] = None

    @property
    def lineages(self) -> List[LineageRecord]:
        return [self.table.record(i) for i in range(len(self.table))]

    def count(self, k: int) -> float:
        return float(self.counts[k])


def _mutation_rates(model: BranchingModel, K: int) -> np.ndarray:
    """u_out[k] = per-cell rate out of type k, zero from type K on."""
    if K < 1:
        raise InvalidParameter("K must be >= 1")
    if len(model.u) < K:
        raise InvalidParameter(f"need u_1..u_{K}, got {len(model.u)} rates")
    out = np.zeros(K + 1)
    out[:K] = model.u[:K]
    return out


def _draw_increments(model: BranchingModel, rng, n: int) -> np.ndarray:
    return np.asarray(model.fitness.sample(rng, n), dtype=float).reshape(n)


def _type0_arrivals(model: BranchingModel, t: float, mode: str, opts: SimOptions, rng):
    """Type-0 size at t and the birth times of type-1 mutants."""
    lam0, u1 = model.lambda0, model.u[0]
    if mode == DETERMINISTIC:
        z0 = model.V0 * math.exp(lam0 * t)
        if u1 == 0.0:
            return z0, np.empty(0)
        growth = math.expm1(lam0 * t)
        # count by Poisson inversion so that, on a shared stream, raising u1
        # never removes a mutant (the birth-time uniforms below are nested too)
        n = max(int(stats.poisson.ppf(rng.random(), u1 * model.V0 * growth / lam0)), 0)
        # inversion of the cumulative rate u1 V0 (e^{lam0 s} - 1) / lam0
        times = np.log1p(rng.random(n) * growth) / lam0
        return z0, np.sort(times)
    sizes, _, child_t, _, _, status = _kernels.hybrid_lineages(
        rng,
        np.zeros(1),
        np.array([model.a0]),
        np.array([int(round(model.V0))], dtype=np.int64),
        model.b0,
        u1,
        float(t),
        opts.n_star,
        opts.max_events,
    )
    if status != _kernels.OK:
        raise BudgetExceeded(f"type-0 phase exceeded max_events={opts.max_events}")
    return float(sizes[0]), np.sort(child_t)


def simulate_population(
    model: BranchingModel,
    t: float,
    K: int,
    opts: SimOptions = SimOptions(),
    rng: Optional[np.random.Generator] = None,
) -> PopulationSample:
    """One realization of (Z_0, ..., Z_K)(t)."""
    if not t > 0:
        raise InvalidParameter("t must be positive")
    rng = np.random.default_rng() if rng is None else rng
    u_out = _mutation_rates(model, K)
    mode = opts.z0_mode or model.z0_mode
    if mode not in (DETERMINISTIC, STOCHASTIC):
        raise InvalidParameter(f"unknown z0_mode {mode!r}")
    d = model.b0
    counts = np.zeros(K + 1)
    table = LineageTable()

    z0, births = _type0_arrivals(model, t, mode, opts, rng)
    counts[0] = z0
    parents = np.full(births.shape, -1, dtype=np.int64)
    parent_x = np.zeros(births.shape)
    events = 0
    for k in range(1, K + 1):
        n = births.shape[0]
        x = parent_x + _draw_increments(model, rng, n)
        rates = model.a0 + x
        ids0 = len(table)
        if k < K:
            sizes, _, child_t, child_p, used, status = _kernels.hybrid_lineages(
                rng,
                births,
                rates,
                np.ones(n, dtype=np.int64),
                d,
                u_out[k],
                float(t),
                opts.n_star,
                opts.max_events - events,
            )
            events += used
            if status != _kernels.OK:
                raise BudgetExceeded(f"generation {k} exceeded max_events={opts.max_events}")
        else:
            sizes = sample_sizes(rates, d, t - births, rng) if n else np.empty(0)
        table.append(np.full(n, k), births, x, parents, sizes)
        counts[k] = float(np.sum(sizes))
        if k < K:
            order = np.argsort(child_t, kind="stable")
            births = child_t[order]
            local = child_p[order]
            parents = ids0 + local
            parent_x = x[local]
    return PopulationSample(t=float(t), counts=counts, table=table)


def naive_gillespie(
    model: BranchingModel,
    t: float,
    K: int,
    rng: Optional[np.random.Generator] = None,
    max_events: int = 10_000_000,
    max_clones: int = 5_000_000,
) -> PopulationSample:
    """Clone-level event-driven simulation with type-0 started from V0 cells.

    Fitness increments come from a pool drawn on a separate stream spawned
    from ``rng``; if the pool runs dry the run is repeated from the same
    dynamics state with a larger pool, which leaves the law unchanged.
    """
    if t < 0:
        raise InvalidParameter("t must be >= 0")
    rng = np.random.default_rng() if rng is None else rng
    if model.V0 != round(model.V0):
        raise InvalidParameter("the naive oracle needs an integer V0")
    u_out = _mutation_rates(model, K)
    inc_rng, dyn_rng = rng.spawn(2)
    state = dyn_rng.bit_generator.state
    pool = 1024
    increments = _draw_increments(model, inc_rng, pool)
    while True:
        dyn_rng.bit_generator.state = state
        ctype, crate, ccount, cborn, cx, cparent, events, status = _kernels.naive_population(
            dyn_rng,
            int(round(model.V0)),
            model.a0,
            model.b0,
            u_out,
            float(t),
            increments,
            max_events,
            max_clones,
        )
        if status == _kernels.OK:
            break
        if status == _kernels.BUDGET:
            raise BudgetExceeded(f"naive simulation exceeded its budget ({events} events)")
        extra = _draw_increments(model, inc_rng, increments.shape[0])
        increments = np.concatenate((increments, extra))
    counts = np.bincount(ctype, weights=ccount.astype(float), minlength=K + 1)[: K + 1]
    # clone 0 is the type-0 population; mutant clones become lineage rows
    mut = np.arange(1, ctype.shape[0])
    table = LineageTable()
    table.append(ctype[mut], cborn[mut], cx[mut], np.where(cparent[mut] > 0, cparent[mut] - 1, -1), ccount[mut])
    return PopulationSample(t=float(t), counts=counts, table=table)


def log_scale_factor(model: BranchingModel, k: int, t: float) -> float:
    """log of t^{k+p_k} e^{-(lambda0 + k b) t}."""
    return (k + exponent_pk(model, k)) * math.log(t) - (model.lambda0 + k * model.b) * t


def scaled_statistic(sample: PopulationSample, model: BranchingModel, k: int) -> float:
    """t^{k+p_k} e^{-(lambda0+kb)t} Z_k(t), evaluated in log space."""
    if not model.bounded:
        raise UnboundedLaw("the polynomial scaling only exists for bounded fitness")
    zk = sample.count(k)
    if zk <= 0.0:
        return 0.0
    return math.exp(math.log(zk) + log_scale_factor(model, k, sample.t))


# --- unbounded fitness: log Z_1(t) from the dominant part of the point process


class UnboundedDraw(NamedTuple):
    """``log_z1`` is None when no mutant lineage survives (log Z_1 = -inf)."""

    log_z1: Optional[float]
    dominant: Optional[LineageRecord]

    @property
    def dominance_share(self) -> float:
        if self.log_z1 is None:
            return math.nan
        return math.exp(self.dominant.log_size - self.log_z1)


_S_GRID = 20001


def _log_h(model: BranchingModel, t: float, z: float, s: np.ndarray) -> np.ndarray:
    """log intensity in s of mutants with growth exponent (lambda0+x)(t-s) > z."""
    law: UnboundedFitness = model.fitness
    lam0 = model.lambda0
    with np.errstate(divide="ignore"):
        xmin = z / (t - s) - lam0
    return math.log(model.u[0] * model.V0) + lam0 * s + law.log_tail(np.maximum(xmin, 0.0))


def _log_mu_grid(model, t, z, s):
    lh = _log_h(model, t, z, s)
    ds = s[1] - s[0]
    w = np.full(s.shape, ds)
    w[0] = w[-1] = 0.5 * ds
    return logsumexp(lh, b=w)


def _solve_log_mu(model, t, s, target: float) -> float:
    """Growth exponent z with log mu(z, inf) = target (mu decreases in z)."""
    lo, hi = 0.0, max(1.0, model.lambda0 * t)
    while _log_mu_grid(model, t, hi, s) > target:
        lo, hi = hi, 2.0 * hi
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _log_mu_grid(model, t, mid, s) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9 * hi:
            break
    return 0.5 * (lo + hi)


_MIN_POINTS = 50.0


def _threshold(model: BranchingModel, t: float, s: np.ndarray, margin: float) -> float:
    """Growth exponent below which lineages cannot matter for log Z_1.

    The threshold is also kept low enough that about ``_MIN_POINTS``
    lineages are expected above it, so an empty draw is negligible.
    """
    lam0 = model.lambda0
    log_total = math.log(model.u[0] * model.V0 / lam0) + lam0 * t + math.log(-math.expm1(-lam0 * t))
    if log_total <= math.log(_MIN_POINTS):
        return 0.0
    z_top = _solve_log_mu(model, t, s, 0.0)
    z_min = _solve_log_mu(model, t, s, math.log(_MIN_POINTS))
    return max(0.0, min(z_top - log_total - margin, z_min))


@lru_cache(maxsize=64)
def _unbounded_plan(model: BranchingModel, t: float, margin: float):
    """Threshold and tabulated birth-time CDF; depends only on (model, t)."""
    s = np.linspace(0.0, t, _S_GRID)
    z_thr = _threshold(model, t, s, margin)
    lh = _log_h(model, t, z_thr, s)
    peak = lh.max()
    h = np.exp(lh - peak)
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (h[1:] + h[:-1]) * np.diff(s))))
    return z_thr, s, cum, math.log(cum[-1]) + peak


def simulate_log_z1_unbounded(
    model: BranchingModel,
    t: float,
    rng: Optional[np.random.Generator] = None,
    margin: float = 40.0,
) -> UnboundedDraw:
    """Sample log Z_1(t) for an unbounded fitness law.

    Only mutants whose growth exponent (lambda0 + x)(t - s) exceeds a
    threshold are drawn; the threshold sits ``margin`` nats plus the log of
    the expected total number of mutants below the typical maximum, so the
    discarded lineages change Z_1 by a relative amount of order e^{-margin}.
    Each retained lineage contributes e^{(lambda0+x)(t-s)} v with v its
    limiting birth-death mark.
    """
    if model.bounded:
        raise InvalidParameter("simulate_log_z1_unbounded needs an unbounded fitness law")
    rng = np.random.default_rng() if rng is None else rng
    if model.u[0] == 0.0:
        return UnboundedDraw(None, None)
    t = float(t)
    lam0 = model.lambda0
    z_thr, s, cum, log_mass = _unbounded_plan(model, t, float(margin))
    n = rng.poisson(math.exp(log_mass))
    if n == 0:
        return UnboundedDraw(None, None)
    births = np.interp(rng.random(n) * cum[-1], cum, s)
    x_min = np.maximum(z_thr / (t - births) - lam0, 0.0)
    x = model.fitness.sample_above(rng, x_min)
    growth = (lam0 + x) * (t - births)
    a = model.a0 + x
    # limit mark per lineage: atom at 0 w.p. b0/a, else Exp with mean a/lambda
    marks = np.where(rng.random(n) < model.b0 / a, 0.0, rng.standard_exponential(n) * a / (lam0 + x))
    alive = marks > 0.0
    if not alive.any():
        return UnboundedDraw(None, None)
    log_sizes = np.where(alive, growth + np.log(np.where(alive, marks, 1.0)), -np.inf)
    log_z1 = float(logsumexp(log_sizes[alive]))
    i = int(np.argmax(log_sizes))
    dom = LineageRecord(
        id=i,
        type_index=1,
        birth_time=float(births[i]),
        x_sum=float(x[i]),
        parent=-1,
        size_at_t=math.exp(log_sizes[i]) if log_sizes[i] < 709.0 else math.inf,
        log_size=float(log_sizes[i]),
    )
    return UnboundedDraw(log_z1, dom)
