import math

import numpy as np
import pytest
from scipy import stats

from clonal_waves import BoundedFitness, BranchingModel, validate
from clonal_waves.errors import BudgetExceeded, InvalidParameter, UnboundedLaw
from clonal_waves.laplace import exact_mean_z1
from clonal_waves.lineage_sim import (
    SimOptions,
    log_scale_factor,
    naive_gillespie,
    scaled_statistic,
    simulate_log_z1_unbounded,
    simulate_population,
)
from clonal_waves.model import exponent_pk
from clonal_waves.streams import chunk_bounds, map_replicates, replicate_rng


def _mean_se(x):
    x = np.asarray(x, dtype=float)
    return x.mean(), x.std(ddof=1) / math.sqrt(x.size)


def test_streams_are_reproducible_and_distinct():
    a = replicate_rng(5, 0, 3).random(4)
    assert np.array_equal(a, replicate_rng(5, 0, 3).random(4))
    assert not np.array_equal(a, replicate_rng(5, 0, 4).random(4))
    assert not np.array_equal(a, replicate_rng(5, 1, 3).random(4))


def test_map_replicates_thread_invariant():
    fn = lambda i, rng: (i, float(rng.random()))
    one = map_replicates(fn, 37, seed=3, threads=1)
    four = map_replicates(fn, 37, seed=3, threads=4)
    assert one == four
    assert [i for i, _ in one] == list(range(37))


def test_chunk_bounds_cover_range():
    b = chunk_bounds(10, 3)
    assert b[0][0] == 0 and b[-1][1] == 10
    assert all(x[1] == y[0] for x, y in zip(b[:-1], b[1:]))


def test_zero_mutation_rate_gives_no_mutants(fig_model, rng):
    s = simulate_population(fig_model.replace(u=(0.0, 1e-3)), 100.0, 2, rng=rng)
    assert s.count(1) == 0 and s.count(2) == 0
    assert s.count(0) == pytest.approx(0.1 * math.exp(10.0))


def test_hybrid_mean_z1_matches_quadrature(fig_model):
    t = 60.0
    z = map_replicates(lambda i, r: simulate_population(fig_model, t, 1, rng=r).count(1), 20_000, seed=11)
    m, se = _mean_se(z)
    assert abs(m - exact_mean_z1(fig_model, t)) < 3 * se


def test_naive_type0_mean(small_model):
    z = map_replicates(lambda i, r: naive_gillespie(small_model, 10.0, 1, r).count(0), 20_000, seed=12)
    m, se = _mean_se(z)
    assert abs(m - 10 * math.exp(2.0)) < 3 * se


def test_naive_initial_state(small_model, rng):
    s = naive_gillespie(small_model, 0.0, 2 if len(small_model.u) > 1 else 1, rng)
    assert s.count(0) == 10 and s.count(1) == 0


def test_naive_mean_z1_matches_quadrature(small_model):
    z = map_replicates(lambda i, r: naive_gillespie(small_model, 15.0, 1, r).count(1), 5_000, seed=13)
    m, se = _mean_se(z)
    assert abs(m - exact_mean_z1(small_model, 15.0)) < 3 * se


@pytest.mark.parametrize(
    "a0,b0,u1,b,V0,t",
    [(0.3, 0.1, 0.01, 0.05, 10, 20.0), (0.5, 0.2, 0.02, 0.1, 5, 12.0), (0.25, 0.05, 0.005, 0.02, 20, 15.0)],
)
def test_hybrid_matches_naive_oracle(a0, b0, u1, b, V0, t):
    model = validate(BranchingModel(a0, b0, [u1], V0, BoundedFitness.uniform(b), "stochastic"))
    hyb = map_replicates(lambda i, r: simulate_population(model, t, 1, rng=r).count(1), 5_000, seed=21)
    nai = map_replicates(lambda i, r: naive_gillespie(model, t, 1, r).count(1), 5_000, seed=22)
    # Bonferroni over the three parameter sets
    assert stats.ks_2samp(hyb, nai).pvalue > 0.01 / 3


def test_monotone_coupling_in_u1(fig_model):
    for seed in range(30):
        counts = [
            len(simulate_population(fig_model.replace(u=(u, 1e-3)), 80.0, 1, rng=replicate_rng(seed, 0)).table)
            for u in (1e-3, 2e-3, 8e-3)
        ]
        assert counts == sorted(counts)


def test_lineage_table_consistency(fig_model, rng):
    s = simulate_population(fig_model.replace(u=(1e-2, 1e-2)), 80.0, 2, rng=rng)
    recs = s.lineages
    assert sum(r.size_at_t for r in recs if r.type_index == 2) == pytest.approx(s.count(2))
    for r in recs:
        if r.type_index == 2:
            parent = recs[r.parent]
            assert parent.type_index == 1
            assert parent.birth_time <= r.birth_time <= s.t
            assert r.x_sum >= parent.x_sum


def test_budget_exceeded(fig_model, rng):
    with pytest.raises(BudgetExceeded):
        simulate_population(fig_model.replace(u=(0.05, 0.05)), 150.0, 2, SimOptions(max_events=1000), rng)


def test_scaled_statistic(fig_model, rng):
    s = simulate_population(fig_model, 120.0, 1, rng=rng)
    expect = s.count(1) * 120.0 ** (1 + exponent_pk(fig_model, 1)) * math.exp(-0.11 * 120.0)
    assert scaled_statistic(s, fig_model, 1) == pytest.approx(expect, rel=1e-12)
    assert log_scale_factor(fig_model, 1, 120.0) == pytest.approx(1.1 * math.log(120.0) - 13.2, rel=1e-14)
    empty = simulate_population(fig_model.replace(u=(0.0,)), 10.0, 1, rng=rng)
    assert scaled_statistic(empty, fig_model, 1) == 0.0


def test_scaled_statistic_rejects_unbounded(exp_model, rng):
    s = simulate_population(exp_model, 10.0, 1, rng=rng)
    with pytest.raises(UnboundedLaw):
        scaled_statistic(s, exp_model, 1)


def test_invalid_horizon(fig_model):
    with pytest.raises(InvalidParameter):
        simulate_population(fig_model, 0.0, 1)


def test_unbounded_draw_structure(exp_model):
    draws = map_replicates(lambda i, r: simulate_log_z1_unbounded(exp_model, 200.0, r), 200, seed=5)
    alive = [d for d in draws if d.log_z1 is not None]
    assert len(alive) > 150
    for d in alive:
        assert 0.0 <= d.dominant.birth_time <= 200.0
        assert 0.0 < d.dominance_share <= 1.0
        assert d.dominant.log_size <= d.log_z1 + 1e-12
