import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from clonal_waves.birth_death import (
    LineageParams,
    extinct_prob,
    limit_mark_lt,
    one_minus_transient_lt,
    sample_limit_mark,
    sample_size,
    sample_sizes,
    survival_geometric_p,
    transient_lt,
    transient_pmf,
)
from clonal_waves.errors import InvalidParameter

P = LineageParams(0.2, 0.1)


def _gillespie_sizes(a, d, r, n, rng):
    """Reference: event-by-event simulation of one lineage."""
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        z, s = 1, 0.0
        while z > 0:
            s += rng.exponential(1.0 / ((a + d) * z))
            if s > r:
                break
            z += 1 if rng.random() < a / (a + d) else -1
        out[i] = z
    return out


def test_extinction_limits():
    assert extinct_prob(P, 0.0) == 0.0
    assert extinct_prob(P, 1e4) == pytest.approx(0.5, rel=1e-12)
    assert survival_geometric_p(P, 0.0) == pytest.approx(1.0)


def test_invalid_params():
    with pytest.raises(InvalidParameter):
        LineageParams(0.1, 0.2)
    with pytest.raises(InvalidParameter):
        extinct_prob(P, -1.0)


def test_pmf_normalized_with_exponential_mean():
    n = np.arange(0, 4000)
    pmf = transient_pmf(P, 10.0, n)
    assert pmf.sum() == pytest.approx(1.0, abs=1e-12)
    assert (n * pmf).sum() == pytest.approx(math.e, rel=1e-10)


def test_lt_matches_pmf():
    n = np.arange(0, 4000)
    pmf = transient_pmf(P, 10.0, n)
    for theta in (0.01, 0.3, 2.0):
        assert transient_lt(P, 10.0, theta) == pytest.approx(np.sum(pmf * np.exp(-theta * n)), rel=1e-12)
        assert one_minus_transient_lt(P, 10.0, theta) == pytest.approx(1 - transient_lt(P, 10.0, theta), rel=1e-9)


def test_lt_trivial_cases():
    assert transient_lt(P, 5.0, 0.0) == 1.0
    assert transient_lt(P, 0.0, 1.3) == pytest.approx(math.exp(-1.3))


def test_sample_mean_r20(rng):
    z = sample_size(P, 20.0, rng, 1_000_000)
    se = z.std(ddof=1) / math.sqrt(z.size)
    assert abs(z.mean() - math.exp(2.0)) < 3 * se


def test_vectorized_rates_match_scalar_law(rng):
    a = np.where(np.arange(200_000) % 2 == 0, 0.2, 0.3)
    z = sample_sizes(a, 0.1, 8.0, rng)
    for rate in (0.2, 0.3):
        sel = z[a == rate]
        assert sel.mean() == pytest.approx(math.exp((rate - 0.1) * 8.0), abs=3 * sel.std() / math.sqrt(sel.size))


def test_distribution_r5_matches_event_simulation(rng):
    exact = sample_size(P, 5.0, rng, 100_000)
    ref = _gillespie_sizes(0.2, 0.1, 5.0, 20_000, np.random.default_rng(7))
    assert stats.ks_2samp(exact, ref).pvalue > 0.01


def test_limit_mark(rng):
    v = sample_limit_mark(P, rng, 1_000_000)
    zero = (v == 0).mean()
    assert abs(zero - 0.5) < 3 * math.sqrt(0.25 / v.size)
    pos = v[v > 0]
    assert pos.mean() == pytest.approx(2.0, abs=3 * pos.std() / math.sqrt(pos.size))
    for theta in (0.5, 1.0, 2.0):
        e = np.exp(-theta * v)
        analytic = 0.5 + 0.5 * 0.5 / (theta + 0.5)
        assert limit_mark_lt(P, theta) == pytest.approx(analytic, rel=1e-12)
        assert abs(e.mean() - analytic) < 3 * e.std() / math.sqrt(v.size)


@settings(max_examples=80, deadline=None)
@given(a=st.floats(0.05, 3.0), frac=st.floats(0.0, 0.95), r=st.floats(0.0, 200.0), theta=st.floats(0.0, 50.0))
def test_lt_in_unit_interval_and_monotone(a, frac, r, theta):
    p = LineageParams(a, a * frac)
    q = float(extinct_prob(p, r))
    assert 0.0 <= q <= 1.0
    assert float(extinct_prob(p, r + 1.0)) >= q - 1e-15
    lt = float(transient_lt(p, r, theta))
    assert 0.0 <= lt <= 1.0
    assert float(transient_lt(p, r, theta + 0.5)) <= lt + 1e-15
