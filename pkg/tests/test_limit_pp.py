import math

import pytest
from hypothesis import given, settings, strategies as st

from clonal_waves import laplace, limit_pp
from clonal_waves.errors import DegenerateAlpha, InvalidParameter
from clonal_waves.stats import empirical_lt


@pytest.fixture
def consts1():
    return limit_pp.unbounded_constants(1, 0.0, 1.0, 0.1)


def test_v1_truncation_bias_bound(fig_model):
    eps = limit_pp.eps_for_bias(fig_model, 1e-3, 5.0)
    assert eps == pytest.approx(0.0017116972492432776, rel=1e-12)
    _, _, var = limit_pp.v1_truncation(fig_model, eps)
    assert 12.5 * var == pytest.approx(1e-3, rel=1e-12)


def test_v1_lt_matches_limit_transform(fig_model, rng):
    eps = limit_pp.eps_for_bias(fig_model, 1e-3, 5.0)
    draw = limit_pp.sample_v1(fig_model, eps, rng, 20_000)
    for theta in (0.5, 2.0, 5.0):
        est = empirical_lt(draw.values, theta)
        target = float(laplace.asymptotic_lt_zk(fig_model, 1, theta))
        assert abs(est.estimate - target) <= 3 * est.stderr + draw.lt_bias_bound(theta)


def test_v1_rejects_bad_eps(fig_model, rng):
    with pytest.raises(InvalidParameter):
        limit_pp.sample_v1(fig_model, 0.0, rng, 10)


def test_alpha_one_reduction(consts1):
    assert consts1.c0 == pytest.approx(0.1 / 4, rel=1e-12)
    assert consts1.k2 == pytest.approx(0.1 / (2 * consts1.c0), rel=1e-12)
    assert consts1.k1 == pytest.approx(0.1, rel=1e-12)
    for beta in (0.0, 0.5, -0.5):
        c = limit_pp.unbounded_constants(1, beta, 1.0, 0.1)
        for t in (100.0, 400.0):
            assert limit_pp.centering_sequence(c, t) == pytest.approx(
                limit_pp.centering_alpha1(beta, 1.0, 0.1, t), rel=1e-12
            )


@pytest.mark.parametrize("alpha", [2, 3])
def test_series_matches_numeric_maximum(alpha):
    c = limit_pp.unbounded_constants(alpha, 0.0, 1.0, 0.1)
    errs = []
    for z in (1e4, 1e6, 1e8):
        num = limit_pp.phi_max_numeric(z, 0.1, 1.0, alpha)
        errs.append(abs(num - limit_pp.phi_max_series(c, z)))
    assert errs[0] > errs[1] > errs[2]
    slope = math.log(errs[2] / errs[0]) / math.log(1e4)
    assert slope == pytest.approx(-1 / (alpha + 1), abs=0.05)


def test_frechet_constants_frozen():
    c = limit_pp.unbounded_constants(2, 0.0, 1.0, 0.1)
    assert c.c0 == pytest.approx(0.12171612389003691, rel=1e-12)
    assert c.a_seq[0] == pytest.approx(2.7144176165949063, rel=1e-12)
    assert c.k2 == pytest.approx(0.5477225575051662, rel=1e-12)


def test_integer_alpha_only():
    with pytest.raises(DegenerateAlpha):
        limit_pp.unbounded_constants(1.5, 0.0, 1.0, 0.1)


@settings(max_examples=60, deadline=None)
@given(t=st.floats(10.0, 500.0), frac=st.floats(0.01, 0.99), alpha=st.sampled_from([1.0, 2.0, 3.0]),
       zmult=st.floats(1.01, 20.0))
def test_phi_concave_where_tail_active(t, frac, alpha, zmult):
    lam0, s = 0.1, t * frac
    z = zmult * lam0 * (t - s) / alpha  # alpha z > lambda0 (t - s)
    if z / (t - s) - lam0 <= 0:
        return
    h = 1e-4 * (t - s)
    f = lambda v: float(limit_pp.phi(v, z, t, lam0, 1.0, alpha))
    second = (f(s + h) - 2 * f(s) + f(s - h)) / h**2
    assert second < 0


def test_rightmost_cdf_shape(consts1, exp_model):
    assert limit_pp.rightmost_cdf(consts1, exp_model, 50.0) == pytest.approx(1.0)
    assert limit_pp.rightmost_cdf(consts1, exp_model, -50.0) == pytest.approx(0.0, abs=1e-300)
    # Gumbel with scale 1/k2 = 2 c0 / lambda0 = 0.5
    assert 1 / consts1.k2 == pytest.approx(0.5, rel=1e-12)
    med = limit_pp.rightmost_quantile(consts1, exp_model, 0.5)
    loc = limit_pp.gumbel_location(consts1, exp_model)
    assert med == pytest.approx(loc - 0.5 * math.log(math.log(2.0)), rel=1e-12)
    assert limit_pp.rightmost_cdf(consts1, exp_model, med) == pytest.approx(0.5, rel=1e-12)


def test_printed_prefactor_differs_by_sqrt2(consts1, exp_model):
    corr = limit_pp.rightmost_log_prefactor(consts1, exp_model, "corrected")
    printed = limit_pp.rightmost_log_prefactor(consts1, exp_model, "printed")
    assert printed - corr == pytest.approx(0.5 * math.log(2.0), rel=1e-12)
    # printed form at alpha = 1: (pi/lambda0)^{1/2} V0 u1 e^{gamma lambda0}
    assert printed == pytest.approx(0.5 * math.log(math.pi / 0.1) + math.log(1e-3) + 0.1, rel=1e-12)


def test_exact_tail_measure_converges_to_corrected_prefactor(consts1, exp_model):
    y = -2.5
    target = math.exp(limit_pp.rightmost_log_prefactor(consts1, exp_model) - consts1.k2 * y)
    gaps = []
    for t in (400.0, 1600.0, 6400.0):
        z = limit_pp.centering_sequence(consts1, t) + t * y
        gaps.append(abs(limit_pp.mu_tail(exp_model, t, z) / target - 1))
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.01
