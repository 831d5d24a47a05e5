import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clonal_waves import BoundedFitness, BranchingModel, UnboundedFitness, validate
from clonal_waves.errors import InvalidDensity, InvalidParameter, InvalidTail, NonSupercritical, UnboundedLaw, ZeroRate
from clonal_waves.model import composite_rate_u1k, exponent_pk, pk_value


def test_pk_values(fig_model):
    assert exponent_pk(fig_model, 1) == pytest.approx(0.1, rel=1e-12)
    assert exponent_pk(fig_model, 2) == pytest.approx(0.12 / 0.1 + 0.12 / 0.11 - 2, rel=1e-12)
    assert pk_value(0.1, 0.0, 3) == pytest.approx(0.0, abs=1e-15)


def test_composite_rate(fig_model):
    m = fig_model.replace(u=(1e-3, 4e-3))
    assert composite_rate_u1k(m, 1) == pytest.approx(1e-3, rel=1e-14)
    assert composite_rate_u1k(m, 2) == pytest.approx(1e-3 * 4e-3 ** (0.1 / 0.11), rel=1e-14)
    assert composite_rate_u1k(fig_model, 2) == pytest.approx(1.8738174228603818e-06, rel=1e-12)
    with pytest.raises(ZeroRate):
        composite_rate_u1k(m.replace(u=(1e-3, 0.0)), 2)


def test_validation_errors():
    law = BoundedFitness.uniform(0.01)
    with pytest.raises(NonSupercritical):
        validate(BranchingModel(0.1, 0.1, [1e-3], 1.0, law))
    with pytest.raises(InvalidParameter):
        validate(BranchingModel(0.2, 0.1, [1e-3], 0.0, law))
    with pytest.raises(InvalidParameter):
        validate(BranchingModel(0.2, 0.1, [1e-3], 2.5, law, "stochastic"))
    with pytest.raises(InvalidTail):
        validate(BranchingModel(0.2, 0.1, [1e-3], 1.0, UnboundedFitness(1.0, 0.0, 0.0)))
    half = BoundedFitness(0.01, lambda x: np.full(np.shape(x), 50.0), 50.0, 50.0)
    with pytest.raises(InvalidDensity):
        validate(BranchingModel(0.2, 0.1, [1e-3], 1.0, half))
    vanishing = BoundedFitness(0.01, lambda x: 2e4 * (0.01 - np.asarray(x)), 0.0, 200.0)
    with pytest.raises(InvalidDensity):
        validate(BranchingModel(0.2, 0.1, [1e-3], 1.0, vanishing))


def test_bounded_only_properties(exp_model):
    with pytest.raises(UnboundedLaw):
        exp_model.b
    with pytest.raises(UnboundedLaw):
        exp_model.g_at_b


def test_triangular_density_tabulated_inverse(rng):
    law = BoundedFitness(1.0, lambda x: 2.0 * np.asarray(x), 2.0, 2.0)
    validate(BranchingModel(0.2, 0.1, [1e-3], 1.0, law))
    x = law.sample(rng, 200_000)
    assert x.min() >= 0 and x.max() <= 1
    assert x.mean() == pytest.approx(2 / 3, abs=3 * math.sqrt(1 / 18 / x.size))


def test_exponential_increment_mean(rng):
    x = UnboundedFitness(1.0, 0.0, 2.0).sample(rng, 400_000)
    assert x.mean() == pytest.approx(0.5, abs=3 * 0.5 / math.sqrt(x.size))


@pytest.mark.parametrize("beta", [-1.0, 0.5])
def test_x_floor_makes_tail_proper(beta):
    law = UnboundedFitness(2.0, beta, 1.0)
    xf = law.x_floor
    assert float(law.tail(xf)) <= 1.0
    assert float(law.tail(0.0)) == 1.0
    grid = np.linspace(xf, xf + 5, 200)
    assert np.all(np.diff(law.log_tail(grid)) <= 1e-15)


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.sampled_from([1.0, 2.0, 3.0]),
    beta=st.floats(-2.0, 2.0),
    gamma=st.floats(0.2, 5.0),
    log_p=st.floats(-300.0, -1e-3),
)
def test_inverse_log_tail_round_trip(alpha, beta, gamma, log_p):
    law = UnboundedFitness(alpha, beta, gamma)
    atom = float(law.log_tail(law.x_floor))
    if log_p >= atom:
        return
    x = float(law.inverse_log_tail(log_p))
    assert float(law.log_tail(x)) == pytest.approx(log_p, rel=1e-9, abs=1e-9)


def test_sample_above_respects_threshold(rng):
    law = UnboundedFitness(1.0, 0.0, 1.0)
    x = law.sample_above(rng, np.full(100_000, 3.0))
    assert x.min() > 3.0
    # memoryless: the excess is Exp(1)
    assert (x - 3.0).mean() == pytest.approx(1.0, abs=3 / math.sqrt(x.size))
