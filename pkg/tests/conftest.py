import numpy as np
import pytest

from clonal_waves import BoundedFitness, BranchingModel, UnboundedFitness, validate


@pytest.fixture
def fig_model():
    """Figure 1 caption parameters with V0 = 0.1."""
    return validate(BranchingModel(0.2, 0.1, [1e-3, 1e-3, 1e-3], 0.1, BoundedFitness.uniform(0.01)))


@pytest.fixture
def small_model():
    """Small regime where the all-cells oracle is cheap."""
    return validate(BranchingModel(0.3, 0.1, [0.01], 10, BoundedFitness.uniform(0.05), "stochastic"))


@pytest.fixture
def exp_model():
    """Exponential increments (alpha = 1, beta = 0, gamma = 1)."""
    return validate(BranchingModel(0.2, 0.1, [1e-3, 1e-3], 1.0, UnboundedFitness(1.0, 0.0, 1.0)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
