"""Configuration for pytest."""

from pathlib import Path

import numpy as np
import pytest

from opinion_calc.models import Frame, MultinomialOpinion, binomial, validate_opinion

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    """Directory holding the golden opinion files."""
    return DATA_DIR


@pytest.fixture
def fused_c():
    """Fused opinion of the worked fission example."""
    return binomial(0.90, 0.05, 0.05, 0.5, owner="C")


@pytest.fixture
def contributor_b():
    """Known contributor of the worked fission example."""
    return binomial(0.70, 0.10, 0.20, 0.5, owner="B")


@pytest.fixture
def rng():
    """Seeded random generator so sweeps are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def make_random_opinion():
    """Factory drawing a valid opinion with uncertainty uniform in ``[min_uncertainty, 1]``."""

    def make(rng: np.random.Generator, k: int, min_uncertainty: float = 1e-6) -> MultinomialOpinion:
        frame = Frame(labels=tuple(f"x{i}" for i in range(k)))
        uncertainty = float(rng.uniform(min_uncertainty, 1.0))
        belief = (1.0 - uncertainty) * rng.dirichlet(np.ones(k))
        return validate_opinion(frame, belief, uncertainty, [1.0 / k] * k)

    return make
