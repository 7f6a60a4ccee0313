"""Randomized sweeps of the inverse laws and of agreement with the evidence-space oracle."""

import numpy as np
import pytest

from opinion_calc.fission import averaging_fission, cumulative_fission
from opinion_calc.fusion import averaging_fuse, cumulative_fuse
from opinion_calc.models import MultinomialOpinion, from_evidence, to_evidence
from opinion_calc.oracle import (
    oracle_averaging_fission,
    oracle_averaging_fuse,
    oracle_cumulative_fission,
    oracle_cumulative_fuse,
)

TOLERANCE = 1e-9
PAIRS_PER_FRAME = 4000
ORACLE_PAIRS = 10002
PRIOR_WEIGHTS = (1.0, 2.0, 5.0)


def _difference(x: MultinomialOpinion, y: MultinomialOpinion) -> float:
    belief = np.max(np.abs(np.asarray(x.belief) - np.asarray(y.belief)))
    return float(max(belief, abs(x.uncertainty - y.uncertainty)))


def _via_evidence(oracle_op, left, right, prior_weight):
    return from_evidence(oracle_op(to_evidence(left, prior_weight), to_evidence(right, prior_weight)))


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3, 5])
def test_inverse_laws(rng, make_random_opinion, k):
    """Test that fission removes a contributor from fused pairs across random opinions."""
    failures = []
    for i in range(PAIRS_PER_FRAME):
        a = make_random_opinion(rng, k)
        b = make_random_opinion(rng, k)

        cumulative = _difference(cumulative_fission(cumulative_fuse(a, b), b), a)
        averaging = _difference(averaging_fission(averaging_fuse(a, b), b), a)
        if max(cumulative, averaging) > TOLERANCE:
            failures.append((i, a, b, cumulative, averaging))

    assert failures == []


@pytest.mark.slow
def test_oracle_agreement(rng, make_random_opinion):
    """Test that every operator agrees with evidence arithmetic for every prior weight."""
    failures = []
    for i in range(ORACLE_PAIRS):
        k = (2, 3, 5)[i % 3]
        a = make_random_opinion(rng, k)
        b = make_random_opinion(rng, k)
        c_cumulative = cumulative_fuse(a, b)
        c_averaging = averaging_fuse(a, b)

        cases = [
            ("cumulative_fuse", c_cumulative, oracle_cumulative_fuse, a, b),
            ("averaging_fuse", c_averaging, oracle_averaging_fuse, a, b),
            ("cumulative_fission", cumulative_fission(c_cumulative, b), oracle_cumulative_fission, c_cumulative, b),
            ("averaging_fission", averaging_fission(c_averaging, b), oracle_averaging_fission, c_averaging, b),
        ]
        for name, expected, oracle_op, left, right in cases:
            for prior_weight in PRIOR_WEIGHTS:
                difference = _difference(_via_evidence(oracle_op, left, right, prior_weight), expected)
                if difference > TOLERANCE:
                    failures.append((i, name, prior_weight, difference))

    assert failures == []
