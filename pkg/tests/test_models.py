"""Tests for the opinion data models."""

import math

import pytest
from pydantic import ValidationError

from opinion_calc.errors import BaseRateConflict, Constraint, ConstraintViolation, DogmaticOpinion, FrameMismatch
from opinion_calc.models import (
    EvidenceOpinion,
    Frame,
    MultinomialOpinion,
    OpinionClass,
    Operator,
    binomial,
    classify,
    compose_owner,
    expectation,
    from_evidence,
    require_compatible,
    to_evidence,
    vacuous,
    validate_opinion,
)


def test_operator_enum():
    """Test Operator enum values."""
    assert Operator.CUMULATIVE_FUSION == "cumulative_fusion"
    assert Operator.AVERAGING_FUSION == "averaging_fusion"
    assert Operator.CUMULATIVE_FISSION == "cumulative_fission"
    assert Operator.AVERAGING_FISSION == "averaging_fission"


def test_frame_binary():
    """Test the binary frame helper."""
    frame = Frame.binary("rain")
    assert frame.labels == ("rain", "not_rain")
    assert frame.size == 2


@pytest.mark.parametrize("labels", [("x",), ("x", "x"), ("x", ""), ("x", "a b")])
def test_frame_invalid_labels(labels):
    """Test that degenerate frames are rejected."""
    with pytest.raises(ValidationError):
        Frame(labels=labels)


def test_validate_opinion_stores_fields_exactly():
    """Test that valid input is stored without renormalization."""
    op = validate_opinion(["x", "y", "z"], [0.2, 0.3, 0.1], 0.4, [0.5, 0.25, 0.25], owner="A")

    assert op.belief == (0.2, 0.3, 0.1)
    assert op.uncertainty == 0.4
    assert op.base_rate == (0.5, 0.25, 0.25)
    assert op.owner == "A"
    assert op.frame.size == 3


def test_validate_opinion_accepts_sub_tolerance_residual():
    """Test that additivity misses below the tolerance are accepted as given."""
    op = validate_opinion(["x", "y"], [0.5, 0.3], 0.2 + 5e-10, [0.5, 0.5])
    assert op.uncertainty == 0.2 + 5e-10


def test_validate_opinion_additivity_violation():
    """Test that an additivity miss above the tolerance is reported."""
    with pytest.raises(ConstraintViolation) as exc_info:
        validate_opinion(["x", "y"], [0.5, 0.3], 0.3, [0.5, 0.5])

    assert exc_info.value.constraint == Constraint.ADDITIVITY
    assert exc_info.value.residual == pytest.approx(0.1)


@pytest.mark.parametrize(
    ("belief", "uncertainty", "base_rate", "index"),
    [
        ([1.2, -0.2], 0.0, [0.5, 0.5], 0),
        ([0.5, 0.5], -0.1, [0.5, 0.5], 2),
        ([0.5, 0.3], 0.2, [1.5, -0.5], 3),
        ([0.5, math.nan], 0.2, [0.5, 0.5], 1),
    ],
)
def test_validate_opinion_range_violation(belief, uncertainty, base_rate, index):
    """Test that range violations name the offending component."""
    with pytest.raises(ConstraintViolation) as exc_info:
        validate_opinion(["x", "y"], belief, uncertainty, base_rate)

    assert exc_info.value.constraint == Constraint.RANGE
    assert exc_info.value.index == index


def test_validate_opinion_base_rate_violation():
    """Test that base rates must sum to one."""
    with pytest.raises(ConstraintViolation) as exc_info:
        validate_opinion(["x", "y"], [0.5, 0.3], 0.2, [0.5, 0.4])
    assert exc_info.value.constraint == Constraint.BASE_RATE


def test_validate_opinion_length_mismatch():
    """Test that vectors must have one entry per proposition."""
    with pytest.raises(FrameMismatch):
        validate_opinion(["x", "y", "z"], [0.5, 0.3], 0.2, [0.5, 0.5])


def test_opinion_is_immutable():
    """Test that opinions cannot be modified after construction."""
    op = binomial(0.5, 0.3, 0.2, 0.5)
    with pytest.raises(ValidationError):
        op.uncertainty = 0.1


def test_binomial_accessors():
    """Test binomial disbelief and quadruple accessors."""
    op = binomial(0.7, 0.1, 0.2, 0.3)

    assert op.disbelief == 0.1
    assert op.as_binomial() == (0.7, 0.1, 0.2, 0.3)
    assert op.base_rate == pytest.approx((0.3, 0.7))


def test_disbelief_requires_binomial():
    """Test that disbelief is undefined on larger frames."""
    op = vacuous(["x", "y", "z"], [0.2, 0.3, 0.5])
    with pytest.raises(ValueError, match="binomial"):
        _ = op.disbelief


def test_vacuous_opinion():
    """Test the vacuous opinion constructor."""
    op = vacuous(Frame.binary(), [0.25, 0.75], owner="V")

    assert op.belief == (0.0, 0.0)
    assert op.uncertainty == 1.0
    assert op.is_vacuous
    assert not op.is_dogmatic
    assert op.owner == "V"


def test_expectation():
    """Test probability expectation, belief plus base-rate share of uncertainty."""
    op = binomial(0.5, 0.3, 0.2, 0.25)
    assert expectation(op) == pytest.approx((0.55, 0.45))


def test_expectation_of_vacuous_is_base_rate():
    """Test that a vacuous opinion expects its base rate."""
    op = vacuous(["x", "y", "z"], [0.2, 0.3, 0.5])
    assert expectation(op) == pytest.approx((0.2, 0.3, 0.5))


@pytest.mark.parametrize(
    ("op", "expected"),
    [
        (binomial(1.0, 0.0, 0.0, 0.5), OpinionClass.TRUE),
        (binomial(0.0, 1.0, 0.0, 0.5), OpinionClass.FALSE),
        (binomial(0.6, 0.4, 0.0, 0.5), OpinionClass.DOGMATIC),
        (binomial(0.0, 0.0, 1.0, 0.5), OpinionClass.VACUOUS),
        (binomial(0.6, 0.2, 0.2, 0.5), OpinionClass.UNCERTAIN),
    ],
)
def test_classify(op, expected):
    """Test the coarse opinion classes."""
    assert classify(op) == expected


def test_compose_owner():
    """Test owner labels of operator results."""
    assert compose_owner(Operator.CUMULATIVE_FUSION, "A", "B") == "A◇B"
    assert compose_owner(Operator.AVERAGING_FUSION, "A", "B") == "A◇̲B"
    assert compose_owner(Operator.CUMULATIVE_FISSION, "C", "B") == "C◇̅B"
    assert compose_owner(Operator.AVERAGING_FISSION, "C", "B") == "C◇̲̅B"
    assert compose_owner(Operator.CUMULATIVE_FUSION, "A", None) is None


def test_require_compatible_frame_mismatch():
    """Test that opinions over different frames cannot be combined."""
    a = binomial(0.5, 0.3, 0.2, 0.5)
    b = vacuous(Frame.binary("y"), [0.5, 0.5])
    with pytest.raises(FrameMismatch):
        require_compatible(a, b)


def test_require_compatible_base_rate_conflict():
    """Test that different base rates are an error, not silently resolved."""
    a = binomial(0.5, 0.3, 0.2, 0.5)
    b = binomial(0.5, 0.3, 0.2, 0.4)
    with pytest.raises(BaseRateConflict):
        require_compatible(a, b)


def test_to_evidence():
    """Test the mapping r = W * b / u."""
    ev = to_evidence(binomial(0.6, 0.2, 0.2, 0.5), prior_weight=2.0)

    assert ev.evidence == pytest.approx((6.0, 2.0))
    assert ev.prior_weight == 2.0
    assert ev.base_rate == (0.5, 0.5)


def test_to_evidence_rejects_dogmatic():
    """Test that dogmatic opinions have no evidence image."""
    with pytest.raises(DogmaticOpinion):
        to_evidence(binomial(0.6, 0.4, 0.0, 0.5))


def test_from_evidence():
    """Test the mapping back from counts, b = r / (W + sum r)."""
    ev = EvidenceOpinion(frame=Frame.binary(), evidence=(6.0, 2.0), base_rate=(0.5, 0.5), prior_weight=2.0)
    op = from_evidence(ev)

    assert op.belief == pytest.approx((0.6, 0.2))
    assert op.uncertainty == pytest.approx(0.2)


def test_from_evidence_without_counts_is_vacuous():
    """Test that zero evidence maps to the vacuous opinion."""
    ev = EvidenceOpinion(frame=Frame.binary(), evidence=(0.0, 0.0), base_rate=(0.5, 0.5), prior_weight=2.0)
    assert from_evidence(ev).is_vacuous


def test_evidence_opinion_rejects_negative_counts():
    """Test that evidence counts must be non-negative."""
    with pytest.raises(ValidationError):
        EvidenceOpinion(frame=Frame.binary(), evidence=(-1.0, 2.0), base_rate=(0.5, 0.5), prior_weight=2.0)


@pytest.mark.parametrize("prior_weight", [1.0, 2.0, 5.0])
@pytest.mark.parametrize("k", [2, 3, 5])
def test_evidence_mapping_round_trip(rng, make_random_opinion, prior_weight, k):
    """Test that mapping to evidence and back reproduces the opinion."""
    for _ in range(200):
        op = make_random_opinion(rng, k)
        back = from_evidence(to_evidence(op, prior_weight))
        assert back.belief == pytest.approx(op.belief, abs=1e-9)
        assert back.uncertainty == pytest.approx(op.uncertainty, abs=1e-9)


def test_multinomial_opinion_direct_construction_validates():
    """Test that constructing the model directly runs the same checks."""
    with pytest.raises(ValidationError):
        MultinomialOpinion(frame=Frame.binary(), belief=(0.5, 0.5), uncertainty=0.5, base_rate=(0.5, 0.5))
