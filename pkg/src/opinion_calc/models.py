"""Opinion data models: frames, multinomial opinions and their Dirichlet evidence form.

A multinomial opinion over a frame of k propositions is a belief-mass vector, an uncertainty mass and a base-rate
vector. Binomial opinions are the k = 2 case, with disbelief stored as the second belief component.

All models are frozen pydantic models, so opinions are immutable values that can be shared freely.
"""

import logging
import math
from collections.abc import Sequence
from enum import Enum
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import BaseRateConflict, Constraint, ConstraintViolation, DogmaticOpinion, FrameMismatch

logger = logging.getLogger(__name__)

# Absolute tolerance on the range, additivity and base-rate constraints
EPSILON = 1e-9

# Non-informative prior weight W of the Dirichlet evidence representation
DEFAULT_PRIOR_WEIGHT = 2.0


class Operator(str, Enum):
    """The four binary opinion operators."""

    CUMULATIVE_FUSION = "cumulative_fusion"
    AVERAGING_FUSION = "averaging_fusion"
    CUMULATIVE_FISSION = "cumulative_fission"
    AVERAGING_FISSION = "averaging_fission"

    @property
    def owner_glyph(self) -> str:
        """Diamond used to join owner labels of the operands."""
        return _OWNER_GLYPHS[self]


_OWNER_GLYPHS = {
    Operator.CUMULATIVE_FUSION: "◇",
    Operator.AVERAGING_FUSION: "◇̲",
    Operator.CUMULATIVE_FISSION: "◇̅",
    Operator.AVERAGING_FISSION: "◇̲̅",
}


class OpinionClass(str, Enum):
    """Coarse classes of opinions."""

    TRUE = "true"
    FALSE = "false"
    DOGMATIC = "dogmatic"
    UNCERTAIN = "uncertain"
    VACUOUS = "vacuous"


class Frame(BaseModel):
    """Ordered set of mutually disjoint, exhaustive proposition labels."""

    model_config = ConfigDict(frozen=True)

    labels: tuple[str, ...] = Field(..., description="Proposition labels, at least two, pairwise distinct")

    @field_validator("labels")
    @classmethod
    def _check_labels(cls, labels: tuple[str, ...]) -> tuple[str, ...]:
        if len(labels) < 2:
            msg = f"a frame needs at least 2 propositions, got {len(labels)}"
            raise ValueError(msg)
        for label in labels:
            if not label or any(ch.isspace() for ch in label):
                msg = f"proposition labels must be non-empty and contain no whitespace, got {label!r}"
                raise ValueError(msg)
        if len(set(labels)) != len(labels):
            msg = f"proposition labels must be distinct, got {list(labels)}"
            raise ValueError(msg)
        return labels

    @property
    def size(self) -> int:
        """Number of propositions k."""
        return len(self.labels)

    @classmethod
    def binary(cls, proposition: str = "x") -> "Frame":
        """Frame of a binomial opinion: the proposition and its complement."""
        return cls(labels=(proposition, f"not_{proposition}"))


FrameLike = Union[Frame, Sequence[str]]


def _as_frame(frame: FrameLike) -> Frame:
    if isinstance(frame, Frame):
        return frame
    return Frame(labels=tuple(frame))


def to_tuple(values: Union[np.ndarray, Sequence[float]]) -> tuple[float, ...]:
    """Convert a vector to the tuple of Python floats stored on models."""
    return tuple(np.asarray(values, dtype=float).tolist())


def _check_range(values: Sequence[float], offset: int = 0) -> None:
    for i, value in enumerate(values):
        if not math.isfinite(value):
            raise ConstraintViolation(Constraint.RANGE, math.nan, index=offset + i)
        if value < -EPSILON or value > 1.0 + EPSILON:
            residual = -value if value < 0 else value - 1.0
            raise ConstraintViolation(Constraint.RANGE, residual, index=offset + i)


def _check_base_rate(base_rate: Sequence[float]) -> None:
    residual = abs(math.fsum(base_rate) - 1.0)
    if residual > EPSILON:
        raise ConstraintViolation(Constraint.BASE_RATE, residual)


def check_base_rate(frame: Frame, base_rate: Sequence[float]) -> None:
    """Check a base-rate vector on its own.

    Raises:
        FrameMismatch: If the vector does not have one entry per proposition
        ConstraintViolation: If a rate is outside [0, 1] or the rates do not sum to 1
    """
    if len(base_rate) != frame.size:
        msg = f"frame has {frame.size} propositions but base_rate has {len(base_rate)}"
        raise FrameMismatch(msg)
    _check_range(base_rate)
    _check_base_rate(base_rate)


def check_opinion_constraints(
    frame: Frame, belief: Sequence[float], uncertainty: float, base_rate: Sequence[float]
) -> None:
    """Check the range, additivity and base-rate constraints of an opinion.

    Range components are numbered belief first (0..k-1), then uncertainty (k), then base rates (k+1..2k).

    Raises:
        FrameMismatch: If a vector does not have one entry per proposition
        ConstraintViolation: If a constraint misses by more than EPSILON
    """
    k = frame.size
    if len(belief) != k or len(base_rate) != k:
        msg = f"frame has {k} propositions but belief has {len(belief)} and base_rate has {len(base_rate)}"
        raise FrameMismatch(msg)

    _check_range(belief)
    _check_range([uncertainty], offset=k)
    _check_range(base_rate, offset=k + 1)

    residual = abs(uncertainty + math.fsum(belief) - 1.0)
    if residual > EPSILON:
        raise ConstraintViolation(Constraint.ADDITIVITY, residual)

    _check_base_rate(base_rate)


class MultinomialOpinion(BaseModel):
    """Belief, uncertainty and base rates over a frame, optionally labelled with its owner."""

    model_config = ConfigDict(frozen=True)

    frame: Frame = Field(..., description="Frame the opinion ranges over")
    belief: tuple[float, ...] = Field(..., description="Belief mass per proposition")
    uncertainty: float = Field(..., description="Uncommitted belief mass")
    base_rate: tuple[float, ...] = Field(..., description="Prior probability per proposition")
    owner: Optional[str] = Field(default=None, description="Belief owner label, informational only")

    @model_validator(mode="after")
    def _check_constraints(self) -> "MultinomialOpinion":
        check_opinion_constraints(self.frame, self.belief, self.uncertainty, self.base_rate)
        return self

    @property
    def is_dogmatic(self) -> bool:
        """True when the opinion carries no uncertainty."""
        return self.uncertainty < EPSILON

    @property
    def is_vacuous(self) -> bool:
        """True when the opinion carries no committed belief."""
        return self.uncertainty > 1.0 - EPSILON

    @property
    def disbelief(self) -> float:
        """Disbelief of a binomial opinion."""
        if self.frame.size != 2:
            msg = f"disbelief is only defined for binomial opinions, frame has {self.frame.size} propositions"
            raise ValueError(msg)
        return self.belief[1]

    def as_binomial(self) -> tuple[float, float, float, float]:
        """Return the ``(b, d, u, a)`` quadruple of a binomial opinion."""
        return (self.belief[0], self.disbelief, self.uncertainty, self.base_rate[0])

    def with_owner(self, owner: Optional[str]) -> "MultinomialOpinion":
        """Copy of this opinion with a different owner label."""
        return self.model_copy(update={"owner": owner})


class EvidenceOpinion(BaseModel):
    """Dirichlet evidence counts with base rates and prior weight."""

    model_config = ConfigDict(frozen=True)

    frame: Frame = Field(..., description="Frame the evidence ranges over")
    evidence: tuple[float, ...] = Field(..., description="Observation count per proposition, may be fractional")
    base_rate: tuple[float, ...] = Field(..., description="Prior probability per proposition")
    prior_weight: float = Field(..., gt=0, description="Non-informative prior weight W")

    @model_validator(mode="after")
    def _check_constraints(self) -> "EvidenceOpinion":
        k = self.frame.size
        if len(self.evidence) != k or len(self.base_rate) != k:
            msg = (
                f"frame has {k} propositions but evidence has {len(self.evidence)} "
                f"and base_rate has {len(self.base_rate)}"
            )
            raise FrameMismatch(msg)
        for i, count in enumerate(self.evidence):
            if not math.isfinite(count) or count < 0:
                msg = f"evidence counts must be finite and non-negative, got {count} at component {i}"
                raise ValueError(msg)
        _check_range(self.base_rate)
        _check_base_rate(self.base_rate)
        return self


def validate_opinion(
    frame: FrameLike,
    belief: Sequence[float],
    uncertainty: float,
    base_rate: Sequence[float],
    owner: Optional[str] = None,
) -> MultinomialOpinion:
    """Build an opinion from raw fields, stored exactly as given.

    Args:
        frame: Frame or sequence of proposition labels
        belief: Belief mass per proposition
        uncertainty: Uncertainty mass
        base_rate: Base rate per proposition
        owner: Optional owner label

    Returns:
        The validated opinion

    Raises:
        ConstraintViolation: If the range, additivity or base-rate constraint fails
        FrameMismatch: If vector lengths do not match the frame
    """
    resolved = _as_frame(frame)
    belief_t = to_tuple(belief)
    base_rate_t = to_tuple(base_rate)
    check_opinion_constraints(resolved, belief_t, float(uncertainty), base_rate_t)
    return MultinomialOpinion(
        frame=resolved, belief=belief_t, uncertainty=float(uncertainty), base_rate=base_rate_t, owner=owner
    )


def vacuous(frame: FrameLike, base_rate: Sequence[float], owner: Optional[str] = None) -> MultinomialOpinion:
    """Opinion with no committed belief."""
    resolved = _as_frame(frame)
    return validate_opinion(resolved, [0.0] * resolved.size, 1.0, base_rate, owner=owner)


def binomial(b: float, d: float, u: float, a: float, owner: Optional[str] = None) -> MultinomialOpinion:
    """Binomial opinion ``(b, d, u, a)`` about a proposition ``x``."""
    return validate_opinion(Frame.binary(), [b, d], u, [a, 1.0 - a], owner=owner)


def expectation(op: MultinomialOpinion) -> tuple[float, ...]:
    """Probability expectation per proposition, belief plus the base-rate share of uncertainty."""
    belief = np.asarray(op.belief)
    base_rate = np.asarray(op.base_rate)
    return to_tuple(belief + base_rate * op.uncertainty)


def classify(op: MultinomialOpinion) -> OpinionClass:
    """Place an opinion in one of the coarse opinion classes."""
    if op.frame.size == 2 and op.belief[1] >= 1.0 - EPSILON:
        return OpinionClass.FALSE
    if max(op.belief) >= 1.0 - EPSILON:
        return OpinionClass.TRUE
    if op.is_dogmatic:
        return OpinionClass.DOGMATIC
    if op.is_vacuous:
        return OpinionClass.VACUOUS
    return OpinionClass.UNCERTAIN


def compose_owner(operator: Operator, left: Optional[str], right: Optional[str]) -> Optional[str]:
    """Owner label of an operator result, e.g. ``A◇B`` for cumulative fusion."""
    if left is None or right is None:
        return None
    return f"{left}{operator.owner_glyph}{right}"


def require_compatible(a: MultinomialOpinion, b: MultinomialOpinion) -> None:
    """Check that two opinions can be combined.

    Raises:
        FrameMismatch: If the frames differ
        BaseRateConflict: If the base-rate vectors differ by more than EPSILON
    """
    if a.frame != b.frame:
        msg = f"frames differ: {list(a.frame.labels)} vs {list(b.frame.labels)}"
        raise FrameMismatch(msg)
    difference = float(np.max(np.abs(np.asarray(a.base_rate) - np.asarray(b.base_rate))))
    if difference > EPSILON:
        msg = f"base rates differ: {list(a.base_rate)} vs {list(b.base_rate)}, max difference: {difference:.3g}"
        raise BaseRateConflict(msg)


def to_evidence(op: MultinomialOpinion, prior_weight: float = DEFAULT_PRIOR_WEIGHT) -> EvidenceOpinion:
    """Map an opinion to Dirichlet evidence counts ``r_i = W * b_i / u``.

    Raises:
        DogmaticOpinion: If the opinion has uncertainty below EPSILON
    """
    if op.uncertainty < EPSILON:
        msg = f"dogmatic opinion has no finite evidence image, uncertainty: {op.uncertainty}"
        raise DogmaticOpinion(msg)
    evidence = prior_weight * np.asarray(op.belief) / op.uncertainty
    logger.debug(f"Mapped opinion to evidence - owner: {op.owner}, prior_weight: {prior_weight}")
    return EvidenceOpinion(
        frame=op.frame, evidence=to_tuple(evidence), base_rate=op.base_rate, prior_weight=prior_weight
    )


def from_evidence(ev: EvidenceOpinion) -> MultinomialOpinion:
    """Map Dirichlet evidence counts back to an opinion.

    ``b_i = r_i / (W + sum r)`` and ``u = W / (W + sum r)``.
    """
    evidence = np.asarray(ev.evidence)
    strength = ev.prior_weight + math.fsum(ev.evidence)
    return MultinomialOpinion(
        frame=ev.frame,
        belief=to_tuple(evidence / strength),
        uncertainty=ev.prior_weight / strength,
        base_rate=ev.base_rate,
    )
