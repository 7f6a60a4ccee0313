"""Cumulative and averaging fission: removing a known contributor from a fused opinion.

Given a fused opinion C and one of its contributors B, fission recovers the remaining contributor A such that fusing
A with B gives back C. Not every pair (C, B) is decomposable; the conditions are checked before anything is
computed and reported as ``NotDecomposable`` with the first condition that fails.
"""

import logging
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import DecompositionCondition, NotDecomposable
from .models import EPSILON, MultinomialOpinion, Operator, compose_owner, require_compatible, to_tuple

logger = logging.getLogger(__name__)

DEFAULT_GAMMA_C = 0.0


class FissionMode(str, Enum):
    """Which fusion operator the fused opinion came from."""

    CUMULATIVE = "cumulative"
    AVERAGING = "averaging"


class FissionWeights(BaseModel):
    """Weights used when both the fused opinion and the known contributor are dogmatic.

    The result belief is ``gamma_b * b_C - gamma_c * b_B``. Additivity of the result forces
    ``gamma_b - gamma_c = 1``, so only ``gamma_c`` is free. The default 0 returns C unchanged.
    """

    model_config = ConfigDict(frozen=True)

    gamma_c: float = Field(default=DEFAULT_GAMMA_C, ge=0.0, description="Weight subtracted from the known contributor")

    @property
    def gamma_b(self) -> float:
        """Weight of the fused opinion."""
        return 1.0 + self.gamma_c


class Decomposition(BaseModel):
    """Outcome of a decomposability check."""

    model_config = ConfigDict(frozen=True)

    decomposable: bool = Field(..., description="Whether the fission call would succeed")
    condition: Optional[DecompositionCondition] = Field(default=None, description="First violated condition")
    index: Optional[int] = Field(default=None, description="Offending component for per-component conditions")
    message: str = Field(default="", description="Description of the violation")


def _both_dogmatic(c: MultinomialOpinion, b: MultinomialOpinion) -> bool:
    return c.uncertainty < EPSILON and b.uncertainty < EPSILON


def _scaled_slack(uc: float, ub: float) -> float:
    """Tolerance for the decomposability checks, whose terms scale with the uncertainties.

    A violation within this slack moves the re-fused opinion by at most EPSILON, whatever the scale of the
    uncertainties.
    """
    return EPSILON * max(uc, ub)


def _first_negative(numerators: np.ndarray, slack: float, operator: str) -> Optional[NotDecomposable]:
    for i, value in enumerate(numerators.tolist()):
        if value < -slack:
            detail = f"belief numerator {value:.3g} of component {i} is negative, C does not contain B {operator}"
            return NotDecomposable(DecompositionCondition.NEGATIVE_BELIEF, detail, index=i)
    return None


def _dogmatic_belief(c: MultinomialOpinion, b: MultinomialOpinion, weights: FissionWeights) -> np.ndarray:
    return weights.gamma_b * np.asarray(c.belief) - weights.gamma_c * np.asarray(b.belief)


def _dogmatic_violation(belief: np.ndarray) -> Optional[NotDecomposable]:
    for i, value in enumerate(belief.tolist()):
        if value < -EPSILON or value > 1.0 + EPSILON:
            detail = f"weighted subtraction gives belief {value:.3g} at component {i}, outside [0, 1]"
            return NotDecomposable(DecompositionCondition.NEGATIVE_WEIGHT, detail, index=i)
    return None


def _cumulative_violation(c: MultinomialOpinion, b: MultinomialOpinion) -> Optional[NotDecomposable]:
    uc, ub = c.uncertainty, b.uncertainty
    slack = _scaled_slack(uc, ub)
    if uc > ub + slack:
        detail = f"fused uncertainty {uc:.6g} exceeds contributor uncertainty {ub:.6g}"
        return NotDecomposable(DecompositionCondition.UNCERTAINTY_ORDER, detail)
    if ub - uc + ub * uc <= 0.0:
        detail = f"fused uncertainty {uc:.6g} leaves no room for contributor uncertainty {ub:.6g}"
        return NotDecomposable(DecompositionCondition.UNCERTAINTY_ORDER, detail)
    numerators = np.asarray(c.belief) * ub - np.asarray(b.belief) * uc
    return _first_negative(numerators, slack, "cumulatively")


def _averaging_violation(c: MultinomialOpinion, b: MultinomialOpinion) -> Optional[NotDecomposable]:
    uc, ub = c.uncertainty, b.uncertainty
    slack = _scaled_slack(uc, ub)
    if 2.0 * ub - uc <= 0.0:
        detail = f"twice the contributor uncertainty {ub:.6g} does not exceed fused uncertainty {uc:.6g}"
        return NotDecomposable(DecompositionCondition.UNCERTAINTY_ORDER, detail)
    if uc * (1.0 + ub) > 2.0 * ub + slack:
        detail = f"fused uncertainty {uc:.6g} and contributor uncertainty {ub:.6g} give a result uncertainty above 1"
        return NotDecomposable(DecompositionCondition.UNCERTAINTY_ORDER, detail)
    numerators = 2.0 * np.asarray(c.belief) * ub - np.asarray(b.belief) * uc
    return _first_negative(numerators, slack, "by averaging")


def _settle(belief: np.ndarray, uncertainty: float) -> tuple[np.ndarray, float]:
    """Clamp sub-tolerance noise out of a result and restore exact additivity."""
    if not (np.any(belief < 0.0) or uncertainty > 1.0):
        return belief, uncertainty
    uncertainty = min(uncertainty, 1.0)
    belief = np.clip(belief, 0.0, None)
    total = float(belief.sum())
    if total > 0.0:
        belief = belief * ((1.0 - uncertainty) / total)
    else:
        uncertainty = 1.0
    logger.debug(f"Fission result clamped - uncertainty: {uncertainty}, belief_total: {total}")
    return belief, uncertainty


def _dogmatic_fission(
    c: MultinomialOpinion, b: MultinomialOpinion, weights: Optional[FissionWeights]
) -> tuple[np.ndarray, float]:
    belief = _dogmatic_belief(c, b, weights or FissionWeights())
    violation = _dogmatic_violation(belief)
    if violation is not None:
        raise violation
    belief = np.clip(belief, 0.0, 1.0)
    return belief / belief.sum(), 0.0


def cumulative_fission(
    c: MultinomialOpinion, b: MultinomialOpinion, weights: Optional[FissionWeights] = None
) -> MultinomialOpinion:
    """Remove contributor ``b`` from the cumulatively fused opinion ``c``.

    Args:
        c: Cumulatively fused opinion
        b: Known contributor
        weights: Weights for the case where both operands are dogmatic

    Returns:
        The remaining contributor A, with ``cumulative_fuse(A, b) == c``

    Raises:
        FrameMismatch: If the operands range over different frames
        BaseRateConflict: If the operands carry different base rates
        NotDecomposable: If ``c`` does not contain ``b`` as a cumulative component
    """
    require_compatible(c, b)

    if _both_dogmatic(c, b):
        belief, uncertainty = _dogmatic_fission(c, b, weights)
        case = "II"
    else:
        violation = _cumulative_violation(c, b)
        if violation is not None:
            logger.debug(f"Cumulative fission rejected - condition: {violation.condition.value}")
            raise violation
        uc, ub = c.uncertainty, b.uncertainty
        denominator = ub - uc + ub * uc
        belief = (np.asarray(c.belief) * ub - np.asarray(b.belief) * uc) / denominator
        belief, uncertainty = _settle(belief, ub * uc / denominator)
        case = "I"

    owner = compose_owner(Operator.CUMULATIVE_FISSION, c.owner, b.owner)
    logger.debug(f"Cumulative fission computed - case: {case}, uncertainty: {uncertainty}, owner: {owner}")
    return MultinomialOpinion(
        frame=c.frame, belief=to_tuple(belief), uncertainty=uncertainty, base_rate=c.base_rate, owner=owner
    )


def averaging_fission(
    c: MultinomialOpinion, b: MultinomialOpinion, weights: Optional[FissionWeights] = None
) -> MultinomialOpinion:
    """Remove contributor ``b`` from the averaged opinion ``c``.

    Args:
        c: Opinion produced by averaging fusion
        b: Known contributor
        weights: Weights for the case where both operands are dogmatic

    Returns:
        The remaining contributor A, with ``averaging_fuse(A, b) == c``

    Raises:
        FrameMismatch: If the operands range over different frames
        BaseRateConflict: If the operands carry different base rates
        NotDecomposable: If ``c`` does not contain ``b`` as an averaged component
    """
    require_compatible(c, b)

    if _both_dogmatic(c, b):
        belief, uncertainty = _dogmatic_fission(c, b, weights)
        case = "II"
    else:
        violation = _averaging_violation(c, b)
        if violation is not None:
            logger.debug(f"Averaging fission rejected - condition: {violation.condition.value}")
            raise violation
        uc, ub = c.uncertainty, b.uncertainty
        denominator = 2.0 * ub - uc
        # Written as offsets from C so that C minus itself returns C unchanged
        bc = np.asarray(c.belief)
        belief = bc + (bc - np.asarray(b.belief)) * uc / denominator
        belief, uncertainty = _settle(belief, uc + uc * (uc - ub) / denominator)
        case = "I"

    owner = compose_owner(Operator.AVERAGING_FISSION, c.owner, b.owner)
    logger.debug(f"Averaging fission computed - case: {case}, uncertainty: {uncertainty}, owner: {owner}")
    return MultinomialOpinion(
        frame=c.frame, belief=to_tuple(belief), uncertainty=uncertainty, base_rate=c.base_rate, owner=owner
    )


def is_decomposable(
    c: MultinomialOpinion,
    b: MultinomialOpinion,
    mode: FissionMode,
    weights: Optional[FissionWeights] = None,
) -> Decomposition:
    """Report whether fission of ``b`` out of ``c`` would succeed, without computing the result.

    Raises:
        FrameMismatch: If the operands range over different frames
        BaseRateConflict: If the operands carry different base rates
    """
    require_compatible(c, b)

    if _both_dogmatic(c, b):
        violation = _dogmatic_violation(_dogmatic_belief(c, b, weights or FissionWeights()))
    elif mode == FissionMode.CUMULATIVE:
        violation = _cumulative_violation(c, b)
    else:
        violation = _averaging_violation(c, b)

    if violation is None:
        return Decomposition(decomposable=True)
    return Decomposition(
        decomposable=False, condition=violation.condition, index=violation.index, message=violation.message
    )
