"""Cumulative and averaging fusion of multinomial opinions.

Cumulative fusion combines opinions built from independent evidence (disjoint observation periods); averaging
fusion combines opinions built from the same evidence. Both fall back to a gamma-weighted average of the belief
vectors when both operands are dogmatic, since the general formulas divide by zero there.
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .models import EPSILON, MultinomialOpinion, Operator, compose_owner, require_compatible, to_tuple

logger = logging.getLogger(__name__)

DEFAULT_GAMMA = 0.5


class DogmaticWeights(BaseModel):
    """Relative weight used when two dogmatic opinions are fused.

    ``gamma`` multiplies the first operand's belief and ``1 - gamma`` the second's. It stands for the limit of
    ``u_B / (u_A + u_B)`` as both uncertainties vanish, which the operands alone cannot determine.
    """

    model_config = ConfigDict(frozen=True)

    gamma: float = Field(default=DEFAULT_GAMMA, ge=0.0, le=1.0, description="Weight of the first operand")

    def swapped(self) -> "DogmaticWeights":
        """Weights for the same fusion with the operands exchanged."""
        return DogmaticWeights(gamma=1.0 - self.gamma)


def _both_dogmatic(a: MultinomialOpinion, b: MultinomialOpinion) -> bool:
    return a.uncertainty < EPSILON and b.uncertainty < EPSILON


def _weighted_belief(a: MultinomialOpinion, b: MultinomialOpinion, weights: Optional[DogmaticWeights]) -> np.ndarray:
    gamma = (weights or DogmaticWeights()).gamma
    return gamma * np.asarray(a.belief) + (1.0 - gamma) * np.asarray(b.belief)


def cumulative_fuse(
    a: MultinomialOpinion, b: MultinomialOpinion, weights: Optional[DogmaticWeights] = None
) -> MultinomialOpinion:
    """Fuse two opinions based on independent evidence.

    Args:
        a: First opinion
        b: Second opinion
        weights: Gamma for the case where both operands are dogmatic, defaults to equal weight

    Returns:
        The cumulatively fused opinion, owned by ``A◇B``

    Raises:
        FrameMismatch: If the operands range over different frames
        BaseRateConflict: If the operands carry different base rates
    """
    require_compatible(a, b)
    ua, ub = a.uncertainty, b.uncertainty

    if _both_dogmatic(a, b):
        belief = _weighted_belief(a, b, weights)
        uncertainty = 0.0
        case = "II"
    else:
        denominator = ua + ub - ua * ub
        belief = (np.asarray(a.belief) * ub + np.asarray(b.belief) * ua) / denominator
        uncertainty = ua * ub / denominator
        case = "I"

    owner = compose_owner(Operator.CUMULATIVE_FUSION, a.owner, b.owner)
    logger.debug(f"Cumulative fusion computed - case: {case}, uncertainty: {uncertainty}, owner: {owner}")
    return MultinomialOpinion(
        frame=a.frame, belief=to_tuple(belief), uncertainty=uncertainty, base_rate=a.base_rate, owner=owner
    )


def averaging_fuse(
    a: MultinomialOpinion, b: MultinomialOpinion, weights: Optional[DogmaticWeights] = None
) -> MultinomialOpinion:
    """Fuse two opinions based on the same evidence.

    Args:
        a: First opinion
        b: Second opinion
        weights: Gamma for the case where both operands are dogmatic, defaults to equal weight

    Returns:
        The averaged opinion, owned by ``A◇̲B``

    Raises:
        FrameMismatch: If the operands range over different frames
        BaseRateConflict: If the operands carry different base rates
    """
    require_compatible(a, b)
    ua, ub = a.uncertainty, b.uncertainty

    if _both_dogmatic(a, b):
        belief = _weighted_belief(a, b, weights)
        uncertainty = 0.0
        case = "II"
    else:
        denominator = ua + ub
        belief = (np.asarray(a.belief) * ub + np.asarray(b.belief) * ua) / denominator
        uncertainty = 2.0 * ua * ub / denominator
        case = "I"

    owner = compose_owner(Operator.AVERAGING_FUSION, a.owner, b.owner)
    logger.debug(f"Averaging fusion computed - case: {case}, uncertainty: {uncertainty}, owner: {owner}")
    return MultinomialOpinion(
        frame=a.frame, belief=to_tuple(belief), uncertainty=uncertainty, base_rate=a.base_rate, owner=owner
    )
