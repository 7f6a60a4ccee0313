"""Evidence-space reference implementation of fusion and fission.

Opinions mapped to Dirichlet evidence counts combine by plain count arithmetic: cumulative fusion adds the counts of
the two observers, averaging fusion takes their mean, and fission undoes either. These functions share nothing with
``fusion`` and ``fission`` except the mapping in ``models``, so agreement between the two is an independent check
of the opinion-space formulas. The CLI exposes them through ``--via-evidence``.
"""

import logging

import numpy as np

from .errors import BaseRateConflict, DecompositionCondition, FrameMismatch, NotDecomposable, PriorWeightMismatch
from .models import EPSILON, EvidenceOpinion, to_tuple

logger = logging.getLogger(__name__)


def _require_same_space(a: EvidenceOpinion, b: EvidenceOpinion) -> None:
    if a.frame != b.frame:
        msg = f"frames differ: {list(a.frame.labels)} vs {list(b.frame.labels)}"
        raise FrameMismatch(msg)
    if a.prior_weight != b.prior_weight:
        msg = f"prior weights differ: {a.prior_weight} vs {b.prior_weight}"
        raise PriorWeightMismatch(msg)
    if not np.allclose(a.base_rate, b.base_rate, rtol=0.0, atol=EPSILON):
        msg = f"base rates differ: {list(a.base_rate)} vs {list(b.base_rate)}"
        raise BaseRateConflict(msg)


def _with_evidence(template: EvidenceOpinion, evidence: np.ndarray) -> EvidenceOpinion:
    return template.model_copy(update={"evidence": to_tuple(evidence)})


def _non_negative(evidence: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """Clamp components that are negative by less than the count-relative tolerance.

    Raises:
        NotDecomposable: If a component is negative beyond the tolerance
    """
    slack = EPSILON * np.maximum(1.0, scale)
    for i, (value, allowed) in enumerate(zip(evidence.tolist(), slack.tolist())):
        if value < -allowed:
            detail = f"evidence count {value:.6g} of component {i} would be negative"
            raise NotDecomposable(DecompositionCondition.NEGATIVE_BELIEF, detail, index=i)
    return np.clip(evidence, 0.0, None)


def oracle_cumulative_fuse(a: EvidenceOpinion, b: EvidenceOpinion) -> EvidenceOpinion:
    """Add the evidence counts of two independent observers."""
    _require_same_space(a, b)
    evidence = np.asarray(a.evidence) + np.asarray(b.evidence)
    logger.debug(f"Oracle cumulative fusion - total_evidence: {evidence.sum()}")
    return _with_evidence(a, evidence)


def oracle_averaging_fuse(a: EvidenceOpinion, b: EvidenceOpinion) -> EvidenceOpinion:
    """Average the evidence counts of two observers of the same process."""
    _require_same_space(a, b)
    evidence = (np.asarray(a.evidence) + np.asarray(b.evidence)) / 2.0
    logger.debug(f"Oracle averaging fusion - total_evidence: {evidence.sum()}")
    return _with_evidence(a, evidence)


def oracle_cumulative_fission(c: EvidenceOpinion, b: EvidenceOpinion) -> EvidenceOpinion:
    """Subtract a contributor's counts from cumulatively fused counts.

    Raises:
        NotDecomposable: If a count of ``b`` exceeds the matching count of ``c``
    """
    _require_same_space(c, b)
    rc, rb = np.asarray(c.evidence), np.asarray(b.evidence)
    evidence = _non_negative(rc - rb, np.maximum(rc, rb))
    logger.debug(f"Oracle cumulative fission - total_evidence: {evidence.sum()}")
    return _with_evidence(c, evidence)


def oracle_averaging_fission(c: EvidenceOpinion, b: EvidenceOpinion) -> EvidenceOpinion:
    """Recover the other observer's counts from averaged counts, ``2 r_C - r_B``.

    Raises:
        NotDecomposable: If a count of ``b`` exceeds twice the matching count of ``c``
    """
    _require_same_space(c, b)
    rc, rb = np.asarray(c.evidence), np.asarray(b.evidence)
    evidence = _non_negative(2.0 * rc - rb, np.maximum(2.0 * rc, rb))
    logger.debug(f"Oracle averaging fission - total_evidence: {evidence.sum()}")
    return _with_evidence(c, evidence)
