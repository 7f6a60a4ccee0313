"""Opinion Calc - fusion and fission of subjective-logic opinions.

This package implements cumulative and averaging belief fusion over multinomial opinions, together with their
inverse operators (fission) that remove a known contributor from a fused opinion. An independent evidence-space
oracle reproduces every operator through Dirichlet evidence arithmetic, and a small CLI evaluates infix
expressions over opinions read from a text file.

Key Features:
- Cumulative and averaging fusion, including the dogmatic limit
- Cumulative and averaging fission with decomposability checks
- Evidence-space oracle for cross-checking
- Expression parser with byte-offset error reporting
- ``opinion-calc`` command line tool

Example:
    Removing a contributor from a fused opinion:

    ```python
    from opinion_calc import binomial, cumulative_fission

    fused = binomial(0.90, 0.05, 0.05, 0.5, owner="C")
    contributor = binomial(0.70, 0.10, 0.20, 0.5, owner="B")
    remainder = cumulative_fission(fused, contributor)
    ```
"""

__version__ = "0.1.0"

from .errors import (
    BaseRateConflict,
    ConstraintViolation,
    DogmaticOpinion,
    FrameMismatch,
    NotDecomposable,
    OpinionError,
    ParseError,
    PriorWeightMismatch,
    UnknownIdentifier,
)
from .expression import EvaluationOptions, evaluate, parse_expression
from .fission import FissionMode, FissionWeights, averaging_fission, cumulative_fission, is_decomposable
from .fusion import DogmaticWeights, averaging_fuse, cumulative_fuse
from .models import (
    EvidenceOpinion,
    Frame,
    MultinomialOpinion,
    OpinionClass,
    Operator,
    binomial,
    classify,
    expectation,
    from_evidence,
    to_evidence,
    vacuous,
    validate_opinion,
)
from .opinion_file import OpinionFile, load_opinion_file, parse_opinion_file

__all__ = [
    "BaseRateConflict",
    "ConstraintViolation",
    "DogmaticOpinion",
    "DogmaticWeights",
    "EvaluationOptions",
    "EvidenceOpinion",
    "FissionMode",
    "FissionWeights",
    "Frame",
    "FrameMismatch",
    "MultinomialOpinion",
    "NotDecomposable",
    "OpinionClass",
    "OpinionError",
    "OpinionFile",
    "Operator",
    "ParseError",
    "PriorWeightMismatch",
    "UnknownIdentifier",
    "averaging_fission",
    "averaging_fuse",
    "binomial",
    "classify",
    "cumulative_fission",
    "cumulative_fuse",
    "evaluate",
    "expectation",
    "from_evidence",
    "is_decomposable",
    "load_opinion_file",
    "parse_expression",
    "parse_opinion_file",
    "to_evidence",
    "vacuous",
    "validate_opinion",
]
