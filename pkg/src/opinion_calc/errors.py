"""Exceptions raised by the opinion calculator."""

from enum import Enum
from typing import Optional

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_DECOMPOSABLE = 3
EXIT_IO = 4


class OpinionError(Exception):
    """Base class for all opinion calculator errors.

    Attributes:
        exit_code: Process exit code the CLI reports for this error
        span: Byte offsets ``(start, end)`` of the subexpression that failed, when known
    """

    exit_code = EXIT_INVALID

    def __init__(self, message: str) -> None:
        """Initialize the error with a human-readable message."""
        super().__init__(message)
        self.message = message
        self.span: Optional[tuple[int, int]] = None

    def __str__(self) -> str:
        """Render the message, prefixed with the failing span when one was attached."""
        if self.span is None:
            return self.message
        return f"{self.message} (at bytes {self.span[0]}-{self.span[1]})"


class Constraint(str, Enum):
    """Opinion constraints checked at construction."""

    RANGE = "range"
    ADDITIVITY = "additivity"
    BASE_RATE = "base_rate"


class ConstraintViolation(OpinionError, ValueError):
    """An opinion failed the range, additivity or base-rate constraint."""

    def __init__(self, constraint: Constraint, residual: float, index: Optional[int] = None) -> None:
        """Initialize with the failed constraint and the size of the violation.

        Args:
            constraint: Which constraint failed
            residual: Magnitude by which the constraint is missed
            index: Offending vector component for range violations
        """
        where = f" at component {index}" if index is not None else ""
        super().__init__(f"{constraint.value} constraint violated{where}, residual: {residual:.3g}")
        self.constraint = constraint
        self.residual = residual
        self.index = index


class DogmaticOpinion(OpinionError):
    """A dogmatic opinion (zero uncertainty) has no finite evidence image."""


class FrameMismatch(OpinionError):
    """Operands range over different frames."""


class BaseRateConflict(OpinionError):
    """Operands carry different base-rate vectors."""


class PriorWeightMismatch(OpinionError):
    """Evidence operands were mapped with different prior weights."""


class DecompositionCondition(str, Enum):
    """Conditions under which a fused opinion does not contain a given component."""

    UNCERTAINTY_ORDER = "uncertainty_order"
    NEGATIVE_BELIEF = "negative_belief"
    NEGATIVE_WEIGHT = "negative_weight"


class NotDecomposable(OpinionError):
    """Fission was asked to remove a component the fused opinion does not contain."""

    exit_code = EXIT_NOT_DECOMPOSABLE

    def __init__(self, condition: DecompositionCondition, detail: str, index: Optional[int] = None) -> None:
        """Initialize with the violated condition.

        Args:
            condition: Which decomposability condition failed
            detail: Description of the measured values
            index: Offending belief component, if the condition is per component
        """
        super().__init__(f"not decomposable ({condition.value}): {detail}")
        self.condition = condition
        self.index = index


class ParseError(OpinionError):
    """An expression could not be parsed."""

    def __init__(self, offset: int, expected: frozenset[str], found: str) -> None:
        """Initialize with the byte offset of the failure and the tokens that would have been accepted."""
        super().__init__(f"parse error at byte {offset}: expected {' or '.join(sorted(expected))}, found {found}")
        self.offset = offset
        self.expected = expected
        self.found = found


class UnknownIdentifier(OpinionError):
    """An expression names an opinion that the opinion file does not define."""

    def __init__(self, name: str) -> None:
        """Initialize with the unresolved name."""
        super().__init__(f"unknown identifier '{name}'")
        self.name = name


class OpinionFileError(OpinionError):
    """An opinion file is malformed."""

    def __init__(self, line: int, detail: str) -> None:
        """Initialize with the 1-based line number and what is wrong with it."""
        super().__init__(f"line {line}: {detail}")
        self.line = line
