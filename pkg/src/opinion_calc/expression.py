"""Infix fusion/fission expressions: tokenizer, parser and evaluator.

Grammar::

    expr := atom (OPERATOR atom)*
    atom := IDENT | '(' expr ')'

Operators are ``(+)`` cumulative fusion, ``(avg+)`` averaging fusion, ``(-)`` cumulative fission and ``(avg-)``
averaging fission. All four share one precedence level and associate to the left. Offsets and spans are byte
offsets into the UTF-8 encoded source.
"""

import logging
import re
from collections.abc import Callable, Iterator
from typing import Literal, NamedTuple, Optional, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field

from .errors import OpinionError, ParseError, UnknownIdentifier
from .fission import FissionWeights, averaging_fission, cumulative_fission
from .fusion import DogmaticWeights, averaging_fuse, cumulative_fuse
from .models import (
    DEFAULT_PRIOR_WEIGHT,
    MultinomialOpinion,
    Operator,
    compose_owner,
    expectation,
    from_evidence,
    to_evidence,
)
from .opinion_file import OpinionFile
from .oracle import oracle_averaging_fission, oracle_averaging_fuse, oracle_cumulative_fission, oracle_cumulative_fuse

logger = logging.getLogger(__name__)

OPERATOR_TOKENS = {
    Operator.CUMULATIVE_FUSION: "(+)",
    Operator.AVERAGING_FUSION: "(avg+)",
    Operator.CUMULATIVE_FISSION: "(-)",
    Operator.AVERAGING_FISSION: "(avg-)",
}

_TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<operator>\(\s*(?P<avg>avg)?\s*(?P<sign>[+-])\s*\))
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<identifier>[A-Za-z][A-Za-z0-9_]*)
    |(?P<invalid>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_EXPECT_ATOM = frozenset({"identifier", "'('"})
_EXPECT_OPERATOR_OR_END = frozenset({"operator", "end of input"})
_EXPECT_OPERATOR_OR_CLOSE = frozenset({"operator", "')'"})


class Identifier(BaseModel):
    """Reference to a named opinion."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["identifier"] = "identifier"
    name: str = Field(..., description="Opinion identifier")
    span: tuple[int, int] = Field(..., description="Byte offsets of the node in the source")
    grouped: bool = Field(default=False, description="Whether the node was written in parentheses")

    def render(self) -> str:
        """Source form of the node."""
        return self.name


class Binary(BaseModel):
    """Application of one of the four operators."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["binary"] = "binary"
    op: Operator = Field(..., description="Operator applied")
    left: "Expression" = Field(..., description="Left operand, the fused opinion for fission")
    right: "Expression" = Field(..., description="Right operand, the removed contributor for fission")
    span: tuple[int, int] = Field(..., description="Byte offsets of the node in the source")
    grouped: bool = Field(default=False, description="Whether the node was written in parentheses")

    def render(self) -> str:
        """Fully parenthesized source form of the node."""
        return fold(
            self,
            lambda leaf: leaf.name,
            lambda node, left, right: f"({left} {OPERATOR_TOKENS[node.op]} {right})",
        )


Expression = Union[Identifier, Binary]
Binary.model_rebuild()

T = TypeVar("T")


def fold(expr: Expression, leaf: Callable[[Identifier], T], combine: Callable[[Binary, T, T], T]) -> T:
    """Reduce a tree bottom-up, left subtree before right.

    Uses an explicit stack; trees may be thousands of levels deep.
    """
    pending: list[tuple[Expression, bool]] = [(expr, False)]
    values: list[T] = []
    while pending:
        node, expanded = pending.pop()
        if isinstance(node, Identifier):
            values.append(leaf(node))
        elif expanded:
            right = values.pop()
            left = values.pop()
            values.append(combine(node, left, right))
        else:
            pending.extend(((node, True), (node.right, False), (node.left, False)))
    return values[0]


class _Token(NamedTuple):
    kind: str
    text: str
    start: int
    end: int


def _tokenize(src: str) -> Iterator[_Token]:
    """Yield tokens lazily, so that the parser reports the first error in source order."""
    position = 0
    while position < len(src):
        match = _TOKEN_PATTERN.match(src, position)
        if match is None or match.lastgroup is None:
            yield _Token("invalid", src[position], position, position + 1)
            return
        if match.lastgroup != "space":
            yield _Token(match.lastgroup, match.group(), match.start(), match.end())
        position = match.end()
    yield _Token("end", "", len(src), len(src))


def _operator_of(token: _Token) -> Operator:
    averaging = "avg" in token.text
    if "+" in token.text:
        return Operator.AVERAGING_FUSION if averaging else Operator.CUMULATIVE_FUSION
    return Operator.AVERAGING_FISSION if averaging else Operator.CUMULATIVE_FISSION


class _Open(NamedTuple):
    """Partial expression suspended at an opening parenthesis."""

    left: Optional[Expression]
    op: Optional[Operator]
    start: int


class _Parser:
    """Shift-reduce parser over a lazy token stream; open parentheses live on an explicit stack."""

    def __init__(self, src: str) -> None:
        self._src = src
        self._tokens = _tokenize(src)
        self._current = next(self._tokens)

    def _byte(self, char_offset: int) -> int:
        return len(self._src[:char_offset].encode("utf-8"))

    def _advance(self) -> _Token:
        token = self._current
        self._current = next(self._tokens)
        return token

    def _error(self, expected: frozenset[str]) -> ParseError:
        token = self._current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ParseError(self._byte(token.start), expected, found)

    def parse(self) -> Expression:
        opened: list[_Open] = []
        left: Optional[Expression] = None
        op: Optional[Operator] = None
        while True:
            token = self._current
            if token.kind == "lparen":
                self._advance()
                opened.append(_Open(left, op, token.start))
                left, op = None, None
                continue
            if token.kind != "identifier":
                raise self._error(_EXPECT_ATOM)
            self._advance()
            atom: Expression = Identifier(name=token.text, span=(self._byte(token.start), self._byte(token.end)))

            while True:
                node: Expression = atom
                if left is not None and op is not None:
                    node = Binary(op=op, left=left, right=atom, span=(left.span[0], atom.span[1]))
                if self._current.kind == "operator":
                    left, op = node, _operator_of(self._advance())
                    break
                if self._current.kind == "rparen" and opened:
                    closing = self._advance()
                    outer = opened.pop()
                    atom = node.model_copy(
                        update={"grouped": True, "span": (self._byte(outer.start), self._byte(closing.end))}
                    )
                    left, op = outer.left, outer.op
                    continue
                if self._current.kind == "end" and not opened:
                    return node
                raise self._error(_EXPECT_OPERATOR_OR_CLOSE if opened else _EXPECT_OPERATOR_OR_END)


def parse_expression(src: str) -> Expression:
    """Parse an infix fusion/fission expression.

    Raises:
        ParseError: With the byte offset of the first unexpected token and the set of tokens expected there
    """
    expr = _Parser(src).parse()
    logger.debug(f"Expression parsed - source: {src!r}, span: {expr.span}")
    return expr


def association_note(expr: Expression) -> Optional[str]:
    """Explain an unparenthesized operator chain involving averaging fusion, which is not associative."""
    pending: list[Expression] = [expr]
    while pending:
        node = pending.pop()
        if isinstance(node, Identifier):
            continue
        left = node.left
        if isinstance(left, Binary) and not left.grouped and Operator.AVERAGING_FUSION in (node.op, left.op):
            return (
                f"note: averaging fusion is not associative; '{node.render()}' was grouped left to right, "
                "add parentheses to choose another grouping"
            )
        pending.extend((node.right, node.left))
    return None


class EvaluationOptions(BaseModel):
    """Settings that influence expression evaluation."""

    model_config = ConfigDict(frozen=True)

    fusion_weights: DogmaticWeights = Field(default_factory=DogmaticWeights, description="Dogmatic fusion gamma")
    fission_weights: FissionWeights = Field(default_factory=FissionWeights, description="Dogmatic fission gamma_c")
    via_evidence: bool = Field(default=False, description="Evaluate with evidence-space arithmetic")
    prior_weight: float = Field(default=DEFAULT_PRIOR_WEIGHT, gt=0, description="Prior weight for evidence mapping")


class EvaluationResult(BaseModel):
    """Opinion an expression evaluates to, with its expectation."""

    model_config = ConfigDict(frozen=True)

    opinion: MultinomialOpinion = Field(..., description="Resulting opinion")
    expectation: tuple[float, ...] = Field(..., description="Probability expectation per proposition")

    @property
    def owner(self) -> Optional[str]:
        """Composite owner label, e.g. ``A◇B``."""
        return self.opinion.owner


_ORACLE_OPERATIONS = {
    Operator.CUMULATIVE_FUSION: oracle_cumulative_fuse,
    Operator.AVERAGING_FUSION: oracle_averaging_fuse,
    Operator.CUMULATIVE_FISSION: oracle_cumulative_fission,
    Operator.AVERAGING_FISSION: oracle_averaging_fission,
}


def _apply(
    op: Operator, left: MultinomialOpinion, right: MultinomialOpinion, options: EvaluationOptions
) -> MultinomialOpinion:
    if options.via_evidence:
        combined = _ORACLE_OPERATIONS[op](
            to_evidence(left, options.prior_weight), to_evidence(right, options.prior_weight)
        )
        return from_evidence(combined).with_owner(compose_owner(op, left.owner, right.owner))
    if op == Operator.CUMULATIVE_FUSION:
        return cumulative_fuse(left, right, options.fusion_weights)
    if op == Operator.AVERAGING_FUSION:
        return averaging_fuse(left, right, options.fusion_weights)
    if op == Operator.CUMULATIVE_FISSION:
        return cumulative_fission(left, right, options.fission_weights)
    return averaging_fission(left, right, options.fission_weights)


def _lookup(file: OpinionFile, node: Identifier) -> MultinomialOpinion:
    opinion = file.opinions.get(node.name)
    if opinion is None:
        error = UnknownIdentifier(node.name)
        error.span = node.span
        raise error
    return opinion


def _apply_at(
    node: Binary, left: MultinomialOpinion, right: MultinomialOpinion, options: EvaluationOptions
) -> MultinomialOpinion:
    try:
        return _apply(node.op, left, right, options)
    except OpinionError as exc:
        if exc.span is None:
            exc.span = node.span
        raise


def evaluate(expr: Expression, file: OpinionFile, options: Optional[EvaluationOptions] = None) -> EvaluationResult:
    """Evaluate an expression against the opinions of a file, innermost operations first.

    Raises:
        UnknownIdentifier: If the expression names an opinion the file lacks
        OpinionError: Any operator error, with ``span`` set to the failing subexpression
    """
    options = options or EvaluationOptions()
    opinion = fold(
        expr,
        lambda leaf: _lookup(file, leaf),
        lambda node, left, right: _apply_at(node, left, right, options),
    )
    logger.info(
        f"Expression evaluated - span: {expr.span}, via_evidence: {options.via_evidence}, "
        f"uncertainty: {opinion.uncertainty}, owner: {opinion.owner}"
    )
    return EvaluationResult(opinion=opinion, expectation=expectation(opinion))
