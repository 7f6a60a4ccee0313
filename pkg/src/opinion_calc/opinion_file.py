"""Line-oriented opinion file format.

An opinion file names opinions over one shared frame and base rate::

    # worked fission example
    frame: x not_x
    base_rate: 0.5 0.5
    C: 0.90 0.05 | 0.05
    B: 0.70 0.10 | 0.20

Each opinion line lists the belief masses, a bar, then the uncertainty. ``#`` starts a comment. Numbers are decimal
literals; they are written back with 17 significant digits so a dump parses to the identical binary values.
"""

import logging
import re
import sys
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import OpinionError, OpinionFileError, UnknownIdentifier
from .models import Frame, MultinomialOpinion, check_base_rate, require_compatible, validate_opinion

logger = logging.getLogger(__name__)

IDENTIFIER_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_DECIMAL_PATTERN = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")

STDIN_PATH = "-"


class OpinionFile(BaseModel):
    """Named opinions sharing one frame and base rate."""

    model_config = ConfigDict(frozen=True)

    frame: Frame = Field(..., description="Frame shared by every opinion")
    base_rate: tuple[float, ...] = Field(..., description="Base rate shared by every opinion")
    opinions: dict[str, MultinomialOpinion] = Field(default_factory=dict, description="Opinions by identifier")

    @field_validator("opinions")
    @classmethod
    def _check_identifiers(cls, opinions: dict[str, MultinomialOpinion]) -> dict[str, MultinomialOpinion]:
        for name in opinions:
            if not IDENTIFIER_PATTERN.fullmatch(name):
                msg = f"invalid identifier {name!r}, use letters, digits and underscores starting with a letter"
                raise ValueError(msg)
        return opinions

    @model_validator(mode="after")
    def _check_shared_space(self) -> "OpinionFile":
        check_base_rate(self.frame, self.base_rate)
        reference = MultinomialOpinion(
            frame=self.frame, belief=(0.0,) * self.frame.size, uncertainty=1.0, base_rate=self.base_rate
        )
        for opinion in self.opinions.values():
            require_compatible(reference, opinion)
        return self

    def get(self, name: str) -> MultinomialOpinion:
        """Look up an opinion by identifier.

        Raises:
            UnknownIdentifier: If no opinion has that identifier
        """
        opinion = self.opinions.get(name)
        if opinion is None:
            raise UnknownIdentifier(name)
        return opinion

    def with_opinion(self, name: str, opinion: MultinomialOpinion) -> "OpinionFile":
        """Copy of this file with one more (or one replaced) opinion."""
        return OpinionFile(frame=self.frame, base_rate=self.base_rate, opinions={**self.opinions, name: opinion})


def _parse_numbers(text: str, line_number: int) -> list[float]:
    values = []
    for token in text.split():
        if not _DECIMAL_PATTERN.fullmatch(token):
            raise OpinionFileError(line_number, f"expected a decimal number, found {token!r}")
        values.append(float(token))
    return values


def _parse_lines(lines: list[str]) -> tuple[Frame, list[float], dict[str, MultinomialOpinion]]:
    frame = None
    base_rate = None
    opinions: dict[str, MultinomialOpinion] = {}

    for line_number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, colon, rest = line.partition(":")
        key = key.strip()
        if not colon:
            raise OpinionFileError(line_number, f"expected 'name: value', found {line!r}")

        if key == "frame":
            if frame is not None:
                raise OpinionFileError(line_number, "frame is declared twice")
            try:
                frame = Frame(labels=tuple(rest.split()))
            except ValidationError as exc:
                raise OpinionFileError(line_number, exc.errors()[0]["msg"]) from exc
        elif key == "base_rate":
            if frame is None:
                raise OpinionFileError(line_number, "base_rate must follow the frame line")
            if base_rate is not None:
                raise OpinionFileError(line_number, "base_rate is declared twice")
            base_rate = _parse_numbers(rest, line_number)
            try:
                check_base_rate(frame, base_rate)
            except OpinionError as exc:
                raise OpinionFileError(line_number, f"invalid base_rate: {exc}") from exc
        else:
            if frame is None or base_rate is None:
                raise OpinionFileError(line_number, "opinions must follow the frame and base_rate lines")
            if not IDENTIFIER_PATTERN.fullmatch(key):
                raise OpinionFileError(line_number, f"invalid identifier {key!r}")
            if key in opinions:
                raise OpinionFileError(line_number, f"opinion {key!r} is declared twice")
            belief_text, bar, uncertainty_text = rest.partition("|")
            if not bar:
                raise OpinionFileError(line_number, "expected 'b1 ... bk | u'")
            belief = _parse_numbers(belief_text, line_number)
            uncertainty = _parse_numbers(uncertainty_text, line_number)
            if len(uncertainty) != 1:
                raise OpinionFileError(line_number, f"expected one uncertainty value, found {len(uncertainty)}")
            try:
                opinions[key] = validate_opinion(frame, belief, uncertainty[0], base_rate, owner=key)
            except OpinionError as exc:
                raise OpinionFileError(line_number, f"invalid opinion {key!r}: {exc}") from exc

    if frame is None or base_rate is None:
        raise OpinionFileError(len(lines), "missing frame or base_rate line")
    return frame, base_rate, opinions


def parse_opinion_file(text: str) -> OpinionFile:
    """Parse the text of an opinion file.

    Raises:
        OpinionFileError: If a line is malformed or an opinion fails validation
    """
    try:
        frame, base_rate, opinions = _parse_lines(text.splitlines())
    except OpinionFileError as exc:
        logger.info(f"Opinion file rejected - line: {exc.line}, reason: {exc}")
        raise

    logger.info(f"Opinion file parsed - frame: {list(frame.labels)}, opinions: {len(opinions)}")
    return OpinionFile(frame=frame, base_rate=tuple(base_rate), opinions=opinions)


def load_opinion_file(path: str) -> OpinionFile:
    """Read and parse an opinion file, ``-`` meaning standard input.

    Raises:
        OSError: If the file cannot be read
        UnicodeDecodeError: If the file is not UTF-8
        OpinionFileError: If the content is malformed
    """
    if path == STDIN_PATH:
        text = sys.stdin.read()
    else:
        text = Path(path).read_text(encoding="utf-8")
    logger.debug(f"Opinion file read - path: {path}, characters: {len(text)}")
    return parse_opinion_file(text)


def format_number(value: float) -> str:
    """Decimal literal with 17 significant digits, enough to reproduce any binary float."""
    return format(value, ".17g")


def dump_opinion_file(file: OpinionFile) -> str:
    """Serialize an opinion file in the format read by ``parse_opinion_file``."""
    lines = [
        f"frame: {' '.join(file.frame.labels)}",
        f"base_rate: {' '.join(format_number(a) for a in file.base_rate)}",
    ]
    for name, opinion in file.opinions.items():
        belief = " ".join(format_number(b) for b in opinion.belief)
        lines.append(f"{name}: {belief} | {format_number(opinion.uncertainty)}")
    return "\n".join(lines) + "\n"
