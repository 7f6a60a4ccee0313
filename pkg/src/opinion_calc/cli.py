"""Command-line front end for the opinion calculator.

Exit codes: 0 success, 2 parse or validation error, 3 not decomposable, 4 I/O error.
"""

import argparse
import json
import logging
import math
import sys
from typing import Callable, Optional

from pydantic import BaseModel, Field, ValidationError

from .config import CalcConfig
from .errors import EXIT_INVALID, EXIT_IO, EXIT_NOT_DECOMPOSABLE, EXIT_OK, OpinionError
from .expression import EvaluationOptions, EvaluationResult, association_note, evaluate, parse_expression
from .fission import FissionMode, FissionWeights, is_decomposable
from .fusion import DogmaticWeights
from .models import classify, expectation
from .opinion_file import IDENTIFIER_PATTERN, OpinionFile, dump_opinion_file, format_number, load_opinion_file

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"


class ResultDocument(BaseModel):
    """Machine-readable form of an evaluation result, emitted by ``eval --json``."""

    frame: list[str] = Field(..., description="Proposition labels")
    belief: list[float] = Field(..., description="Belief mass per proposition")
    uncertainty: float = Field(..., description="Uncertainty mass")
    base_rate: list[float] = Field(..., description="Base rate per proposition")
    expectation: list[float] = Field(..., description="Probability expectation per proposition")
    owner: Optional[str] = Field(default=None, description="Composite owner label")

    @classmethod
    def from_result(cls, result: EvaluationResult) -> "ResultDocument":
        """Build the document for an evaluation result."""
        opinion = result.opinion
        return cls(
            frame=list(opinion.frame.labels),
            belief=list(opinion.belief),
            uncertainty=opinion.uncertainty,
            base_rate=list(opinion.base_rate),
            expectation=list(result.expectation),
            owner=opinion.owner,
        )

    def to_json(self) -> str:
        """Indented JSON object with every number written to 17 significant digits."""
        fields = [f"  {json.dumps(key)}: {_json_value(value)}" for key, value in self.model_dump().items()]
        return "{\n" + ",\n".join(fields) + "\n}"


def _json_value(value: object) -> str:
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, list):
        return "[" + ", ".join(_json_value(item) for item in value) + "]"
    return json.dumps(value, ensure_ascii=False)


def _numbers(values: tuple[float, ...]) -> str:
    return " ".join(format_number(v) for v in values)


def format_result(result: EvaluationResult) -> str:
    """Human-readable block describing an evaluation result."""
    opinion = result.opinion
    return "\n".join(
        [
            f"owner: {opinion.owner or '-'}",
            f"frame: {' '.join(opinion.frame.labels)}",
            f"belief: {_numbers(opinion.belief)}",
            f"uncertainty: {format_number(opinion.uncertainty)}",
            f"base_rate: {_numbers(opinion.base_rate)}",
            f"expectation: {_numbers(result.expectation)}",
        ]
    )


def _unit_interval(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        msg = f"must be in [0, 1], got {text}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or value < 0.0:
        msg = f"must be non-negative, got {text}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _positive(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or value <= 0.0:
        msg = f"must be positive, got {text}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _identifier(text: str) -> str:
    if not IDENTIFIER_PATTERN.fullmatch(text):
        msg = f"invalid identifier {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return text


def run_eval(args: argparse.Namespace) -> int:
    """Evaluate an expression and print the resulting opinion."""
    file = load_opinion_file(args.file)
    expr = parse_expression(args.expression)

    note = association_note(expr)
    if note:
        print(note, file=sys.stderr)

    options = EvaluationOptions(
        fusion_weights=DogmaticWeights(gamma=args.gamma),
        fission_weights=FissionWeights(gamma_c=args.gamma_c),
        via_evidence=args.via_evidence,
        prior_weight=args.prior_weight,
    )
    result = evaluate(expr, file, options)

    if args.emit_file:
        emitted = OpinionFile(frame=file.frame, base_rate=file.base_rate).with_opinion(args.emit_file, result.opinion)
        print(dump_opinion_file(emitted), end="")
    elif args.json:
        print(ResultDocument.from_result(result).to_json())
    else:
        print(format_result(result))
    return EXIT_OK


def run_check(args: argparse.Namespace) -> int:
    """Report whether one opinion can be removed from another by fission."""
    file = load_opinion_file(args.file)
    fused = file.get(args.fused)
    contributor = file.get(args.contributor)
    mode = FissionMode(args.mode)

    decomposition = is_decomposable(fused, contributor, mode, FissionWeights(gamma_c=args.gamma_c))
    if decomposition.decomposable:
        print(f"decomposable: {args.fused} contains {args.contributor} ({mode.value})")
        return EXIT_OK

    print(decomposition.message)
    return EXIT_NOT_DECOMPOSABLE


def run_validate(args: argparse.Namespace) -> int:
    """Validate an opinion file and list its opinions."""
    file = load_opinion_file(args.file)
    print(f"valid: {len(file.opinions)} opinions over frame ({' '.join(file.frame.labels)})")
    for name, opinion in file.opinions.items():
        print(f"{name}: {classify(opinion).value}, expectation: {_numbers(expectation(opinion))}")
    return EXIT_OK


def build_parser(config: CalcConfig) -> argparse.ArgumentParser:
    """Build the argument parser, taking defaults from configuration."""
    parser = argparse.ArgumentParser(
        prog="opinion-calc", description="Fuse and fission subjective-logic opinions read from an opinion file"
    )
    parser.add_argument(
        "--log-level",
        choices=["debug", "info", "warning", "error", "critical"],
        default=config.log_level.lower(),
        help=f"Logging level (default: {config.log_level.lower()})",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    eval_parser = commands.add_parser("eval", help="Evaluate a fusion/fission expression")
    eval_parser.add_argument("file", help="Opinion file, or - for standard input")
    eval_parser.add_argument("expression", help='Expression such as "(A (+) B) (-) B"')
    output = eval_parser.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", help="Emit a JSON object instead of text")
    output.add_argument(
        "--emit-file", type=_identifier, metavar="NAME", help="Emit the result as an opinion file entry named NAME"
    )
    eval_parser.add_argument(
        "--via-evidence", action="store_true", help="Evaluate with Dirichlet evidence arithmetic instead"
    )
    eval_parser.add_argument(
        "--gamma",
        type=_unit_interval,
        default=config.gamma,
        help=f"Weight of the left operand when fusing two dogmatic opinions (default: {config.gamma})",
    )
    eval_parser.add_argument(
        "--gamma-c",
        type=_non_negative,
        default=config.gamma_c,
        help=f"Weight subtracted in dogmatic fission (default: {config.gamma_c})",
    )
    eval_parser.add_argument(
        "--prior-weight",
        type=_positive,
        default=config.prior_weight,
        help=f"Prior weight W for --via-evidence (default: {config.prior_weight})",
    )
    eval_parser.set_defaults(handler=run_eval)

    check_parser = commands.add_parser("check", help="Check whether fission of B out of C is possible")
    check_parser.add_argument("file", help="Opinion file, or - for standard input")
    check_parser.add_argument("fused", metavar="C", help="Identifier of the fused opinion")
    check_parser.add_argument("contributor", metavar="B", help="Identifier of the contributor to remove")
    check_parser.add_argument(
        "--mode", choices=[m.value for m in FissionMode], required=True, help="Fusion operator that produced C"
    )
    check_parser.add_argument(
        "--gamma-c",
        type=_non_negative,
        default=config.gamma_c,
        help=f"Weight subtracted in dogmatic fission (default: {config.gamma_c})",
    )
    check_parser.set_defaults(handler=run_check)

    validate_parser = commands.add_parser("validate", help="Validate an opinion file")
    validate_parser.add_argument("file", help="Opinion file, or - for standard input")
    validate_parser.set_defaults(handler=run_validate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for the opinion-calc command."""
    try:
        config = CalcConfig.from_env()
    except ValueError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    args = build_parser(config).parse_args(argv)

    logging.basicConfig(level=getattr(logging, args.log_level.upper(), logging.WARNING), format=LOG_FORMAT)
    logger.info(f"Command started - command: {args.command}, file: {args.file}")

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except OpinionError as exc:
        logger.info(f"Command failed - command: {args.command}, exit_code: {exc.exit_code}, error: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, UnicodeDecodeError) as exc:
        logger.info(f"Command failed - command: {args.command}, exit_code: {EXIT_IO}, error: {exc}")
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        logger.info(f"Command failed - command: {args.command}, exit_code: {EXIT_INVALID}, error: {exc}")
        print(f"error: {exc.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
