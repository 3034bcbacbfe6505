"""
mackeykit command line.

Usage:
    mackeykit burnside --group C2
    mackeykit tate generalized --group S3 --family proper --window=-3..3
    mackeykit verify-lemmas --group C4 --format text

Exit codes: 0 on success, 1 on invalid input or a failed check, 2 when an
enumeration exceeds the budget. Errors are printed as JSON on stdout.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError
from rich.console import Console

from src.cli.jobs import JobSpec, dispatch
from src.cli.render import render_text, to_json
from src.errors import BudgetExceeded, MackeyKitError
from src.log import configure_logging
from src.report import Report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2


def _window(text: str) -> Tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Window must look like -3..3, got {text!r}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="C2", help="Builtin group (C2, S3, D4, …) or a JSON group file")
    common.add_argument("--budget", type=int, help="Enumeration budget (default: MACKEYKIT_BUDGET or config)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", type=Path, help="Write the result to this file")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")

    truncation = argparse.ArgumentParser(add_help=False)
    truncation.add_argument("--d-bar", dest="d_bar", type=int, help="Bar truncation degree")
    truncation.add_argument("--n-max", dest="n_max", type=int, help="Chain-length truncation")

    module = argparse.ArgumentParser(add_help=False)
    module.add_argument("--module", default="trivial", help="trivial, regular or coset:<class index>")

    parser = argparse.ArgumentParser(
        prog="mackeykit",
        description="Exact computations with Mackey functors, bar complexes, Tate cohomology and Bredon chains.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    subparsers.add_parser("group", parents=[common], help="Order and subgroup classes")
    subparsers.add_parser("burnside", parents=[common], help="Burnside ring multiplication table")
    subparsers.add_parser("spans", parents=[common], help="Ranks of span hom groups")
    subparsers.add_parser("mackey-check", parents=[common, module], help="Validate a fixed-point Mackey functor")
    subparsers.add_parser("cathom", parents=[common, truncation, module], help="Group (co)homology via bar complexes")
    subparsers.add_parser("derived-burnside", parents=[common, truncation], help="Homology of the orbit groupoid")

    tate = subparsers.add_parser("tate", parents=[common, module], help="Classical or family Tate cohomology")
    tate.add_argument("method", choices=["classical", "generalized"])
    tate.add_argument("--family", default="proper", help="proper, trivial or subgroup class indices like 0,1")
    tate.add_argument("--window", type=_window, help="Degree window lo..hi (write --window=-3..3)")
    tate.add_argument("--schedule", type=_int_list, help="Filtration stages, e.g. 2,4")

    tcomplex = subparsers.add_parser("tcomplex", parents=[common, truncation], help="T(f) and its adaptedness")
    tcomplex.add_argument("--morphism", type=_int_list, help="Morphism i,j,k (default: G/e → G/G)")

    phi = subparsers.add_parser("phi", parents=[common, truncation], help="Fixed-point complex at an orbit")
    phi.add_argument("--orbit", type=int, help="Object index (default: G/G)")
    phi.add_argument("--coefficients", choices=["inflation", "constant", "supported"], default="inflation")

    bredon = subparsers.add_parser("bredon", parents=[common], help="Bredon chains of a representation sphere")
    bredon.add_argument("--representation", default="sign", help="Summands joined by +, e.g. trivial^2+sign")

    subparsers.add_parser("verify-lemmas", parents=[common], help="Run the regression suite for a group")
    return parser


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    """
    Raises:
        ValidationError: If the options violate a JobSpec constraint
    """
    fields = {k: v for k, v in vars(args).items() if v is not None and k != "verbose"}
    if "morphism" in fields:
        fields["morphism"] = tuple(fields["morphism"])
    return JobSpec(**fields)


def _failed(result: Dict[str, Any]) -> bool:
    return any(isinstance(v, Report) and not v.passed for v in result.values())


def _emit_error(payload: Dict[str, Any]) -> None:
    print(json.dumps({"error": payload}, sort_keys=True, ensure_ascii=False))


def write_result(spec: JobSpec, result: Dict[str, Any]) -> None:
    if spec.format == "json":
        text = to_json(result)
        if spec.output is not None:
            spec.output.parent.mkdir(parents=True, exist_ok=True)
            spec.output.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return
    if spec.output is not None:
        spec.output.parent.mkdir(parents=True, exist_ok=True)
        with open(spec.output, "w", encoding="utf-8") as f:
            render_text(result, Console(file=f, width=120, color_system=None))
    else:
        render_text(result, Console())


def run(spec: JobSpec) -> int:
    """
    Run one job and write its result.

    Returns:
        0 on success, 1 on invalid input or a failed check, 2 if a budget
        was exceeded
    """
    try:
        result = dispatch(spec)
    except BudgetExceeded as e:
        logger.error(e.message)
        _emit_error(e.to_dict())
        return EXIT_BUDGET
    except MackeyKitError as e:
        logger.error(e.message)
        _emit_error(e.to_dict())
        return EXIT_INVALID
    except (FileNotFoundError, ValueError) as e:
        logger.error(str(e))
        _emit_error({"error": type(e).__name__, "message": str(e), "details": {}})
        return EXIT_INVALID
    write_result(spec, result)
    return EXIT_INVALID if _failed(result) else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(level="DEBUG" if args.verbose else None)
    try:
        spec = spec_from_args(args)
    except ValidationError as e:
        _emit_error({
            "error": "InvalidInput",
            "message": "Invalid job specification",
            "details": {"errors": [err["msg"] for err in e.errors()]},
        })
        return EXIT_INVALID
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
