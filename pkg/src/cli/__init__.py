"""Command-line entry point and job runner."""
from .jobs import HANDLERS, SUBCOMMANDS, JobSpec, dispatch, parse_family, parse_module
from .lemmas import verify_lemmas
from .main import build_parser, main, run

__all__ = [
    "HANDLERS",
    "SUBCOMMANDS",
    "JobSpec",
    "build_parser",
    "dispatch",
    "main",
    "parse_family",
    "parse_module",
    "run",
    "verify_lemmas",
]
