# Main entry point for the command-line tool
from __future__ import annotations

import argparse
import glob
import importlib
import os
import sys
from typing import Sequence

from loguru import logger

from schemas import dumps, error_object, loads
from utils.errors import DomainError, InputError, LoewyError
from utils.logging_config import setup_logging

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2

COMMANDS_DIRECTORY = os.path.join(os.path.dirname(os.path.abspath(__file__)), "commands")


class CommandParser(argparse.ArgumentParser):
    """Argument errors become InputError so they map to exit code 1."""

    def error(self, message):
        raise InputError(message)


def discover_commands(directory_path: str = COMMANDS_DIRECTORY, module_prefix: str = "commands") -> list[str]:
    """
    Dynamically discovers the subcommand modules in a given directory.
    Every non-package Python file directly inside the directory is one subcommand.
    """
    command_files = glob.glob(os.path.join(directory_path, "*.py"))
    discovered = []
    for f_path in sorted(command_files):
        file_name = os.path.basename(f_path)
        if file_name.startswith("__init__"):
            continue
        module_name = os.path.splitext(file_name)[0]
        discovered.append(f"{module_prefix}.{module_name}")
    return discovered


def build_parser() -> CommandParser:
    parser = CommandParser(prog="loewyfact", description="Loewy-factorizable nonlinear ODE toolkit")
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of compact JSON")
    parser.add_argument("--batch", action="store_true", help="one JSON input per line, one JSON output per line")
    parser.add_argument("--log-level", default=None, help="stderr log level (default from LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)
    for module_path in discover_commands():
        module = importlib.import_module(module_path)
        module.register(subparsers)
        logger.debug(f"Registered subcommand from {module_path}")
    return parser


def read_source(source: str) -> str:
    """Inline JSON, a file path, or - for stdin."""
    if source == "-":
        return sys.stdin.read()
    if source.lstrip().startswith(("{", "[")):
        return source
    try:
        with open(source, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}")


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    return EXIT_INPUT


def _format(result: dict, args) -> str:
    if not args.pretty:
        return dumps(result)
    render = getattr(args, "render", None)
    if render is not None:
        return render(result)
    table = result.get("table")
    body = dumps({k: v for k, v in result.items() if k != "table"}, pretty=True)
    return body if table is None else f"{body}\n{table}"


def _run_one(args, text: str) -> tuple[int, str]:
    try:
        payload = loads(text)
        result = args.handler(args, payload)
    except LoewyError as exc:
        kind = type(exc).__name__
        logger.warning(f"{args.command} failed with {kind}: {exc}")
        return exit_code_for(exc), dumps(error_object(kind, str(exc)))
    return EXIT_OK, _format(result, args)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(dumps(error_object("InputError", str(exc))))
        return EXIT_INPUT
    setup_logging(args.log_level)
    try:
        text = read_source(args.source)
    except InputError as exc:
        print(dumps(error_object("InputError", str(exc))))
        return EXIT_INPUT
    if not args.batch:
        code, output = _run_one(args, text)
        print(output)
        return code
    worst = EXIT_OK
    for line in text.splitlines():
        if not line.strip():
            continue
        code, output = _run_one(args, line)
        print(output)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
