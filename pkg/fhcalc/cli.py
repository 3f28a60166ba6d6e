from __future__ import annotations

import argparse
import sys
from typing import Iterable, Optional, Sequence

from .commands import algebra_router, simplicial_router, tft_router
from .commands.base import CommandRouter, Context
from .config import APP_NAME, get_budget
from .errors import FhcalcError
from .logging_config import logger
from .models import CommandReport
from .rendering import header_lines

ROUTERS: Sequence[CommandRouter] = (algebra_router, simplicial_router, tft_router)


def build_parser(routers: Iterable[CommandRouter] = ROUTERS) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description="Exact computations around factorization homology in low dimensions",
    )
    parser.add_argument("--json", action="store_true", help="print a single JSON report")
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="cap on basis elements per complex (default: FHCALC_BUDGET or 200000)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for router in routers:
        for command in router.commands:
            sub = subparsers.add_parser(command.name, help=command.help)
            for flags, options in command.arguments:
                sub.add_argument(*flags, **options)
            sub.set_defaults(handler=command.handler)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Run one command; returns 0 (pass), 1 (check failed) or 2 (input error)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except FhcalcError as exc:
        print(f"error: {exc.detail}", file=stderr)
        return exc.exit_code

    if args.budget is not None and args.budget <= 0:
        print("error: --budget must be positive", file=stderr)
        return 2
    context = Context(budget=args.budget or get_budget())
    try:
        outcome = args.handler(args, context)
    except FhcalcError as exc:
        logger.warning("%s failed: %s", args.command, exc.detail)
        print(f"error: {exc.detail}", file=stderr)
        return exc.exit_code

    if args.json:
        report = CommandReport(
            command=argv,
            inputs=context.inputs,
            status=outcome.status,
            result=outcome.result,
        )
        print(report.model_dump_json(indent=2), file=stdout)
    else:
        for line in header_lines(argv, context.inputs) + outcome.lines:
            print(line, file=stdout)
    logger.info("%s finished", args.command, extra={"status": outcome.status, "inputs": context.inputs})
    return 0 if outcome.status == "pass" else 1


def cli_main() -> None:
    sys.exit(run())
