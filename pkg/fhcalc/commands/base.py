from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

from ..config import DEFAULT_MAXDEG
from ..errors import FieldError
from ..exactla import Field

Status = Literal["pass", "fail"]


@dataclass
class CommandResult:
    status: Status
    result: Dict[str, Any]
    lines: List[str]

    @classmethod
    def of(cls, passed: bool, result: Dict[str, Any], lines: List[str]) -> "CommandResult":
        return cls("pass" if passed else "fail", result, lines)


@dataclass
class Context:
    """Per-invocation state handed to every command."""

    budget: int
    inputs: Dict[str, str] = field(default_factory=dict)

    def record(self, role: str, digest: str) -> None:
        self.inputs[role] = digest


Handler = Callable[[argparse.Namespace, Context], CommandResult]
Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


def arg(*flags: str, **options: Any) -> Argument:
    return flags, options


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Handler
    arguments: Tuple[Argument, ...]


class CommandRouter:
    """Collects command handlers; the CLI includes routers like a web app includes its routes."""

    def __init__(self) -> None:
        self.commands: List[Command] = []

    def command(self, name: str, help: str, arguments: Sequence[Argument] = ()) -> Callable[[Handler], Handler]:
        def register(handler: Handler) -> Handler:
            self.commands.append(Command(name, help, handler, tuple(arguments)))
            return handler

        return register


def parse_field(text: str) -> Field:
    """``Q`` or a prime p."""
    if text.upper() == "Q":
        return Field.rationals()
    try:
        return Field.prime(int(text))
    except (ValueError, FieldError):
        raise argparse.ArgumentTypeError(f"field must be Q or a prime, got {text!r}") from None


def field_option(default: Optional[str] = "Q") -> Argument:
    return arg("--field", type=parse_field, default=parse_field(default or "Q"), help="Q or a prime p (built-ins only)")


def maxdeg_option(default: int = DEFAULT_MAXDEG) -> Argument:
    return arg("--maxdeg", type=int, default=default, help="number of homology degrees to report")
