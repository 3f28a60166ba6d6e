from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence


class FhcalcError(Exception):
    """Base error; `detail` is shown to the user, `exit_code` goes to the shell."""

    exit_code = 2

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class InputFormatError(FhcalcError):
    def __init__(
        self,
        detail: str,
        line: int,
        column: int = 1,
        path: Optional[Path | str] = None,
    ) -> None:
        self.line = line
        self.column = column
        self.path = str(path) if path is not None else "<input>"
        super().__init__(f"{self.path}:{line}:{column}: {detail}")


class FieldError(FhcalcError):
    pass


class FieldMismatchError(FieldError):
    pass


class ShapeMismatchError(FhcalcError):
    pass


class DegreeRangeError(FhcalcError):
    pass


class BudgetExceededError(FhcalcError):
    pass


class CutoffExceededError(FhcalcError):
    pass


class LevelMismatchError(FhcalcError):
    pass


class InterfaceMismatchError(FhcalcError):
    pass


class AlgebraError(FhcalcError):
    pass


class NonCommutativeError(AlgebraError):
    pass


class ModuleError(FhcalcError):
    pass


class CategoryError(FhcalcError):
    pass


class SimplicialError(FhcalcError):
    pass


class UnitMismatchError(FhcalcError):
    pass


class InterchangeViolation(FhcalcError):
    def __init__(self, witness: Sequence[int]) -> None:
        self.witness = tuple(witness)
        super().__init__(
            f"interchange law fails at (a, b, c, d) = {self.witness}: "
            f"(a*b)o(c*d) != (aoc)*(bod)"
        )


class ConsistencyError(FhcalcError):
    """A mathematical identity that must hold did not; input corrupt or a bug."""

    exit_code = 1


class UnknownInputError(FhcalcError):
    pass


class UsageError(FhcalcError):
    pass


def check_budget(what: str, size: int, budget: int) -> None:
    if size > budget:
        raise BudgetExceededError(
            f"{what} needs {size} basis elements, over the budget of {budget} "
            f"(raise it with --budget or FHCALC_BUDGET)"
        )
