from __future__ import annotations

from typing import Iterable, List, Mapping, Optional, Sequence

from .models import HornReport


def header_lines(argv: Sequence[str], inputs: Mapping[str, str]) -> List[str]:
    """``#``-prefixed command echo and one line per input digest, in role order."""
    lines = ["# command: " + " ".join(argv)]
    lines.extend(f"# {role}: {digest}" for role, digest in sorted(inputs.items()))
    return lines


def dims_table(dims: Mapping[int, int]) -> str:
    """Degree-ordered ``0:2 1:1 ...``."""
    return " ".join(f"{n}:{d}" for n, d in sorted(dims.items()))


def verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def labelled(label: str, value: object, width: int = 12) -> str:
    return f"{label:<{width}} {value}"


def matrix_lines(rendered: Optional[Sequence[Sequence[str]]], indent: str = "  ") -> List[str]:
    if rendered is None:
        return []
    if not rendered or not rendered[0]:
        return [f"{indent}({len(rendered)}x0 matrix)" if rendered else f"{indent}(0x0 matrix)"]
    width = max(len(entry) for row in rendered for entry in row)
    return [indent + "[" + " ".join(entry.rjust(width) for entry in row) + "]" for row in rendered]


def comparison(first: str, left: Mapping[int, int], second: str, right: Mapping[int, int]) -> List[str]:
    """Aligned two-column table of dimensions, one degree per line."""
    width = max(len(first), len(second), 3)
    lines = [f"{'n':>3}  {first:>{width}}  {second:>{width}}"]
    for n in sorted(set(left) | set(right)):
        a = left.get(n, "-")
        b = right.get(n, "-")
        lines.append(f"{n:>3}  {a:>{width}}  {b:>{width}}")
    return lines


def horn_lines(reports: Iterable[HornReport]) -> List[str]:
    lines = []
    for report in reports:
        fillers = "-" if report.horns == 0 else f"{report.min_fillers}..{report.max_fillers}"
        lines.append(
            f"horn {report.n},{report.k}: {report.fillable}/{report.horns} fillable, fillers {fillers}"
        )
    return lines
