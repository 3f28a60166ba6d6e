from __future__ import annotations

import argparse

from ..config import DEFAULT_LEVEL
from ..corpus import load_algebra, load_category, load_simplicial_set
from ..errors import UsageError
from ..exactla import homology_dims
from ..rendering import comparison, dims_table, horn_lines, labelled, verdict
from ..simplicial import (
    SimplicialSet,
    euler_characteristic,
    kan_report,
    loday,
    nerve,
    normalized_chains,
    torus_check,
)
from .base import CommandResult, CommandRouter, Context, arg, field_option, maxdeg_option

router = CommandRouter()

LEVEL = arg("--level", type=int, default=DEFAULT_LEVEL, help="truncation level for built-ins and nerves")


def _space(args: argparse.Namespace, context: Context, level: int) -> SimplicialSet:
    if bool(getattr(args, "sset", None)) == bool(getattr(args, "category", None)):
        raise UsageError("give exactly one of --sset or --category")
    if args.category:
        loaded = load_category(args.category)
        context.record("category", loaded.digest)
        return nerve(loaded.value, level)
    loaded = load_simplicial_set(args.sset, level)
    context.record("sset", loaded.digest)
    return loaded.value


@router.command(
    "kan",
    "horn filler counts",
    [
        arg("--sset", help="simplicial set file or built-in"),
        arg("--category", help="use the nerve of this category"),
        LEVEL,
        arg("--inner", action="store_true", help="inner horns only"),
        arg("--unique", action="store_true", help="also require exactly one filler per horn"),
    ],
)
def kan(args: argparse.Namespace, context: Context) -> CommandResult:
    X = _space(args, context, args.level)
    reports = kan_report(X, inner_only=args.inner)
    passed = all(r.all_fillable for r in reports)
    if args.unique:
        passed = passed and all(r.unique_fillers for r in reports)
    lines = horn_lines(reports) + [verdict(passed)]
    return CommandResult.of(passed, {"space": X.name, "horns": [r.model_dump() for r in reports]}, lines)


@router.command("nerve", "level sizes of the nerve of a category", [arg("--category", required=True), LEVEL])
def nerve_command(args: argparse.Namespace, context: Context) -> CommandResult:
    loaded = load_category(args.category)
    context.record("category", loaded.digest)
    X = nerve(loaded.value, args.level)
    sizes = dict(enumerate(X.sizes()))
    nondegenerate = dict(enumerate(X.nondegenerate_counts()))
    lines = [labelled("elements", dims_table(sizes)), labelled("nondegenerate", dims_table(nondegenerate))]
    return CommandResult.of(
        True, {"space": X.name, "sizes": sizes, "nondegenerate": nondegenerate, "dimension": X.dimension}, lines
    )


@router.command(
    "chains",
    "homology of normalized chains",
    [arg("--sset"), arg("--category"), LEVEL, field_option()],
)
def chains(args: argparse.Namespace, context: Context) -> CommandResult:
    X = _space(args, context, args.level)
    complex_ = normalized_chains(X, args.field)
    dims = homology_dims(complex_)
    lines = [dims_table(dims), labelled("euler", euler_characteristic(X))]
    if complex_.truncated:
        lines.append(labelled("truncated", f"degrees above {complex_.hi} not stored"))
    return CommandResult.of(
        True,
        {"space": X.name, "homology": dims, "euler": euler_characteristic(X), "truncated": complex_.truncated},
        lines,
    )


@router.command(
    "loday",
    "higher Hochschild homology of a commutative algebra over a simplicial set",
    [arg("--algebra", required=True), arg("--sset", required=True), field_option(), maxdeg_option(3)],
)
def loday_command(args: argparse.Namespace, context: Context) -> CommandResult:
    algebra = load_algebra(args.algebra, args.field)
    context.record("algebra", algebra.digest)
    space = load_simplicial_set(args.sset, args.maxdeg)
    context.record("sset", space.digest)
    complex_ = loday(algebra.value, space.value, args.maxdeg, context.budget)
    dims = homology_dims(complex_, range(args.maxdeg))
    return CommandResult.of(
        True,
        {"algebra": algebra.value.name, "space": space.value.name, "homology": dims, "chain_dims": dict(complex_.dims)},
        [dims_table(dims)],
    )


@router.command(
    "torus",
    "Loday homology over the torus, next to Hochschild homology",
    [arg("--algebra", required=True), field_option(), maxdeg_option(2)],
)
def torus_command(args: argparse.Namespace, context: Context) -> CommandResult:
    loaded = load_algebra(args.algebra, args.field)
    context.record("algebra", loaded.digest)
    report = torus_check(loaded.value, args.maxdeg, context.budget)
    lines = comparison("T2", report.torus, "S1", report.hochschild)
    lines.append(labelled("coequalizer", report.coequalizer))
    lines.append(verdict(report.passed))
    return CommandResult.of(report.passed, report.model_dump(), lines)
