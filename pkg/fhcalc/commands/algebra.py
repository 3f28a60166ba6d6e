from __future__ import annotations

import argparse

from ..algebra import cocenter, eckmann_hilton_check, eckmann_hilton_scan, polynomial_algebra
from ..bartensor import excision_circle_check
from ..corpus import load_algebra, load_monoid_pair
from ..errors import DegreeRangeError, UsageError
from ..hochschild import (
    circle_action_check,
    connes_report,
    graded_hh_dims,
    hh_dims,
    hkr_report,
    hochschild_complex,
    morita_check,
)
from ..rendering import comparison, dims_table, labelled, verdict
from .base import CommandResult, CommandRouter, Context, arg, field_option, maxdeg_option

router = CommandRouter()

ALGEBRA = arg("--algebra", required=True, help="algebra file or built-in name")


def _algebra(args: argparse.Namespace, context: Context):
    loaded = load_algebra(args.algebra, args.field)
    context.record("algebra", loaded.digest)
    return loaded.value


@router.command("hh", "Hochschild homology dimensions", [ALGEBRA, field_option(), maxdeg_option()])
def hh(args: argparse.Namespace, context: Context) -> CommandResult:
    algebra = _algebra(args, context)
    dims = hh_dims(algebra, args.maxdeg, context.budget)
    return CommandResult.of(True, {"algebra": algebra.name, "hochschild": dims}, [dims_table(dims)])


@router.command(
    "hh-graded",
    "Hochschild homology of k[x1..xm] at one polynomial weight",
    [
        arg("--vars", type=int, required=True),
        arg("--weight", type=int, required=True),
        field_option(),
    ],
)
def hh_graded(args: argparse.Namespace, context: Context) -> CommandResult:
    if args.vars < 1 or args.weight < 0:
        raise DegreeRangeError("need --vars >= 1 and --weight >= 0")
    context.record("algebra", f"builtin:polynomial{args.vars}")
    graded = polynomial_algebra(args.vars, args.weight, args.field)
    dims = graded_hh_dims(graded, args.weight, context.budget)
    return CommandResult.of(
        True, {"variables": args.vars, "weight": args.weight, "hochschild": dims}, [dims_table(dims)]
    )


@router.command("cocenter", "dimension of A/[A,A]", [ALGEBRA, field_option()])
def cocenter_command(args: argparse.Namespace, context: Context) -> CommandResult:
    algebra = _algebra(args, context)
    quotient = cocenter(algebra)
    names = [algebra.basis[k] for k in quotient.representatives]
    return CommandResult.of(
        True,
        {"algebra": algebra.name, "dimension": quotient.dim, "representatives": names},
        [labelled("dimension", quotient.dim), labelled("basis", " ".join(names) or "-")],
    )


@router.command("excision", "Tor over A⊗A^op against Hochschild homology", [ALGEBRA, field_option(), maxdeg_option(3)])
def excision(args: argparse.Namespace, context: Context) -> CommandResult:
    algebra = _algebra(args, context)
    report = excision_circle_check(algebra, args.maxdeg, context.budget)
    lines = comparison("HH", report.hochschild, "Tor", report.tor)
    lines.append(verdict(report.passed))
    return CommandResult.of(report.passed, report.model_dump(), lines)


@router.command(
    "hkr",
    "Hochschild homology of k[x1..xm] against Kähler forms",
    [arg("--vars", type=int, required=True), arg("--weight", type=int, required=True), field_option()],
)
def hkr(args: argparse.Namespace, context: Context) -> CommandResult:
    context.record("algebra", f"builtin:polynomial{args.vars}")
    report = hkr_report(args.vars, args.weight, args.field)
    lines = [
        labelled("HH", dims_table(report.hochschild)),
        labelled("Omega", dims_table(report.kaehler)),
        verdict(report.passed),
    ]
    return CommandResult.of(report.passed, report.model_dump(), lines)


@router.command(
    "connes-check",
    "b^2 = 0, B^2 = 0 and bB + Bb = 0 on the stored range",
    [ALGEBRA, field_option(), maxdeg_option(), arg("--circle-weight", type=int, default=0, help="also compare B with d on k[x] up to this weight")],
)
def connes_check(args: argparse.Namespace, context: Context) -> CommandResult:
    algebra = _algebra(args, context)
    report = connes_report(hochschild_complex(algebra, args.maxdeg, budget=context.budget))
    result = report.model_dump()
    lines = [
        labelled("b^2 = 0", verdict(report.b_squared_zero)),
        labelled("B^2 = 0", verdict(report.B_squared_zero)),
        labelled("bB + Bb = 0", verdict(report.anticommutes)),
    ]
    passed = report.passed
    if args.circle_weight:
        circle = [circle_action_check(w, args.field) for w in range(1, args.circle_weight + 1)]
        result["circle_action"] = [c.model_dump() for c in circle]
        for c in circle:
            lines.append(labelled(f"B = d, w={c.weight}", verdict(c.holds)))
        passed = passed and all(c.holds for c in circle)
    lines.append(verdict(passed))
    return CommandResult.of(passed, result, lines)


@router.command(
    "morita",
    "HH(M_n(A)) against HH(A)",
    [ALGEBRA, field_option(), maxdeg_option(3), arg("--size", type=int, default=2)],
)
def morita(args: argparse.Namespace, context: Context) -> CommandResult:
    algebra = _algebra(args, context)
    report = morita_check(algebra, args.size, args.maxdeg, context.budget)
    lines = comparison("A", report.hochschild, f"M{args.size}(A)", report.matrix_hochschild)
    lines.append(verdict(report.passed))
    return CommandResult.of(report.passed, report.model_dump(), lines)


@router.command(
    "eh-check",
    "Eckmann-Hilton: two interchanging unital operations agree and commute",
    [
        arg("--monoid", help="monoid pair file"),
        arg("--scan", type=int, default=0, help="exhaustive scan over sets of size <= N"),
    ],
)
def eh_check(args: argparse.Namespace, context: Context) -> CommandResult:
    if args.scan:
        context.record("monoid", f"builtin:scan{args.scan}")
        scan = eckmann_hilton_scan(args.scan)
        lines = [
            labelled("monoids", dims_table(scan.monoids_per_size)),
            labelled("pairs", dims_table(scan.interchange_pairs_per_size)),
            labelled("failures", scan.noncommutative_pairs),
            verdict(scan.noncommutative_pairs == 0),
        ]
        return CommandResult.of(scan.noncommutative_pairs == 0, scan.model_dump(), lines)
    if not args.monoid:
        raise UsageError("eh-check needs --monoid or --scan")
    loaded = load_monoid_pair(args.monoid)
    context.record("monoid", loaded.digest)
    pair = loaded.value
    report = eckmann_hilton_check(pair.size, pair.op1, pair.op2, pair.unit)
    lines = [
        labelled("equal", verdict(report.operations_equal)),
        labelled("commutative", verdict(report.commutative)),
        verdict(report.passed),
    ]
    return CommandResult.of(report.passed, report.model_dump(), lines)
