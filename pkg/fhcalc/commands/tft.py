from __future__ import annotations

import argparse
import random

from ..corpus import load_cobordism
from ..errors import UsageError
from ..exactla import ExactMatrix, random_invertible
from ..rendering import labelled, matrix_lines, verdict
from ..tft1 import (
    DualityDatum,
    canonical_duality,
    duality_check,
    dual_snake,
    evaluate,
    full_dualizable_vect,
    twisted_duality,
    zorro_snake,
)
from .base import CommandResult, CommandRouter, Context, arg, field_option

router = CommandRouter()


def _eval(args: argparse.Namespace, context: Context) -> CommandResult:
    if not args.cobordism:
        raise UsageError("tft eval needs --cobordism")
    loaded = load_cobordism(args.cobordism)
    context.record("cobordism", loaded.digest)
    X = loaded.value
    matrix = evaluate(args.dim, X, field=args.field)
    result = {
        "source": "".join(X.source),
        "target": "".join(X.target),
        "circles": X.circles,
        "matrix": matrix.render(),
    }
    lines = [labelled("shape", f"{matrix.nrows}x{matrix.ncols}")] + matrix_lines(matrix.render())
    return CommandResult.of(True, result, lines)


def _zorro(args: argparse.Namespace, context: Context) -> CommandResult:
    context.record("cobordism", "builtin:zorro")
    results = {}
    lines = []
    passed = True
    for name, snake in (("zorro", zorro_snake()), ("dual_snake", dual_snake())):
        matrix = evaluate(args.dim, snake, field=args.field)
        ok = matrix == ExactMatrix.identity(matrix.field, args.dim)
        passed = passed and ok
        results[name] = {"matrix": matrix.render(), "identity": ok}
        lines.append(labelled(name, verdict(ok)))
        lines.extend(matrix_lines(matrix.render()))
    lines.append(verdict(passed))
    return CommandResult.of(passed, results, lines)


def _dual(args: argparse.Namespace, context: Context) -> CommandResult:
    if args.infinite:
        context.record("space", "builtin:infinite")
        verdict_ = full_dualizable_vect(None)
        return CommandResult.of(
            verdict_.dualizable, verdict_.model_dump(), [labelled("dualizable", verdict(False)), verdict_.note]
        )
    context.record("space", f"builtin:k^{args.dim}")
    if args.twist_seed is not None:
        g = random_invertible(args.field, args.dim, random.Random(args.twist_seed))
        report = duality_check(twisted_duality(args.dim, g))
        lines = [labelled("twisted", verdict(report.passed))]
        lines.extend(matrix_lines(report.left_residual))
        lines.extend(matrix_lines(report.right_residual))
        return CommandResult.of(report.passed, report.model_dump(), lines)
    if args.zero:
        datum = canonical_duality(args.dim, args.field)
        zero = ExactMatrix.zeros(args.field, datum.coevaluation.nrows, 1)
        report = duality_check(DualityDatum(args.dim, args.dim, zero, datum.evaluation))
        lines = [labelled("u = 0", verdict(report.passed))] + matrix_lines(report.left_residual)
        return CommandResult.of(report.passed, report.model_dump(), lines)
    result = full_dualizable_vect(args.dim, args.field)
    lines = [labelled("dualizable", verdict(result.dualizable)), labelled("coevaluation", "")]
    lines.extend(matrix_lines(result.coevaluation))
    lines.append(labelled("evaluation", ""))
    lines.extend(matrix_lines(result.evaluation))
    return CommandResult.of(result.dualizable, result.model_dump(), lines)


ACTIONS = {"eval": _eval, "zorro": _zorro, "dual": _dual}


@router.command(
    "tft",
    "1-dimensional TFT: evaluate cobordisms, snake identities, dualizability",
    [
        arg("action", choices=sorted(ACTIONS)),
        arg("--dim", type=int, default=2, help="dimension n of V = k^n"),
        arg("--cobordism", help="cobordism file or built-in (eval)"),
        arg("--infinite", action="store_true", help="ask about an infinite-dimensional space (dual)"),
        arg("--twist-seed", type=int, default=None, help="check a randomly twisted duality pair (dual)"),
        arg("--zero", action="store_true", help="check the pair with u = 0 (dual)"),
        field_option(),
    ],
)
def tft(args: argparse.Namespace, context: Context) -> CommandResult:
    if args.dim < 0:
        raise UsageError("--dim must be non-negative")
    return ACTIONS[args.action](args, context)
