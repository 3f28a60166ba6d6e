"""Oriented 1-dimensional cobordisms and their evaluation in vector spaces.

A cobordism W0 -> W1 is stored up to isotopy: a perfect matching of the
endpoints ("s", i) of W0 and ("t", j) of W1 plus a number of closed circles.
Composition reads right to left, so ``compose(X, Y)`` glues the target of Y
to the source of X.

The point ``+`` is sent to V = k^n and ``-`` to its dual; tensor products of
points are indexed left factor major, matching ``ExactMatrix.kron``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InterfaceMismatchError, ShapeMismatchError
from .exactla import ExactMatrix, Field, Scalar, Vector, inverse
from .logging_config import logger
from .models import DualityReport, DualizabilityVerdict

SignedPoints = Tuple[str, ...]
Endpoint = Tuple[str, int]
Arc = Tuple[Endpoint, Endpoint]

SIGNS = ("+", "-")

INFINITE_OBSTRUCTION = (
    "an infinite-dimensional space has no coevaluation: the element sum_i e_i (x) e_i* "
    "would need infinitely many terms, while every element of V (x) V* is a finite sum, "
    "so no pair (u, e) satisfies the snake identity and V is not dualizable"
)


def signed_points(text: Iterable[str]) -> SignedPoints:
    points = tuple(text)
    for sign in points:
        if sign not in SIGNS:
            raise ShapeMismatchError(f"point sign must be + or -, got {sign!r}")
    return points


def _flip(sign: str) -> str:
    return "-" if sign == "+" else "+"


@dataclass(frozen=True)
class Cobordism1:
    source: SignedPoints
    target: SignedPoints
    arcs: Tuple[Arc, ...]
    circles: int = 0

    def __post_init__(self) -> None:
        signed_points(self.source)
        signed_points(self.target)
        if self.circles < 0:
            raise ShapeMismatchError("circle count must be non-negative")
        seen: Dict[Endpoint, int] = {}
        for arc in self.arcs:
            if arc[0] == arc[1]:
                raise ShapeMismatchError(f"arc {arc} joins a point to itself")
            for end in arc:
                self._effective_sign(end)
                seen[end] = seen.get(end, 0) + 1
        expected = {("s", i) for i in range(len(self.source))} | {("t", j) for j in range(len(self.target))}
        if set(seen) != expected or any(count != 1 for count in seen.values()):
            raise ShapeMismatchError("arcs must match every boundary point exactly once")
        for a, b in self.arcs:
            if self._effective_sign(a) == self._effective_sign(b):
                raise ShapeMismatchError(f"arc {a}-{b} does not respect orientations")

    def _effective_sign(self, end: Endpoint) -> str:
        side, index = end
        points = self.source if side == "s" else self.target
        if side not in ("s", "t") or not 0 <= index < len(points):
            raise ShapeMismatchError(f"no boundary point {side}{index}")
        return points[index] if side == "s" else _flip(points[index])

    def sign(self, end: Endpoint) -> str:
        side, index = end
        return self.source[index] if side == "s" else self.target[index]

    @classmethod
    def build(cls, source: Iterable[str], target: Iterable[str], arcs: Iterable[Arc], circles: int = 0) -> "Cobordism1":
        normalized = tuple(sorted(tuple(sorted(arc)) for arc in arcs))
        return cls(signed_points(source), signed_points(target), normalized, circles)

    @property
    def is_closed(self) -> bool:
        return not self.source and not self.target


def identity(points: Iterable[str]) -> Cobordism1:
    points = signed_points(points)
    return Cobordism1.build(points, points, [(("s", i), ("t", i)) for i in range(len(points))])


def horseshoe() -> Cobordism1:
    """u: empty -> (+, -)."""
    return Cobordism1.build((), ("+", "-"), [(("t", 0), ("t", 1))])


def cohorseshoe() -> Cobordism1:
    """e: (-, +) -> empty."""
    return Cobordism1.build(("-", "+"), (), [(("s", 0), ("s", 1))])


def circle(count: int = 1) -> Cobordism1:
    return Cobordism1.build((), (), [], count)


def _shift(end: Endpoint, source_offset: int, target_offset: int) -> Endpoint:
    side, index = end
    return side, index + (source_offset if side == "s" else target_offset)


def disjoint_union(left: Cobordism1, right: Cobordism1) -> Cobordism1:
    """Left points first in both source and target."""
    ds, dt = len(left.source), len(left.target)
    arcs = list(left.arcs) + [(_shift(a, ds, dt), _shift(b, ds, dt)) for a, b in right.arcs]
    return Cobordism1.build(
        left.source + right.source, left.target + right.target, arcs, left.circles + right.circles
    )


def compose(outer: Cobordism1, inner: Cobordism1) -> Cobordism1:
    """outer o inner: glue ``inner.target`` to ``outer.source``; closed loops become circles."""
    if outer.source != inner.target:
        raise InterfaceMismatchError(
            f"cannot glue target {''.join(inner.target) or '()'} to source {''.join(outer.source) or '()'}"
        )
    # inner points: ("s", i) outer-boundary, ("t", j) -> middle ("m", j); outer: ("s", j) -> middle, ("t", k) boundary
    def inner_node(end: Endpoint) -> Tuple[str, int]:
        return ("S", end[1]) if end[0] == "s" else ("m", end[1])

    def outer_node(end: Endpoint) -> Tuple[str, int]:
        return ("m", end[1]) if end[0] == "s" else ("T", end[1])

    inner_edge: Dict[Tuple[str, int], Tuple[str, int]] = {}
    for a, b in inner.arcs:
        inner_edge[inner_node(a)] = inner_node(b)
        inner_edge[inner_node(b)] = inner_node(a)
    outer_edge: Dict[Tuple[str, int], Tuple[str, int]] = {}
    for a, b in outer.arcs:
        outer_edge[outer_node(a)] = outer_node(b)
        outer_edge[outer_node(b)] = outer_node(a)

    visited_middle = set()
    arcs: List[Arc] = []
    boundary = [("S", i) for i in range(len(inner.source))] + [("T", j) for j in range(len(outer.target))]
    done = set()
    for start in boundary:
        if start in done:
            continue
        use_inner = start[0] == "S"
        node = start
        while True:
            node = (inner_edge if use_inner else outer_edge)[node]
            if node[0] != "m":
                break
            visited_middle.add(node)
            use_inner = not use_inner
        done.update((start, node))
        arcs.append((_as_endpoint(start), _as_endpoint(node)))

    loops = 0
    for j in range(len(outer.source)):
        node = ("m", j)
        if node in visited_middle:
            continue
        loops += 1
        use_inner = True
        while node not in visited_middle:
            visited_middle.add(node)
            node = (inner_edge if use_inner else outer_edge)[node]
            use_inner = not use_inner
    return Cobordism1.build(inner.source, outer.target, arcs, outer.circles + inner.circles + loops)


def _as_endpoint(node: Tuple[str, int]) -> Endpoint:
    return ("s" if node[0] == "S" else "t"), node[1]


def compose_all(pieces: Sequence[Cobordism1]) -> Cobordism1:
    """pieces[0] o pieces[1] o ... o pieces[-1]."""
    result = pieces[-1]
    for piece in reversed(pieces[:-1]):
        result = compose(piece, result)
    return result


def zorro_factors() -> Tuple[Cobordism1, Cobordism1]:
    """(id_+ ⊔ e, u ⊔ id_+), read right to left."""
    return disjoint_union(identity("+"), cohorseshoe()), disjoint_union(horseshoe(), identity("+"))


def dual_snake_factors() -> Tuple[Cobordism1, Cobordism1]:
    """(e ⊔ id_-, id_- ⊔ u), read right to left."""
    return disjoint_union(cohorseshoe(), identity("-")), disjoint_union(identity("-"), horseshoe())


def zorro_snake() -> Cobordism1:
    return compose_all(zorro_factors())


def dual_snake() -> Cobordism1:
    return compose_all(dual_snake_factors())


# --- duality data ---------------------------------------------------------------


@dataclass(frozen=True)
class DualityDatum:
    """u: k -> V (x) V_L as a column, e: V_L (x) V -> k as a row."""

    dimension: int
    dual_dimension: int
    coevaluation: ExactMatrix
    evaluation: ExactMatrix

    def __post_init__(self) -> None:
        n, m = self.dimension, self.dual_dimension
        if n < 0 or m < 0:
            raise ShapeMismatchError("dimensions must be non-negative")
        if self.coevaluation.shape != (n * m, 1):
            raise ShapeMismatchError(f"coevaluation must be {n * m}x1, got {self.coevaluation.shape}")
        if self.evaluation.shape != (1, m * n):
            raise ShapeMismatchError(f"evaluation must be 1x{m * n}, got {self.evaluation.shape}")
        if self.coevaluation.field != self.evaluation.field:
            raise ShapeMismatchError("coevaluation and evaluation over different fields")

    @property
    def field(self) -> Field:
        return self.coevaluation.field

    def point_dim(self, sign: str) -> int:
        return self.dimension if sign == "+" else self.dual_dimension

    def u(self, p: int, m: int) -> Scalar:
        return self.coevaluation.entry(p * self.dual_dimension + m, 0)

    def e(self, m: int, p: int) -> Scalar:
        return self.evaluation.entry(0, m * self.dimension + p)

    @property
    def circle_value(self) -> Scalar:
        total: Scalar = 0
        for p in range(self.dimension):
            for m in range(self.dual_dimension):
                total += self.u(p, m) * self.e(m, p)
        return self.field.reduce(total)


def canonical_duality(n: int, field: Optional[Field] = None) -> DualityDatum:
    field = field or Field.rationals()
    u = ExactMatrix.from_columns(field, n * n, [{i * n + i: 1 for i in range(n)}])
    e = ExactMatrix.from_sparse_rows(field, 1, n * n, [{i * n + i: 1 for i in range(n)}])
    return DualityDatum(n, n, u, e)


def twisted_duality(n: int, g: ExactMatrix) -> DualityDatum:
    """(I (x) g) u and e (g^-1 (x) I) for an invertible n x n matrix g."""
    canonical = canonical_duality(n, g.field)
    ident = ExactMatrix.identity(g.field, n)
    u = ident.kron(g) @ canonical.coevaluation
    e = canonical.evaluation @ inverse(g).kron(ident)
    return DualityDatum(n, n, u, e)


def duality_check(datum: DualityDatum) -> DualityReport:
    """Both snake identities as matrix products; residuals are I - composite."""
    field = datum.field
    n, m = datum.dimension, datum.dual_dimension
    i_v = ExactMatrix.identity(field, n)
    i_l = ExactMatrix.identity(field, m)
    left = i_v.kron(datum.evaluation) @ datum.coevaluation.kron(i_v)
    right = datum.evaluation.kron(i_l) @ i_l.kron(datum.coevaluation)
    left_residual = i_v - left
    right_residual = i_l - right
    passed = left_residual.is_zero() and right_residual.is_zero()
    if not passed:
        logger.info("duality check fails", extra={"dimension": n, "dual_dimension": m})
    return DualityReport(
        dimension=n,
        dual_dimension=m,
        passed=passed,
        left_residual=None if left_residual.is_zero() else left_residual.render(),
        right_residual=None if right_residual.is_zero() else right_residual.render(),
    )


def full_dualizable_vect(n: Optional[int], field: Optional[Field] = None) -> DualizabilityVerdict:
    """Verdict for V = k^n; ``None`` stands for an infinite-dimensional space."""
    if n is None:
        return DualizabilityVerdict(dualizable=False, note=INFINITE_OBSTRUCTION)
    if n < 0:
        raise ShapeMismatchError("dimension must be non-negative")
    datum = canonical_duality(n, field)
    report = duality_check(datum)
    return DualizabilityVerdict(
        dualizable=report.passed,
        dimension=n,
        coevaluation=datum.coevaluation.render(),
        evaluation=datum.evaluation.render(),
        check=report,
        note="canonical coevaluation sum_i e_i (x) e_i* and evaluation pairing",
    )


# --- evaluation ---------------------------------------------------------------


def _radix(labels: Sequence[int], dims: Sequence[int]) -> int:
    index = 0
    for label, dim in zip(labels, dims):
        index = index * dim + label
    return index


def evaluate(
    n: int,
    cobordism: Cobordism1,
    datum: Optional[DualityDatum] = None,
    field: Optional[Field] = None,
) -> ExactMatrix:
    """Matrix of Z(cobordism): k^{dims(source)} -> k^{dims(target)}.

    Through strands are identities, cups take entries of u, caps entries of e
    and every circle contributes e o swap o u (n for the canonical pair).
    """
    if datum is None:
        datum = canonical_duality(n, field)
    elif datum.dimension != n:
        raise ShapeMismatchError(f"duality datum has dimension {datum.dimension}, expected {n}")
    F = datum.field
    X = cobordism
    source_dims = [datum.point_dim(s) for s in X.source]
    target_dims = [datum.point_dim(s) for s in X.target]
    through = [(a, b) for a, b in X.arcs if a[0] == "s" and b[0] == "t"]
    caps = [(a, b) if X.sign(a) == "+" else (b, a) for a, b in X.arcs if a[0] == b[0] == "s"]
    cups = [(a, b) if X.sign(a) == "+" else (b, a) for a, b in X.arcs if a[0] == b[0] == "t"]
    scalar = F.reduce(datum.circle_value ** X.circles)

    nrows = 1
    for d in target_dims:
        nrows *= d
    rows: List[Vector] = [{} for _ in range(nrows)]
    cup_ranges = [range(datum.dimension * datum.dual_dimension)] * len(cups)
    for source_labels in itertools.product(*(range(d) for d in source_dims)):
        weight: Scalar = scalar
        for (_, plus), (_, minus) in caps:
            weight = F.reduce(weight * datum.e(source_labels[minus], source_labels[plus]))
        if not weight:
            continue
        column = _radix(source_labels, source_dims)
        target_labels = [0] * len(X.target)
        for (_, i), (_, j) in through:
            target_labels[j] = source_labels[i]
        for choice in itertools.product(*cup_ranges):
            value = weight
            for ((_, plus), (_, minus)), pair in zip(cups, choice):
                p, m = divmod(pair, datum.dual_dimension)
                target_labels[plus] = p
                target_labels[minus] = m
                value = F.reduce(value * datum.u(p, m))
            if value:
                row = rows[_radix(target_labels, target_dims)]
                row[column] = F.reduce(row.get(column, 0) + value)
    ncols = 1
    for d in source_dims:
        ncols *= d
    return ExactMatrix.from_sparse_rows(F, nrows, ncols, rows)


def evaluate_factors(n: int, pieces: Sequence[Cobordism1], datum: Optional[DualityDatum] = None) -> ExactMatrix:
    """Product of the evaluations of pieces[0] o ... o pieces[-1], without composing first."""
    result = evaluate(n, pieces[0], datum)
    for piece in pieces[1:]:
        result = result @ evaluate(n, piece, datum)
    return result


def snakes_hold(datum: DualityDatum) -> bool:
    """Both snake identities, computed through cobordism evaluation."""
    n = datum.dimension
    zorro = evaluate_factors(n, zorro_factors(), datum)
    dual = evaluate_factors(n, dual_snake_factors(), datum)
    return zorro == ExactMatrix.identity(datum.field, n) and dual == ExactMatrix.identity(
        datum.field, datum.dual_dimension
    )


# --- random cobordisms ------------------------------------------------------------


def random_points(rng: random.Random, length: int) -> SignedPoints:
    return tuple(rng.choice(SIGNS) for _ in range(length))


def random_target(rng: random.Random, source: SignedPoints, max_length: int = 6) -> SignedPoints:
    """Signs W such that some cobordism source -> W exists, with len(W) <= max_length when possible."""
    excess = source.count("-") - source.count("+")
    base = abs(excess)
    spare = max(0, (max_length - base) // 2)
    pairs = rng.randint(0, spare)
    plus = pairs + (0 if excess >= 0 else -excess)
    minus = pairs + (excess if excess >= 0 else 0)
    points = ["+"] * plus + ["-"] * minus
    rng.shuffle(points)
    return tuple(points)


def random_cobordism(
    rng: random.Random,
    source: SignedPoints,
    target: SignedPoints,
    max_circles: int = 2,
) -> Cobordism1:
    positive: List[Endpoint] = []
    negative: List[Endpoint] = []
    for i, sign in enumerate(source):
        (positive if sign == "+" else negative).append(("s", i))
    for j, sign in enumerate(target):
        (negative if sign == "+" else positive).append(("t", j))
    if len(positive) != len(negative):
        raise InterfaceMismatchError("no oriented matching between these boundaries")
    rng.shuffle(negative)
    return Cobordism1.build(source, target, list(zip(positive, negative)), rng.randint(0, max_circles))


def random_datum(rng: random.Random, n: int, field: Field) -> DualityDatum:
    """Random u and e; snake identities generally fail."""
    u = ExactMatrix.from_columns(field, n * n, [{k: field.random_element(rng) for k in range(n * n)}])
    e = ExactMatrix.from_sparse_rows(field, 1, n * n, [{k: field.random_element(rng) for k in range(n * n)}])
    return DualityDatum(n, n, u, e)
