"""Two-sided bar complexes B(M, A, N) and the excision check for the circle.

Degree n basis: tuples (m, a1, ..., an, k) with m a basis index of M, k of N
and a_i reduced basis indices of A (all indices when unnormalized).

    d(m, a1, ..., an, k) = (m.a1, a2, ..., k)
                           + sum_{0<i<n} (-1)^i (m, ..., a_i a_{i+1}, ..., k)
                           + (-1)^n (m, a1, ..., a_{n-1}, an.k)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import (
    Algebra,
    LeftModule,
    RightModule,
    enveloping,
    enveloping_left_module,
    enveloping_right_module,
    opposite,
)
from .config import get_budget
from .errors import DegreeRangeError, ModuleError, check_budget
from .exactla import ChainComplex, Echelon, ExactMatrix, Vector, add_scaled, homology_dims
from .hochschild import hh_dims
from .logging_config import logger
from .models import ExcisionReport

EXCISION_CONVENTION = (
    "left factor: A as a right A⊗A^op-module, m.(a⊗b) = b m a; "
    "right factor: A as a left A⊗A^op-module, (a⊗b).m = a m b"
)

BarTuple = Tuple[int, ...]


@dataclass(frozen=True)
class BarComplex:
    right: RightModule
    algebra: Algebra
    left: LeftModule
    maxdeg: int
    normalized: bool
    bases: Tuple[Tuple[BarTuple, ...], ...]
    complex: ChainComplex


def _check_modules(right: RightModule, algebra: Algebra, left: LeftModule) -> None:
    if right.algebra != algebra or left.algebra != algebra:
        raise ModuleError("modules must be over the algebra of the bar construction")


def bar_size(right: RightModule, algebra: Algebra, left: LeftModule, maxdeg: int, normalized: bool = True) -> int:
    slots = algebra.dim - 1 if normalized else algebra.dim
    return sum(right.dim * slots**n * left.dim for n in range(maxdeg + 1))


def _bar_column(
    right: RightModule,
    algebra: Algebra,
    left: LeftModule,
    chain: BarTuple,
    target: Dict[BarTuple, int],
    normalized: bool,
) -> Vector:
    field = algebra.field
    n = len(chain) - 2
    column: Vector = {}

    def emit(prefix: BarTuple, slot: Vector, suffix: BarTuple, sign: int) -> None:
        for k, value in slot.items():
            add_scaled(field, column, {target[prefix + (k,) + suffix]: value}, sign)

    emit((), right.actions[chain[1]].columns[chain[0]], chain[2:], 1)
    for i in range(1, n):
        product = algebra.products[chain[i]][chain[i + 1]]
        slot = algebra.project_reduced(product) if normalized else product
        emit(chain[:i], slot, chain[i + 2:], -1 if i % 2 else 1)
    emit(chain[:n], left.actions[chain[n]].columns[chain[n + 1]], (), -1 if n % 2 else 1)
    return column


def bar_complex(
    right: RightModule,
    algebra: Algebra,
    left: LeftModule,
    maxdeg: int,
    normalized: bool = True,
    budget: Optional[int] = None,
) -> BarComplex:
    _check_modules(right, algebra, left)
    if maxdeg < 1:
        raise DegreeRangeError("maxdeg must be at least 1")
    budget = get_budget() if budget is None else budget
    check_budget("bar complex", bar_size(right, algebra, left, maxdeg, normalized), budget)

    rest = algebra.reduced_indices if normalized else tuple(range(algebra.dim))
    bases: List[Tuple[BarTuple, ...]] = [
        tuple(itertools.product(range(right.dim), *([rest] * n), range(left.dim)))
        for n in range(maxdeg + 1)
    ]
    indices = [{t: k for k, t in enumerate(basis)} for basis in bases]
    differentials: Dict[int, ExactMatrix] = {}
    for n in range(1, maxdeg + 1):
        columns = [_bar_column(right, algebra, left, chain, indices[n - 1], normalized) for chain in bases[n]]
        differentials[n] = ExactMatrix.from_columns(algebra.field, len(bases[n - 1]), columns)
    dims = {n: len(basis) for n, basis in enumerate(bases)}
    truncated = bool(rest)
    complex_ = ChainComplex(algebra.field, 0, maxdeg, dims, differentials, truncated)
    logger.info("bar complex built", extra={"algebra": algebra.name, "dims": dims, "normalized": normalized})
    return BarComplex(right, algebra, left, maxdeg, normalized, tuple(bases), complex_)


def tor_dims(
    right: RightModule,
    algebra: Algebra,
    left: LeftModule,
    maxdeg: int,
    budget: Optional[int] = None,
) -> Dict[int, int]:
    bar = bar_complex(right, algebra, left, maxdeg, budget=budget)
    return homology_dims(bar.complex, range(maxdeg))


def balanced_tensor_dim(right: RightModule, algebra: Algebra, left: LeftModule) -> int:
    """dim M ⊗_A N as the quotient of M ⊗ N by m.a ⊗ k - m ⊗ a.k."""
    _check_modules(right, algebra, left)
    width = left.dim
    relations = Echelon(algebra.field)
    for m, a, k in itertools.product(range(right.dim), range(algebra.dim), range(left.dim)):
        relation: Vector = {}
        for m2, value in right.actions[a].columns[m].items():
            add_scaled(algebra.field, relation, {m2 * width + k: value}, 1)
        for k2, value in left.actions[a].columns[k].items():
            add_scaled(algebra.field, relation, {m * width + k2: value}, -1)
        relations.add(relation)
    return right.dim * left.dim - relations.rank


def swap_sides(right: RightModule, algebra: Algebra, left: LeftModule) -> Tuple[RightModule, Algebra, LeftModule]:
    """(M, A, N) -> (N, A^op, M) with each module read over the opposite algebra."""
    return left.as_right_over_opposite(), opposite(algebra), right.as_left_over_opposite()


def excision_circle_check(algebra: Algebra, maxdeg: int, budget: Optional[int] = None) -> ExcisionReport:
    """Tor over A ⊗ A^op of (A, A) against the cyclic bar homology, degree by degree."""
    budget = get_budget() if budget is None else budget
    env = enveloping(algebra)
    right = enveloping_right_module(algebra).validate()
    left = enveloping_left_module(algebra).validate()
    tor = tor_dims(right, env, left, maxdeg, budget)
    hochschild = hh_dims(algebra, maxdeg, budget)
    agree = {n: tor[n] == hochschild[n] for n in range(maxdeg)}
    report = ExcisionReport(
        algebra=algebra.name or "A",
        maxdeg=maxdeg,
        convention=EXCISION_CONVENTION,
        hochschild=hochschild,
        tor=tor,
        agree=agree,
        passed=all(agree.values()),
    )
    if not report.passed:
        logger.error("excision check fails", extra={"hochschild": hochschild, "tor": tor})
    return report
