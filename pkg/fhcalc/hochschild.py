"""Hochschild chains of an algebra, the Connes operator and HKR.

Basis of degree n: tuples (a0, a1, ..., an) of basis indices, a0 arbitrary
and a1..an taken from ``reduced_indices`` in the normalized complex, listed in
lexicographic order.

    b(a0, ..., an) = sum_{i<n} (-1)^i (a0, ..., a_i a_{i+1}, ..., an)
                     + (-1)^n (an a0, a1, ..., a_{n-1})

    B(a0, ..., an) = sum_{i=0..n} (-1)^{n i} (1, a_i, ..., an, a0, ..., a_{i-1})

Factors that land in a reduced slot pass through the projection A -> A/k*1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from sympy.combinatorics import Permutation

from .algebra import Algebra, GradedAlgebra, cocenter, kaehler_dims, matrix_algebra_over, polynomial_algebra
from .config import get_budget
from .errors import ConsistencyError, CutoffExceededError, DegreeRangeError, FieldError, check_budget
from .exactla import (
    ChainComplex,
    ChainMap,
    Echelon,
    ExactMatrix,
    Field,
    Scalar,
    Vector,
    add_scaled,
    chain_map_check,
    homology_dims,
    solve,
)
from .logging_config import logger
from .models import CircleActionReport, ConnesReport, HkrReport, MoritaReport

BasisTuple = Tuple[int, ...]


@dataclass(frozen=True)
class HochschildComplex:
    algebra: Algebra
    maxdeg: int
    normalized: bool
    bases: Tuple[Tuple[BasisTuple, ...], ...]
    complex: ChainComplex
    weight: Optional[int] = None

    @cached_property
    def indices(self) -> Tuple[Dict[BasisTuple, int], ...]:
        return tuple({t: k for k, t in enumerate(basis)} for basis in self.bases)

    def label(self, n: int, k: int) -> str:
        return "⊗".join(self.algebra.basis[i] for i in self.bases[n][k])

    def vector(self, n: int, terms: Mapping[BasisTuple, Scalar]) -> Vector:
        field = self.algebra.field
        return {self.indices[n][t]: field.coerce(v) for t, v in terms.items() if v}


def hochschild_size(algebra: Algebra, maxdeg: int, normalized: bool = True) -> int:
    d = algebra.dim
    slots = d - 1 if normalized else d
    return sum(d * slots**n for n in range(maxdeg + 1))


def _plain_tuples(algebra: Algebra, n: int, normalized: bool) -> Iterator[BasisTuple]:
    rest = algebra.reduced_indices if normalized else range(algebra.dim)
    for combo in itertools.product(range(algebra.dim), *([rest] * n)):
        yield combo


def _weighted_tuples(graded: GradedAlgebra, n: int, weight: int) -> Iterator[BasisTuple]:
    weights = graded.weights
    rest = graded.algebra.reduced_indices

    def extend(prefix: BasisTuple, remaining: int, slots: int) -> Iterator[BasisTuple]:
        if slots == 0:
            if remaining == 0:
                yield prefix
            return
        for k in rest:
            if weights[k] <= remaining - (slots - 1):
                yield from extend(prefix + (k,), remaining - weights[k], slots - 1)

    for a0 in range(graded.algebra.dim):
        if weights[a0] <= weight - n:
            yield from extend((a0,), weight - weights[a0], n)


def _slot_vector(algebra: Algebra, product: Vector, reduced: bool) -> Vector:
    return algebra.project_reduced(product) if reduced else product


def _boundary_column(algebra: Algebra, chain: BasisTuple, target: Dict[BasisTuple, int], normalized: bool) -> Vector:
    field = algebra.field
    n = len(chain) - 1
    column: Vector = {}

    def emit(prefix: BasisTuple, slot: Vector, suffix: BasisTuple, sign: int) -> None:
        for k, value in slot.items():
            key = prefix + (k,) + suffix
            index = target.get(key)
            if index is None:
                raise ConsistencyError(f"Hochschild face left the basis at {key}")
            add_scaled(field, column, {index: value}, sign)

    for i in range(n):
        product = algebra.products[chain[i]][chain[i + 1]]
        slot = _slot_vector(algebra, product, normalized and i > 0)
        emit(chain[:i], slot, chain[i + 2:], -1 if i % 2 else 1)
    wrapped = algebra.products[chain[n]][chain[0]]
    emit((), wrapped, chain[1:n], -1 if n % 2 else 1)
    return column


def _assemble(
    algebra: Algebra,
    bases: List[Tuple[BasisTuple, ...]],
    normalized: bool,
    truncated: bool,
    maxdeg: int,
    weight: Optional[int],
) -> HochschildComplex:
    field = algebra.field
    indices = [{t: k for k, t in enumerate(basis)} for basis in bases]
    differentials: Dict[int, ExactMatrix] = {}
    for n in range(1, len(bases)):
        columns = [_boundary_column(algebra, chain, indices[n - 1], normalized) for chain in bases[n]]
        differentials[n] = ExactMatrix.from_columns(field, len(bases[n - 1]), columns)
    dims = {n: len(basis) for n, basis in enumerate(bases)}
    complex_ = ChainComplex(field, 0, len(bases) - 1, dims, differentials, truncated)
    logger.info(
        "Hochschild complex built",
        extra={"algebra": algebra.name, "normalized": normalized, "weight": weight, "dims": dims},
    )
    return HochschildComplex(algebra, maxdeg, normalized, tuple(bases), complex_, weight)


def hochschild_complex(
    algebra: Algebra,
    maxdeg: int,
    normalized: bool = True,
    budget: Optional[int] = None,
) -> HochschildComplex:
    if maxdeg < 1:
        raise DegreeRangeError("maxdeg must be at least 1")
    budget = get_budget() if budget is None else budget
    check_budget("Hochschild complex", hochschild_size(algebra, maxdeg, normalized), budget)
    bases = [tuple(_plain_tuples(algebra, n, normalized)) for n in range(maxdeg + 1)]
    # with A = k the normalized complex is genuinely zero above degree 0
    truncated = not (normalized and algebra.dim == 1)
    return _assemble(algebra, bases, normalized, truncated, maxdeg, None)


def graded_hochschild_complex(graded: GradedAlgebra, weight: int, budget: Optional[int] = None) -> HochschildComplex:
    """The weight-w summand; complete because a degree-n chain has weight >= n."""
    if weight < 0 or weight > graded.cutoff:
        raise CutoffExceededError(f"weight {weight} outside the stored range 0..{graded.cutoff}")
    budget = get_budget() if budget is None else budget
    bases: List[Tuple[BasisTuple, ...]] = []
    total = 0
    for n in range(weight + 1):
        basis = tuple(_weighted_tuples(graded, n, weight))
        total += len(basis)
        check_budget("weighted Hochschild complex", total, budget)
        bases.append(basis)
    return _assemble(graded.algebra, bases, True, False, weight, weight)


def hh_dims(algebra: Algebra, maxdeg: int, budget: Optional[int] = None) -> Dict[int, int]:
    """HH_n for n <= maxdeg - 1; HH_0 is cross-checked against the cocenter."""
    complex_ = hochschild_complex(algebra, maxdeg, budget=budget).complex
    dims = homology_dims(complex_, range(maxdeg))
    expected = cocenter(algebra).dim
    if dims[0] != expected:
        raise ConsistencyError(f"HH_0 has dimension {dims[0]} but the cocenter has {expected}")
    return dims


def graded_hh_dims(graded: GradedAlgebra, weight: int, budget: Optional[int] = None) -> Dict[int, int]:
    return homology_dims(graded_hochschild_complex(graded, weight, budget).complex)


# --- Connes operator ----------------------------------------------------------


def _connes_column(hc: HochschildComplex, chain: BasisTuple, target: Dict[BasisTuple, int]) -> Vector:
    algebra = hc.algebra
    field = algebra.field
    n = len(chain) - 1
    column: Vector = {}
    head = algebra.project_reduced({chain[0]: 1})
    for i in range(n + 1):
        sign = -1 if (n * i) % 2 else 1
        before = chain[i:] if i else ()
        after = chain[1:i] if i else chain[1:]
        for k, value in head.items():
            for u, unit_coeff in algebra.unit_vector.items():
                key = (u,) + before + (k,) + after
                add_scaled(field, column, {target[key]: value * unit_coeff}, sign)
    return column


def connes_B(hc: HochschildComplex) -> ChainMap:
    """B: C_n -> C_{n+1} for every n with C_{n+1} stored; requires a normalized complex."""
    if not hc.normalized:
        raise DegreeRangeError("the Connes operator is defined on the normalized complex")
    field = hc.algebra.field
    components: Dict[int, ExactMatrix] = {}
    top = hc.complex.hi
    for n in range(0, top):
        columns = [_connes_column(hc, chain, hc.indices[n + 1]) for chain in hc.bases[n]]
        components[n] = ExactMatrix.from_columns(field, len(hc.bases[n + 1]), columns)
    return ChainMap(hc.complex, hc.complex, 1, components)


def connes_report(hc: HochschildComplex) -> ConnesReport:
    B = connes_B(hc)
    squared_zero = all(
        (B.components[n + 1] @ B.components[n]).is_zero()
        for n in B.components
        if n + 1 in B.components
    )
    check = chain_map_check(B)
    report = ConnesReport(
        algebra=hc.algebra.name or "A",
        maxdeg=hc.maxdeg,
        b_squared_zero=True,  # ChainComplex refuses to exist otherwise
        B_squared_zero=squared_zero,
        anticommutes=check.commutes,
        checked_degrees=check.checked_degrees,
    )
    if not report.passed:
        logger.error("Connes identities fail", extra={"algebra": report.algebra})
    return report


# --- HKR ----------------------------------------------------------------------


def kaehler_basis(graded: GradedAlgebra, i: int, weight: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """(monomial index, sorted variable subset) spanning the weight-w i-forms."""
    m = graded.variables
    if not 0 <= i <= m or weight < i:
        return []
    return [
        (a, subset)
        for a in graded.basis_of_weight(weight - i)
        for subset in itertools.combinations(range(m), i)
    ]


def _variable_indices(graded: GradedAlgebra) -> Tuple[int, ...]:
    return graded.basis_of_weight(1)


def hkr_map(graded: GradedAlgebra, i: int, weight: int, hc: Optional[HochschildComplex] = None) -> ExactMatrix:
    """Antisymmetrization a dx_J -> sum_sigma sgn(sigma) a ⊗ x_{J sigma}, no 1/i! factor."""
    p = graded.field.characteristic
    if p and p <= weight:
        raise FieldError(f"HKR comparison refuses F_{p} at weight {weight}")
    hc = hc or graded_hochschild_complex(graded, weight)
    variables = _variable_indices(graded)
    columns: List[Vector] = []
    target = hc.indices[i] if i < len(hc.indices) else {}
    for a, subset in kaehler_basis(graded, i, weight):
        column: Vector = {}
        for order in itertools.permutations(range(i)):
            sign = Permutation(list(order)).signature() if i > 1 else 1
            key = (a,) + tuple(variables[subset[s]] for s in order)
            add_scaled(graded.field, column, {target[key]: 1}, sign)
        columns.append(column)
    return ExactMatrix.from_columns(graded.field, hc.complex.dim(i), columns)


def verify_hkr(hc: HochschildComplex, i: int, epsilon: ExactMatrix) -> bool:
    """Columns are cycles and map isomorphically onto H_i."""
    outgoing = hc.complex.known_differential(i)
    incoming = hc.complex.known_differential(i + 1)
    assert outgoing is not None and incoming is not None
    if not (outgoing @ epsilon).is_zero():
        return False
    echelon = Echelon(hc.algebra.field, incoming.columns)
    boundaries = echelon.rank
    for column in epsilon.columns:
        echelon.add(column)
    added = echelon.rank - boundaries
    return added == epsilon.ncols == homology_dims(hc.complex, [i])[i]


def hkr_report(m: int, weight: int, field: Optional[Field] = None) -> HkrReport:
    field = field or Field.rationals()
    graded = polynomial_algebra(m, max(weight, 0), field)
    hc = graded_hochschild_complex(graded, weight)
    hh = homology_dims(hc.complex)
    degrees = range(weight + 1)
    kaehler = {i: kaehler_dims(m, i, weight) for i in degrees}
    verified = {i: verify_hkr(hc, i, hkr_map(graded, i, weight, hc)) for i in range(min(m, weight) + 1)}
    passed = hh == kaehler and all(verified.values())
    if not passed:
        logger.error("HKR comparison fails", extra={"m": m, "weight": weight, "hh": hh, "kaehler": kaehler})
    return HkrReport(
        variables=m, weight=weight, hochschild=hh, kaehler=kaehler, maps_verified=verified, passed=passed
    )


def circle_action_check(weight: int, field: Optional[Field] = None) -> CircleActionReport:
    """[B(x^w)] = sign * w * [x^(w-1) ⊗ x] in HH_1 of k[x] at weight w; +1 is tried first."""
    if weight < 1:
        raise DegreeRangeError("circle action check needs weight >= 1")
    field = field or Field.rationals()
    graded = polynomial_algebra(1, weight, field)
    hc = graded_hochschild_complex(graded, weight)
    B = connes_B(hc)
    top_monomial = graded.basis_of_weight(weight)[0]
    source = B.components[0].apply({hc.indices[0][(top_monomial,)]: 1})
    form = hkr_map(graded, 1, weight, hc).columns[0]
    boundary = hc.complex.known_differential(2)
    assert boundary is not None
    for sign in (1, -1):
        difference = dict(source)
        add_scaled(field, difference, form, -sign * weight)
        preimage = solve(boundary, difference)
        if preimage is not None:
            return CircleActionReport(weight=weight, holds=True, sign=sign, preimage_support=len(preimage))
    logger.error("circle action check fails", extra={"weight": weight})
    return CircleActionReport(weight=weight, holds=False)


def morita_check(algebra: Algebra, n: int, maxdeg: int, budget: Optional[int] = None) -> MoritaReport:
    base = hh_dims(algebra, maxdeg, budget)
    matrices = hh_dims(matrix_algebra_over(algebra, n), maxdeg, budget)
    passed = base == matrices
    if not passed:
        logger.error("Morita invariance fails", extra={"base": base, "matrices": matrices})
    return MoritaReport(
        algebra=algebra.name or "A",
        size=n,
        maxdeg=maxdeg,
        hochschild=base,
        matrix_hochschild=matrices,
        passed=passed,
    )
