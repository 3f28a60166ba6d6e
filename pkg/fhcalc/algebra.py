"""Finite-dimensional unital associative algebras given by structure constants.

``constants[i][j][k]`` is the coefficient of e_k in e_i * e_j.  Tensor
products use the lexicographic basis (i, j) -> i * dim(B) + j everywhere in
the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.combinatorics import PermutationGroup

from .errors import (
    AlgebraError,
    FieldMismatchError,
    InterchangeViolation,
    ModuleError,
    ShapeMismatchError,
    UnitMismatchError,
)
from .exactla import Echelon, ExactMatrix, Field, Scalar, Vector, add_scaled, inverse
from .logging_config import logger
from .models import EckmannHiltonReport, EckmannHiltonScanReport

Constants = Tuple[Tuple[Tuple[Scalar, ...], ...], ...]


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    basis: Tuple[str, ...]
    constants: Constants
    unit: Tuple[Scalar, ...]
    name: str = ""

    def __post_init__(self) -> None:
        d = len(self.basis)
        if len(self.unit) != d or len(self.constants) != d:
            raise ShapeMismatchError(f"algebra of dimension {d} needs a {d}-vector unit and {d}^3 constants")
        for plane in self.constants:
            if len(plane) != d or any(len(row) != d for row in plane):
                raise ShapeMismatchError(f"structure constants must be {d}x{d}x{d}")
        if not any(self.unit):
            raise AlgebraError("unit vector is zero")

    @classmethod
    def from_products(
        cls,
        field: Field,
        basis: Sequence[str],
        products: Mapping[Tuple[int, int], Mapping[int, Scalar]],
        unit: Sequence[Scalar],
        name: str = "",
    ) -> "Algebra":
        d = len(basis)
        dense = [[[0] * d for _ in range(d)] for _ in range(d)]
        for (i, j), image in products.items():
            for k, value in image.items():
                dense[i][j][k] = field.coerce(value)
        constants = tuple(tuple(tuple(row) for row in plane) for plane in dense)
        return cls(field, tuple(basis), constants, tuple(field.coerce(u) for u in unit), name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def products(self) -> Tuple[Tuple[Vector, ...], ...]:
        return tuple(
            tuple({k: v for k, v in enumerate(row) if v} for row in plane)
            for plane in self.constants
        )

    @cached_property
    def unit_vector(self) -> Vector:
        return {k: v for k, v in enumerate(self.unit) if v}

    @cached_property
    def unit_pivot(self) -> int:
        """Coordinate dropped when passing to the reduced space A / k*1."""
        return min(self.unit_vector)

    @cached_property
    def reduced_indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.dim) if i != self.unit_pivot)

    @property
    def unit_is_basis_vector(self) -> bool:
        return self.unit_vector == {self.unit_pivot: 1}

    def project_reduced(self, vector: Mapping[int, Scalar]) -> Vector:
        """Image in A / k*1, in coordinates indexed by ``reduced_indices``."""
        p = self.unit_pivot
        result = {k: v for k, v in vector.items() if v and k != p}
        coeff = vector.get(p, 0)
        if coeff and not self.unit_is_basis_vector:
            factor = self.field.reduce(coeff * self.field.inv(self.unit[p]))
            others = {k: v for k, v in self.unit_vector.items() if k != p}
            add_scaled(self.field, result, others, -factor)
        return result

    def multiply(self, left: Mapping[int, Scalar], right: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        for i, a in left.items():
            for j, b in right.items():
                add_scaled(self.field, result, self.products[i][j], a * b)
        return result

    def left_matrix(self, a: int) -> ExactMatrix:
        """Matrix of m -> e_a * m."""
        return ExactMatrix.from_columns(self.field, self.dim, [self.products[a][j] for j in range(self.dim)])

    def right_matrix(self, a: int) -> ExactMatrix:
        """Matrix of m -> m * e_a."""
        return ExactMatrix.from_columns(self.field, self.dim, [self.products[j][a] for j in range(self.dim)])

    @cached_property
    def is_commutative(self) -> bool:
        return all(
            self.constants[i][j] == self.constants[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def associativity_witness(self) -> Optional[Tuple[int, int, int]]:
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            left = self.multiply(self.products[i][j], {k: 1})
            right = self.multiply({i: 1}, self.products[j][k])
            if left != right:
                return (i, j, k)
        return None

    def unit_witness(self) -> Optional[int]:
        for i in range(self.dim):
            basis_vector = {i: 1}
            if self.multiply(self.unit_vector, basis_vector) != basis_vector:
                return i
            if self.multiply(basis_vector, self.unit_vector) != basis_vector:
                return i
        return None

    def validate(self) -> "Algebra":
        missing_unit = self.unit_witness()
        if missing_unit is not None:
            raise AlgebraError(f"unit law fails for basis element {self.basis[missing_unit]}")
        triple = self.associativity_witness()
        if triple is not None:
            names = ", ".join(self.basis[t] for t in triple)
            raise AlgebraError(f"associativity fails at ({names})")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.basis == other.basis
            and self.constants == other.constants
            and self.unit == other.unit
        )

    __hash__ = None  # type: ignore[assignment]


def _require_same_field(*algebras: Algebra) -> Field:
    fields = {a.field for a in algebras}
    if len(fields) != 1:
        raise FieldMismatchError("algebras over different fields")
    return algebras[0].field


def opposite(algebra: Algebra) -> Algebra:
    d = algebra.dim
    constants = tuple(
        tuple(algebra.constants[j][i] for j in range(d)) for i in range(d)
    )
    name = algebra.name[:-3] if algebra.name.endswith("^op") else (f"{algebra.name}^op" if algebra.name else "")
    return Algebra(algebra.field, algebra.basis, constants, algebra.unit, name)


def tensor_product(left: Algebra, right: Algebra) -> Algebra:
    field = _require_same_field(left, right)
    m = right.dim
    products: Dict[Tuple[int, int], Vector] = {}
    for i, j, k, l in itertools.product(range(left.dim), range(m), range(left.dim), range(m)):
        image: Vector = {}
        for a, x in left.products[i][k].items():
            for b, y in right.products[j][l].items():
                add_scaled(field, image, {a * m + b: 1}, x * y)
        if image:
            products[(i * m + j, k * m + l)] = image
    basis = [f"{a}⊗{b}" for a in left.basis for b in right.basis]
    unit = [field.reduce(x * y) for x in left.unit for y in right.unit]
    name = f"{left.name}⊗{right.name}" if left.name and right.name else ""
    return Algebra.from_products(field, basis, products, unit, name)


def enveloping(algebra: Algebra) -> Algebra:
    """A ⊗ A^op."""
    return tensor_product(algebra, opposite(algebra))


def direct_sum(left: Algebra, right: Algebra) -> Algebra:
    field = _require_same_field(left, right)
    shift = left.dim
    products: Dict[Tuple[int, int], Vector] = {}
    for i, j in itertools.product(range(left.dim), repeat=2):
        products[(i, j)] = dict(left.products[i][j])
    for i, j in itertools.product(range(right.dim), repeat=2):
        products[(i + shift, j + shift)] = {k + shift: v for k, v in right.products[i][j].items()}
    basis = [f"{b}_1" for b in left.basis] + [f"{b}_2" for b in right.basis]
    return Algebra.from_products(field, basis, products, list(left.unit) + list(right.unit))


def ground_field(field: Field) -> Algebra:
    return Algebra.from_products(field, ["1"], {(0, 0): {0: 1}}, [1], "k")


def split_algebra(field: Field) -> Algebra:
    """k ⊕ k with componentwise product."""
    return Algebra.from_products(field, ["e1", "e2"], {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 1], "split")


def truncated_polynomial(n: int, field: Field) -> Algebra:
    """k[x]/(x^n) on the basis 1, x, ..., x^(n-1)."""
    if n < 1:
        raise AlgebraError("k[x]/(x^n) needs n >= 1")
    basis = ["1"] + ["x" if k == 1 else f"x^{k}" for k in range(1, n)]
    products = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return Algebra.from_products(field, basis, products, [1] + [0] * (n - 1), f"k[x]/(x^{n})")


def dual_numbers(field: Field) -> Algebra:
    return truncated_polynomial(2, field)


def matrix_algebra(n: int, field: Field) -> Algebra:
    """M_n(k) on the matrix units E_ij in row-major order."""
    basis = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    products = {
        (i * n + j, j * n + l): {i * n + l: 1}
        for i in range(n)
        for j in range(n)
        for l in range(n)
    }
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return Algebra.from_products(field, basis, products, unit, f"M{n}")


def matrix_algebra_over(algebra: Algebra, n: int) -> Algebra:
    """M_n(A) as M_n(k) ⊗ A."""
    result = tensor_product(matrix_algebra(n, algebra.field), algebra)
    return Algebra(result.field, result.basis, result.constants, result.unit, f"M{n}({algebra.name})")


def upper_triangular(field: Field) -> Algebra:
    """Upper-triangular 2x2 matrices on the basis e11, e22, e12."""
    products = {
        (0, 0): {0: 1},
        (0, 2): {2: 1},
        (2, 1): {2: 1},
        (1, 1): {1: 1},
    }
    return Algebra.from_products(field, ["e11", "e22", "e12"], products, [1, 1, 0], "upper_triangular")


def group_algebra(group: PermutationGroup, field: Field, name: str = "") -> Algebra:
    """k[G] on the group elements sorted by array form."""
    elements = sorted(group.elements, key=lambda g: g.array_form)
    index = {tuple(g.array_form): k for k, g in enumerate(elements)}
    products = {
        (i, j): {index[tuple((g * h).array_form)]: 1}
        for i, g in enumerate(elements)
        for j, h in enumerate(elements)
    }
    identity = index[tuple(range(group.degree))]
    unit = [1 if k == identity else 0 for k in range(len(elements))]
    basis = ["g" + "".join(str(v) for v in g.array_form) for g in elements]
    return Algebra.from_products(field, basis, products, unit, name or f"k[G{len(elements)}]")


def change_basis(algebra: Algebra, g: ExactMatrix) -> Algebra:
    """Structure constants in the basis f_j = sum_i g[i][j] e_i."""
    if g.shape != (algebra.dim, algebra.dim):
        raise ShapeMismatchError(f"basis change must be {algebra.dim}x{algebra.dim}")
    g_inv = inverse(g)
    new_basis = [g.columns[j] for j in range(algebra.dim)]
    products: Dict[Tuple[int, int], Vector] = {}
    for a, b in itertools.product(range(algebra.dim), repeat=2):
        old = algebra.multiply(new_basis[a], new_basis[b])
        products[(a, b)] = g_inv.apply(old)
    unit_vector = g_inv.apply(algebra.unit_vector)
    unit = [unit_vector.get(k, 0) for k in range(algebra.dim)]
    basis = [f"f{k}" for k in range(algebra.dim)]
    return Algebra.from_products(algebra.field, basis, products, unit, algebra.name)


def unit_adapted(algebra: Algebra) -> Algebra:
    """Same algebra, with the unit replacing basis vector ``unit_pivot``."""
    if algebra.unit_is_basis_vector:
        return algebra
    p = algebra.unit_pivot
    columns = [algebra.unit_vector if j == p else {j: 1} for j in range(algebra.dim)]
    adapted = change_basis(algebra, ExactMatrix.from_columns(algebra.field, algebra.dim, columns))
    basis = tuple("1" if j == p else algebra.basis[j] for j in range(algebra.dim))
    return Algebra(adapted.field, basis, adapted.constants, adapted.unit, algebra.name)


@dataclass(frozen=True)
class Cocenter:
    dim: int
    representatives: Tuple[int, ...]


def commutator_span(algebra: Algebra) -> Echelon:
    echelon = Echelon(algebra.field)
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            commutator = dict(algebra.products[i][j])
            add_scaled(algebra.field, commutator, algebra.products[j][i], -1)
            echelon.add(commutator)
    return echelon


def cocenter(algebra: Algebra) -> Cocenter:
    """A / [A, A]; representatives are the basis indices outside the commutator pivots."""
    span = commutator_span(algebra)
    representatives = tuple(k for k in range(algebra.dim) if k not in span.pivots)
    return Cocenter(len(representatives), representatives)


# --- modules ------------------------------------------------------------------


def _check_action_shapes(algebra: Algebra, dim: int, actions: Sequence[ExactMatrix]) -> None:
    if len(actions) != algebra.dim:
        raise ModuleError(f"need one action matrix per basis element ({algebra.dim}), got {len(actions)}")
    for m in actions:
        if m.field != algebra.field:
            raise FieldMismatchError("action matrix over a different field")
        if m.shape != (dim, dim):
            raise ShapeMismatchError(f"action matrices must be {dim}x{dim}")


def _combination(algebra: Algebra, actions: Sequence[ExactMatrix], vector: Mapping[int, Scalar], dim: int) -> ExactMatrix:
    total = ExactMatrix.zeros(algebra.field, dim, dim)
    for k, value in vector.items():
        total = total + actions[k].scale(value)
    return total


@dataclass(frozen=True)
class LeftModule:
    """L_a L_b = L_{ab}."""

    algebra: Algebra
    dim: int
    actions: Tuple[ExactMatrix, ...]

    def validate(self) -> "LeftModule":
        _check_action_shapes(self.algebra, self.dim, self.actions)
        if _combination(self.algebra, self.actions, self.algebra.unit_vector, self.dim) != ExactMatrix.identity(self.algebra.field, self.dim):
            raise ModuleError("unit does not act as the identity")
        for a, b in itertools.product(range(self.algebra.dim), repeat=2):
            expected = _combination(self.algebra, self.actions, self.algebra.products[a][b], self.dim)
            if self.actions[a] @ self.actions[b] != expected:
                raise ModuleError(f"left action fails for ({self.algebra.basis[a]}, {self.algebra.basis[b]})")
        return self

    def act(self, a: int, vector: Mapping[int, Scalar]) -> Vector:
        return self.actions[a].apply(vector)

    def as_right_over_opposite(self) -> "RightModule":
        return RightModule(opposite(self.algebra), self.dim, self.actions)


@dataclass(frozen=True)
class RightModule:
    """R_b R_a = R_{ab}: acting by a then b is acting by ab."""

    algebra: Algebra
    dim: int
    actions: Tuple[ExactMatrix, ...]

    def validate(self) -> "RightModule":
        _check_action_shapes(self.algebra, self.dim, self.actions)
        if _combination(self.algebra, self.actions, self.algebra.unit_vector, self.dim) != ExactMatrix.identity(self.algebra.field, self.dim):
            raise ModuleError("unit does not act as the identity")
        for a, b in itertools.product(range(self.algebra.dim), repeat=2):
            expected = _combination(self.algebra, self.actions, self.algebra.products[a][b], self.dim)
            if self.actions[b] @ self.actions[a] != expected:
                raise ModuleError(f"right action fails for ({self.algebra.basis[a]}, {self.algebra.basis[b]})")
        return self

    def act(self, vector: Mapping[int, Scalar], a: int) -> Vector:
        return self.actions[a].apply(vector)

    def as_left_over_opposite(self) -> LeftModule:
        return LeftModule(opposite(self.algebra), self.dim, self.actions)


@dataclass(frozen=True)
class Bimodule:
    """Left A-action and right B-action on one space, commuting."""

    left_algebra: Algebra
    right_algebra: Algebra
    dim: int
    left: Tuple[ExactMatrix, ...]
    right: Tuple[ExactMatrix, ...]

    def validate(self) -> "Bimodule":
        self.as_left_module().validate()
        self.as_right_module().validate()
        for i, l in enumerate(self.left):
            for j, r in enumerate(self.right):
                if l @ r != r @ l:
                    raise ModuleError(
                        f"left {self.left_algebra.basis[i]} and right {self.right_algebra.basis[j]} actions do not commute"
                    )
        return self

    def as_left_module(self) -> LeftModule:
        return LeftModule(self.left_algebra, self.dim, self.left)

    def as_right_module(self) -> RightModule:
        return RightModule(self.right_algebra, self.dim, self.right)


def regular_bimodule(algebra: Algebra) -> Bimodule:
    return Bimodule(
        algebra,
        algebra,
        algebra.dim,
        tuple(algebra.left_matrix(a) for a in range(algebra.dim)),
        tuple(algebra.right_matrix(a) for a in range(algebra.dim)),
    )


def _character_matrices(algebra: Algebra, character: Sequence[Scalar]) -> Tuple[ExactMatrix, ...]:
    if len(character) != algebra.dim:
        raise ModuleError(f"character needs {algebra.dim} values")
    return tuple(ExactMatrix.from_rows(algebra.field, [[value]]) for value in character)


def augmentation_left(algebra: Algebra, character: Sequence[Scalar]) -> LeftModule:
    """One-dimensional module where e_a acts by character[a]; validated as an algebra map."""
    return LeftModule(algebra, 1, _character_matrices(algebra, character)).validate()


def augmentation_right(algebra: Algebra, character: Sequence[Scalar]) -> RightModule:
    return RightModule(algebra, 1, _character_matrices(algebra, character)).validate()


def enveloping_left_module(algebra: Algebra) -> LeftModule:
    """A as a left A ⊗ A^op-module: (a ⊗ b) . m = a m b."""
    d = algebra.dim
    actions = tuple(
        algebra.left_matrix(i) @ algebra.right_matrix(j) for i in range(d) for j in range(d)
    )
    return LeftModule(enveloping(algebra), d, actions)


def enveloping_right_module(algebra: Algebra) -> RightModule:
    """A as a right A ⊗ A^op-module: m . (a ⊗ b) = b m a."""
    d = algebra.dim
    actions = tuple(
        algebra.left_matrix(j) @ algebra.right_matrix(i) for i in range(d) for j in range(d)
    )
    return RightModule(enveloping(algebra), d, actions)


# --- weight-graded algebras ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """All basis elements of weight <= cutoff; products landing above it are dropped."""

    algebra: Algebra
    weights: Tuple[int, ...]
    cutoff: int
    variables: int = 0

    def __post_init__(self) -> None:
        a = self.algebra
        if len(self.weights) != a.dim:
            raise ShapeMismatchError("one weight per basis element")
        if any(w < 0 or w > self.cutoff for w in self.weights):
            raise AlgebraError("weights must lie in 0..cutoff")
        weight_zero = [k for k, w in enumerate(self.weights) if w == 0]
        if len(weight_zero) != 1 or a.unit_vector != {weight_zero[0]: 1}:
            raise AlgebraError("weight 0 must be spanned by the unit")
        for i, j in itertools.product(range(a.dim), repeat=2):
            for k in a.products[i][j]:
                if self.weights[k] != self.weights[i] + self.weights[j]:
                    raise AlgebraError(f"product {a.basis[i]}*{a.basis[j]} is not homogeneous")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @cached_property
    def weight_dims(self) -> List[int]:
        return [self.weights.count(w) for w in range(self.cutoff + 1)]

    def basis_of_weight(self, w: int) -> Tuple[int, ...]:
        return tuple(k for k, weight in enumerate(self.weights) if weight == w)


def _monomial_label(exponents: Tuple[int, ...], names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) or "1"


def variable_names(m: int) -> List[str]:
    return ["x", "y", "z"][:m] if m <= 3 else [f"x{i + 1}" for i in range(m)]


def polynomial_algebra(m: int, cutoff: int, field: Field) -> GradedAlgebra:
    """k[x_1..x_m] truncated by weight; weight-w monomials in combinations_with_replacement order."""
    if m < 1 or cutoff < 0:
        raise AlgebraError("polynomial algebra needs m >= 1 and cutoff >= 0")
    monomials: List[Tuple[int, ...]] = []
    weights: List[int] = []
    for w in range(cutoff + 1):
        for combo in itertools.combinations_with_replacement(range(m), w):
            exponents = [0] * m
            for v in combo:
                exponents[v] += 1
            monomials.append(tuple(exponents))
            weights.append(w)
    index = {mono: k for k, mono in enumerate(monomials)}
    products: Dict[Tuple[int, int], Vector] = {}
    for i, a in enumerate(monomials):
        for j, b in enumerate(monomials):
            target = tuple(x + y for x, y in zip(a, b))
            if target in index:
                products[(i, j)] = {index[target]: 1}
    names = variable_names(m)
    basis = [_monomial_label(mono, names) for mono in monomials]
    unit = [1] + [0] * (len(monomials) - 1)
    algebra = Algebra.from_products(field, basis, products, unit, f"k[{','.join(names)}]")
    logger.debug("polynomial algebra m=%d cutoff=%d dims=%s", m, cutoff, [weights.count(w) for w in range(cutoff + 1)])
    return GradedAlgebra(algebra, tuple(weights), cutoff, m)


def monomial_count(m: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + m - 1, m - 1)


def kaehler_dims(m: int, i: int, w: int) -> int:
    """Weight-w piece of the algebraic i-forms on affine m-space."""
    if i < 0 or i > m or w < i:
        return 0
    return comb(m, i) * monomial_count(m, w - i)


# --- Eckmann-Hilton -----------------------------------------------------------

Table = Tuple[Tuple[int, ...], ...]


def _check_table(table: Sequence[Sequence[int]], size: int, label: str) -> Table:
    if len(table) != size or any(len(row) != size for row in table):
        raise ShapeMismatchError(f"{label} must be a {size}x{size} table")
    for row in table:
        for value in row:
            if not 0 <= value < size:
                raise AlgebraError(f"{label} has entry {value} outside 0..{size - 1}")
    return tuple(tuple(row) for row in table)


def table_units(table: Table) -> List[int]:
    size = len(table)
    return [
        e
        for e in range(size)
        if all(table[e][a] == a and table[a][e] == a for a in range(size))
    ]


def is_associative_table(table: Table) -> bool:
    size = len(table)
    return all(
        table[table[a][b]][c] == table[a][table[b][c]]
        for a, b, c in itertools.product(range(size), repeat=3)
    )


def interchange_witness(op1: Table, op2: Table) -> Optional[Tuple[int, int, int, int]]:
    """(a*b) o (c*d) == (a o c) * (b o d) with * = op1 and o = op2."""
    size = len(op1)
    for a, b, c, d in itertools.product(range(size), repeat=4):
        if op2[op1[a][b]][op1[c][d]] != op1[op2[a][c]][op2[b][d]]:
            return (a, b, c, d)
    return None


def eckmann_hilton_check(
    size: int,
    op1: Sequence[Sequence[int]],
    op2: Sequence[Sequence[int]],
    unit: int,
) -> EckmannHiltonReport:
    first = _check_table(op1, size, "op1")
    second = _check_table(op2, size, "op2")
    for label, table in (("op1", first), ("op2", second)):
        if unit not in table_units(table):
            actual = table_units(table)
            found = f"its unit is {actual[0]}" if actual else "it has no unit"
            raise UnitMismatchError(f"{unit} is not a unit for {label}; {found}")
    witness = interchange_witness(first, second)
    if witness is not None:
        raise InterchangeViolation(witness)

    counterexample: Optional[List[int]] = None
    equal = True
    commutative = True
    for a, b in itertools.product(range(size), repeat=2):
        if first[a][b] != second[a][b]:
            equal = False
            counterexample = counterexample or [a, b]
        if first[a][b] != first[b][a]:
            commutative = False
            counterexample = counterexample or [a, b]
    report = EckmannHiltonReport(
        size=size,
        unit=unit,
        operations_equal=equal,
        commutative=commutative,
        counterexample=counterexample,
    )
    if not report.passed:
        logger.error("Eckmann-Hilton conclusion fails", extra={"witness": counterexample})
    return report


def monoid_structures(size: int, unit: int) -> Iterator[Table]:
    """Every associative table on range(size) with the given two-sided unit."""
    others = [a for a in range(size) if a != unit]
    cells = list(itertools.product(others, repeat=2))
    for values in itertools.product(range(size), repeat=len(cells)):
        table = [[0] * size for _ in range(size)]
        for a in range(size):
            table[unit][a] = a
            table[a][unit] = a
        for (a, b), value in zip(cells, values):
            table[a][b] = value
        frozen = tuple(tuple(row) for row in table)
        if is_associative_table(frozen):
            yield frozen


def eckmann_hilton_scan(max_size: int = 3) -> EckmannHiltonScanReport:
    monoids_per_size: Dict[int, int] = {}
    pairs_per_size: Dict[int, int] = {}
    failures: List[EckmannHiltonReport] = []
    for size in range(1, max_size + 1):
        monoids = 0
        pairs = 0
        for unit in range(size):
            structures = list(monoid_structures(size, unit))
            monoids += len(structures)
            for op1, op2 in itertools.product(structures, repeat=2):
                if interchange_witness(op1, op2) is not None:
                    continue
                pairs += 1
                report = eckmann_hilton_check(size, op1, op2, unit)
                if not report.passed:
                    failures.append(report)
        monoids_per_size[size] = monoids
        pairs_per_size[size] = pairs
    logger.info("Eckmann-Hilton scan done", extra={"monoids": monoids_per_size, "pairs": pairs_per_size})
    return EckmannHiltonScanReport(
        max_size=max_size,
        monoids_per_size=monoids_per_size,
        interchange_pairs_per_size=pairs_per_size,
        noncommutative_pairs=len(failures),
        failures=failures,
    )
