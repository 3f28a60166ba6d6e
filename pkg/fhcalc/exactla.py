"""Exact linear algebra over Q and F_p, chain complexes and Hom complexes.

Conventions used everywhere in the package:

* Matrices act on column vectors; a differential d_n : C_n -> C_{n-1} is a
  ``dim C_{n-1} x dim C_n`` matrix whose j-th column is the image of the
  j-th basis vector.
* Indexing is homological.  A cohomological degree -i corresponds to
  homological degree i, so H^{-i}(Hom^*(V, W)) is reported as H_i.
* A complex is zero below ``lo``.  ``truncated`` means degrees above ``hi``
  exist but were not built; homology is then only valid through ``hi - 1``.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import isprime

from .errors import (
    ConsistencyError,
    DegreeRangeError,
    FieldError,
    FieldMismatchError,
    ShapeMismatchError,
)
from .logging_config import logger
from .models import ChainMapReport

Scalar = Union[int, Fraction]
Vector = Dict[int, Scalar]


@dataclass(frozen=True)
class Field:
    """Q when ``characteristic`` is 0, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p < 0 or (p != 0 and not isprime(p)):
            raise FieldError(f"F_{p} is not a field: {p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def label(self) -> str:
        return "Q" if self.is_rational else f"F_{self.characteristic}"

    def coerce(self, value: Union[int, Fraction, str]) -> Scalar:
        if isinstance(value, str):
            return self.parse(value)
        p = self.characteristic
        if p == 0:
            if isinstance(value, int):
                return value
            frac = Fraction(value)
            return frac.numerator if frac.denominator == 1 else frac
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} has no image in F_{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def reduce(self, value: Scalar) -> Scalar:
        if self.characteristic:
            return value % self.characteristic
        return value

    def inv(self, value: Scalar) -> Scalar:
        if value == 0:
            raise FieldError("division by zero")
        if self.characteristic:
            return pow(int(value), -1, self.characteristic)
        return Fraction(1) / Fraction(value)

    def parse(self, text: str) -> Scalar:
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a scalar: {text!r}") from exc
        return self.coerce(value)

    def format(self, value: Scalar) -> str:
        if self.characteristic:
            return f"{int(value) % self.characteristic} mod {self.characteristic}"
        frac = Fraction(value)
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{frac.numerator}/{frac.denominator}"

    def random_element(self, rng: random.Random, bound: int = 4) -> Scalar:
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return self.coerce(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))


def add_scaled(field: Field, target: Vector, source: Mapping[int, Scalar], scale: Scalar) -> None:
    """target += scale * source, in place; zero entries are dropped."""
    if not scale:
        return
    p = field.characteristic
    for key, value in source.items():
        new = target.get(key, 0) + scale * value
        if p:
            new %= p
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def _clean(field: Field, vector: Mapping[int, Union[int, Fraction, str]]) -> Vector:
    result: Vector = {}
    for key, value in vector.items():
        coerced = field.coerce(value)
        if coerced:
            result[key] = coerced
    return result


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Sparse storage, dense semantics: missing entries are zero."""

    field: Field
    nrows: int
    ncols: int
    data: Tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0 or len(self.data) != self.nrows:
            raise ShapeMismatchError(
                f"matrix data has {len(self.data)} rows, declared {self.nrows}"
            )
        for row in self.data:
            for col in row:
                if not 0 <= col < self.ncols:
                    raise ShapeMismatchError(f"column index {col} outside 0..{self.ncols - 1}")

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(field, nrows, ncols, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        return cls(field, n, n, tuple({i: 1} for i in range(n)))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Union[int, Fraction, str]]], ncols: Optional[int] = None) -> "ExactMatrix":
        width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        data = []
        for row in rows:
            if len(row) != width:
                raise ShapeMismatchError(f"ragged rows: expected {width} entries, got {len(row)}")
            data.append(_clean(field, dict(enumerate(row))))
        return cls(field, len(rows), width, tuple(data))

    @classmethod
    def from_sparse_rows(cls, field: Field, nrows: int, ncols: int, rows: Sequence[Mapping[int, Scalar]]) -> "ExactMatrix":
        return cls(field, nrows, ncols, tuple(_clean(field, row) for row in rows))

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "ExactMatrix":
        data: List[Vector] = [{} for _ in range(nrows)]
        for j, column in enumerate(columns):
            for i, value in column.items():
                if not 0 <= i < nrows:
                    raise ShapeMismatchError(f"row index {i} outside 0..{nrows - 1}")
                coerced = field.coerce(value)
                if coerced:
                    data[i][j] = coerced
        return cls(field, nrows, len(columns), tuple(data))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> Scalar:
        return self.data[i].get(j, 0)

    @cached_property
    def columns(self) -> Tuple[Vector, ...]:
        cols: List[Vector] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.data):
            for j, value in row.items():
                cols[j][i] = value
        return tuple(cols)

    def column(self, j: int) -> Vector:
        return dict(self.columns[j])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.ncols, self.nrows, tuple(dict(c) for c in self.columns))

    def is_zero(self) -> bool:
        return not any(self.data)

    def apply(self, vector: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        columns = self.columns
        for j, value in vector.items():
            add_scaled(self.field, result, columns[j], value)
        return result

    def _check_compatible(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.label} vs {other.field.label}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_compatible(other)
        if self.ncols != other.nrows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        rows: List[Vector] = []
        for row in self.data:
            acc: Vector = {}
            for k, value in row.items():
                add_scaled(self.field, acc, other.data[k], value)
            rows.append(acc)
        return ExactMatrix(self.field, self.nrows, other.ncols, tuple(rows))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_compatible(other)
        if self.shape != other.shape:
            raise ShapeMismatchError(f"cannot add {self.shape} and {other.shape}")
        rows = []
        for mine, theirs in zip(self.data, other.data):
            acc = dict(mine)
            add_scaled(self.field, acc, theirs, 1)
            rows.append(acc)
        return ExactMatrix(self.field, self.nrows, self.ncols, tuple(rows))

    def scale(self, factor: Scalar) -> "ExactMatrix":
        factor = self.field.coerce(factor)
        rows = []
        for row in self.data:
            acc: Vector = {}
            add_scaled(self.field, acc, row, factor)
            rows.append(acc)
        return ExactMatrix(self.field, self.nrows, self.ncols, tuple(rows))

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product, left factor major: (i, k) -> i * other.nrows + k."""
        self._check_compatible(other)
        rows: List[Vector] = []
        p = self.field.characteristic
        for row in self.data:
            for other_row in other.data:
                acc: Vector = {}
                for j, a in row.items():
                    for l, b in other_row.items():
                        value = a * b
                        if p:
                            value %= p
                        if value:
                            acc[j * other.ncols + l] = value
                rows.append(acc)
        return ExactMatrix(self.field, self.nrows * other.nrows, self.ncols * other.ncols, tuple(rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    __hash__ = None  # type: ignore[assignment]

    def to_dense(self) -> List[List[Scalar]]:
        return [[row.get(j, 0) for j in range(self.ncols)] for row in self.data]

    def render(self) -> List[List[str]]:
        return [[self.field.format(value) for value in row] for row in self.to_dense()]

    @cached_property
    def rank(self) -> int:
        vectors = self.data if self.nrows <= self.ncols else self.columns
        echelon = Echelon(self.field)
        for vector in vectors:
            echelon.add(vector)
        return echelon.rank


def rank(matrix: ExactMatrix) -> int:
    return matrix.rank


class Echelon:
    """Incremental sparse row echelon form.

    Every stored pivot row has its leading entry 1 at the pivot column and no
    entries left of it, so reducing a vector against the pivots in ascending
    column order clears every pivot column.
    """

    def __init__(self, field: Field, vectors: Iterable[Mapping[int, Scalar]] = ()) -> None:
        self.field = field
        self.pivots: Dict[int, Vector] = {}
        for vector in vectors:
            self.add(vector)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Mapping[int, Scalar]) -> Vector:
        p = self.field.characteristic
        work: Vector = {k: v for k, v in vector.items() if v}
        heap = list(work)
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            coeff = work.get(col)
            if not coeff:
                continue
            pivot = self.pivots.get(col)
            if pivot is None:
                continue
            for j, a in pivot.items():
                new = work.get(j, 0) - coeff * a
                if p:
                    new %= p
                if new:
                    if j not in work:
                        heapq.heappush(heap, j)
                    work[j] = new
                else:
                    work.pop(j, None)
        return work

    def add(self, vector: Mapping[int, Scalar]) -> bool:
        reduced = self.reduce(vector)
        if not reduced:
            return False
        lead = min(reduced)
        inverse = self.field.inv(reduced[lead])
        normalized: Vector = {}
        add_scaled(self.field, normalized, reduced, inverse)
        self.pivots[lead] = normalized
        return True

    def contains(self, vector: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vector)


# --- dense reference routines (independent of Echelon) -------------------


def rref_dense(field: Field, rows: Sequence[Sequence[Scalar]], ncols: int) -> Tuple[List[List[Scalar]], List[int]]:
    """Gauss-Jordan elimination on a dense copy; returns (rref rows, pivot columns)."""
    work = [[field.coerce(v) for v in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inverse = field.inv(work[r][c])
        work[r] = [field.reduce(v * inverse) for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [field.reduce(a - factor * b) for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rank_dense(matrix: ExactMatrix) -> int:
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    _, pivots = rref_dense(matrix.field, matrix.to_dense(), matrix.ncols)
    return len(pivots)


def kernel_basis(matrix: ExactMatrix) -> List[Vector]:
    """Null space basis from the dense reduced row echelon form."""
    field = matrix.field
    if matrix.nrows == 0:
        return [{j: 1} for j in range(matrix.ncols)]
    rref, pivots = rref_dense(field, matrix.to_dense(), matrix.ncols)
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(matrix.ncols):
        if free in pivot_set:
            continue
        vector: Vector = {free: 1}
        for row_index, pivot_col in enumerate(pivots):
            value = rref[row_index][free]
            if value:
                vector[pivot_col] = field.reduce(-value)
        basis.append(vector)
    return basis


def inverse(matrix: ExactMatrix) -> ExactMatrix:
    field = matrix.field
    n = matrix.nrows
    if matrix.ncols != n:
        raise ShapeMismatchError(f"cannot invert a {matrix.shape} matrix")
    augmented = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix.to_dense())]
    rref, pivots = rref_dense(field, augmented, 2 * n)
    if n and pivots[:n] != list(range(n)):
        raise FieldError("matrix is singular")
    return ExactMatrix.from_rows(field, [row[n:] for row in rref[:n]], n)


def solve(matrix: ExactMatrix, target: Mapping[int, Scalar]) -> Optional[Vector]:
    """Return some x with matrix @ x = target, or None when inconsistent."""
    field = matrix.field
    augmented = [row + [target.get(i, 0)] for i, row in enumerate(matrix.to_dense())]
    rref, pivots = rref_dense(field, augmented, matrix.ncols + 1)
    if matrix.ncols in pivots:
        return None
    solution: Vector = {}
    for row_index, pivot_col in enumerate(pivots):
        value = rref[row_index][matrix.ncols]
        if value:
            solution[pivot_col] = value
    return solution


def is_invertible(matrix: ExactMatrix) -> bool:
    return matrix.nrows == matrix.ncols and matrix.rank == matrix.nrows


def random_matrix(field: Field, nrows: int, ncols: int, rng: random.Random, density: float = 0.6) -> ExactMatrix:
    rows = [
        [field.random_element(rng) if rng.random() < density else 0 for _ in range(ncols)]
        for _ in range(nrows)
    ]
    return ExactMatrix.from_rows(field, rows, ncols)


def random_invertible(field: Field, n: int, rng: random.Random) -> ExactMatrix:
    while True:
        candidate = random_matrix(field, n, n, rng, density=0.8)
        if is_invertible(candidate):
            return candidate


# --- chain complexes ------------------------------------------------------


@dataclass(frozen=True)
class ChainComplex:
    field: Field
    lo: int
    hi: int
    dims: Mapping[int, int]
    differentials: Mapping[int, ExactMatrix]
    truncated: bool = False

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise ShapeMismatchError(f"empty degree range [{self.lo}, {self.hi}]")
        if set(self.dims) != set(range(self.lo, self.hi + 1)):
            raise ShapeMismatchError("dims must list every degree of the range")
        if set(self.differentials) != set(range(self.lo + 1, self.hi + 1)):
            raise ShapeMismatchError("differentials must cover degrees lo+1..hi")
        for n, d in self.differentials.items():
            if d.field != self.field:
                raise FieldMismatchError(f"differential {n} over {d.field.label}, complex over {self.field.label}")
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise ShapeMismatchError(
                    f"differential {n} has shape {d.shape}, expected {(self.dims[n - 1], self.dims[n])}"
                )
        for n in range(self.lo + 2, self.hi + 1):
            if not (self.differentials[n - 1] @ self.differentials[n]).is_zero():
                raise ConsistencyError(f"d_{n - 1} o d_{n} != 0")

    @classmethod
    def from_differentials(
        cls,
        field: Field,
        dims: Sequence[int],
        differentials: Sequence[ExactMatrix],
        lo: int = 0,
        truncated: bool = False,
    ) -> "ChainComplex":
        hi = lo + len(dims) - 1
        return cls(
            field,
            lo,
            hi,
            {lo + i: d for i, d in enumerate(dims)},
            {lo + 1 + i: m for i, m in enumerate(differentials)},
            truncated,
        )

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def known_differential(self, n: int) -> Optional[ExactMatrix]:
        """d_n when it is determined by the stored data, else None."""
        if self.lo < n <= self.hi:
            return self.differentials[n]
        if n > self.hi and self.truncated:
            return None
        return ExactMatrix.zeros(self.field, self.dim(n - 1), self.dim(n))

    def valid_degrees(self) -> range:
        top = self.hi - 1 if self.truncated else self.hi
        return range(self.lo, top + 1)


def _check_degrees(complex_: ChainComplex, degrees: Optional[Iterable[int]]) -> List[int]:
    valid = complex_.valid_degrees()
    if degrees is None:
        return list(valid)
    requested = list(degrees)
    for n in requested:
        if n not in valid:
            raise DegreeRangeError(
                f"H_{n} needs d_{n} and d_{n + 1}; the complex covers degrees "
                f"{complex_.lo}..{complex_.hi}" + (" (truncated)" if complex_.truncated else "")
            )
    return requested


def homology_dims(complex_: ChainComplex, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
    result: Dict[int, int] = {}
    for n in _check_degrees(complex_, degrees):
        incoming = complex_.known_differential(n + 1)
        outgoing = complex_.known_differential(n)
        assert incoming is not None and outgoing is not None
        result[n] = complex_.dim(n) - outgoing.rank - incoming.rank
    logger.debug("homology dims %s", result)
    return result


def naive_homology_dims(complex_: ChainComplex, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
    """Kernel basis minus image, both from the dense routine."""
    result: Dict[int, int] = {}
    for n in _check_degrees(complex_, degrees):
        outgoing = complex_.known_differential(n)
        incoming = complex_.known_differential(n + 1)
        assert incoming is not None and outgoing is not None
        kernel = kernel_basis(outgoing) if outgoing.nrows else [{j: 1} for j in range(complex_.dim(n))]
        result[n] = len(kernel) - rank_dense(incoming)
    return result


def euler_characteristic(complex_: ChainComplex) -> int:
    return sum((-1) ** n * d for n, d in complex_.dims.items())


def homology_euler_characteristic(complex_: ChainComplex) -> int:
    if complex_.truncated:
        raise DegreeRangeError("Euler characteristic of homology needs an untruncated complex")
    return sum((-1) ** n * d for n, d in homology_dims(complex_).items())


@dataclass(frozen=True)
class ChainMap:
    """Components f_n : C_n -> D_{n + shift}."""

    source: ChainComplex
    target: ChainComplex
    shift: int
    components: Mapping[int, ExactMatrix]

    def __post_init__(self) -> None:
        if self.source.field != self.target.field:
            raise FieldMismatchError("chain map between complexes over different fields")
        for n, f in self.components.items():
            expected = (self.target.dim(n + self.shift), self.source.dim(n))
            if f.shape != expected:
                raise ShapeMismatchError(f"component {n} has shape {f.shape}, expected {expected}")

    def component(self, n: int) -> Optional[ExactMatrix]:
        if n in self.components:
            return self.components[n]
        if self.source.dim(n) == 0:
            return ExactMatrix.zeros(self.source.field, self.target.dim(n + self.shift), 0)
        return None


def chain_map_check(chain_map: ChainMap) -> ChainMapReport:
    """d f = (-1)^shift f d at every degree where both sides are stored."""
    sign = -1 if chain_map.shift % 2 else 1
    checked: List[int] = []
    for n in sorted(chain_map.components):
        d_target = chain_map.target.known_differential(n + chain_map.shift)
        d_source = chain_map.source.known_differential(n)
        previous = chain_map.component(n - 1)
        if d_target is None or d_source is None or previous is None:
            continue
        left = d_target @ chain_map.components[n]
        right = (previous @ d_source).scale(sign)
        checked.append(n)
        if left != right:
            logger.warning("chain map fails to commute at degree %d", n)
            return ChainMapReport(commutes=False, checked_degrees=checked, first_violation=n)
    return ChainMapReport(commutes=True, checked_degrees=checked, first_violation=None)


def hom_complex(source: ChainComplex, target: ChainComplex) -> ChainComplex:
    """Hom(V, W) with degree i = maps V_j -> W_{j+i}; H_i = H^{-i}(Hom^*).

    d(f) = d_W f - (-1)^i f d_V.  Basis of degree i: triples (j, r, s) for
    the matrix unit E_{rs} in Hom(V_j, W_{j+i}), ordered by j, then r, then s.
    """
    if source.field != target.field:
        raise FieldMismatchError(f"{source.field.label} vs {target.field.label}")
    if source.truncated or target.truncated:
        raise DegreeRangeError("Hom complex needs untruncated source and target")
    field = source.field
    lo = target.lo - source.hi
    hi = target.hi - source.lo

    bases: Dict[int, List[Tuple[int, int, int]]] = {}
    for i in range(lo, hi + 1):
        bases[i] = [
            (j, r, s)
            for j in range(source.lo, source.hi + 1)
            for r in range(target.dim(j + i))
            for s in range(source.dim(j))
        ]
    index = {i: {key: k for k, key in enumerate(basis)} for i, basis in bases.items()}

    differentials: Dict[int, ExactMatrix] = {}
    for i in range(lo + 1, hi + 1):
        sign = -1 if i % 2 else 1
        lower = index[i - 1]
        columns: List[Vector] = []
        for j, r, s in bases[i]:
            column: Vector = {}
            d_w = target.known_differential(j + i)
            assert d_w is not None
            for r2, value in d_w.columns[r].items():
                add_scaled(field, column, {lower[(j, r2, s)]: value}, 1)
            if source.lo <= j + 1 <= source.hi:
                d_v = source.differentials[j + 1]
                for s2, value in d_v.data[s].items():
                    add_scaled(field, column, {lower[(j + 1, r, s2)]: value}, -sign)
            columns.append(column)
        differentials[i] = ExactMatrix.from_columns(field, len(bases[i - 1]), columns)

    dims = {i: len(basis) for i, basis in bases.items()}
    logger.info("hom complex built", extra={"degrees": [lo, hi], "dims": dims})
    return ChainComplex(field, lo, hi, dims, differentials)
