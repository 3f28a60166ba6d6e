"""Level-truncated finite simplicial sets, nerves, horns and Loday complexes.

A ``SimplicialSet`` stores levels 0..L.  ``faces[n][i][x]`` is d_i of the
x-th element of X_n (n >= 1) and ``degeneracies[n][i][x]`` is s_i of it
(n < L).  Elements are addressed by their index within a level.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import Algebra, unit_adapted
from .config import get_budget
from .errors import (
    CategoryError,
    LevelMismatchError,
    NonCommutativeError,
    SimplicialError,
    check_budget,
)
from .exactla import ChainComplex, Echelon, ExactMatrix, Field, Scalar, Vector, add_scaled, homology_dims
from .hochschild import hh_dims, hochschild_complex
from .logging_config import logger
from .models import HornReport, TorusReport

Table = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    level: int
    labels: Tuple[Tuple[str, ...], ...]
    faces: Tuple[Tuple[Table, ...], ...]
    degeneracies: Tuple[Tuple[Table, ...], ...]
    name: str = ""
    dimension: Optional[int] = None

    def __post_init__(self) -> None:
        L = self.level
        if L < 0 or len(self.labels) != L + 1:
            raise SimplicialError(f"need element lists for levels 0..{L}")
        if len(self.faces) != L + 1 or len(self.degeneracies) != L + 1:
            raise SimplicialError("face and degeneracy tables must cover every level")
        for n in range(L + 1):
            if len(set(self.labels[n])) != len(self.labels[n]):
                raise SimplicialError(f"duplicate element names at level {n}")
            expected_faces = n + 1 if n >= 1 else 0
            self._check_tables(self.faces[n], expected_faces, n, n - 1, "face")
            expected_degens = n + 1 if n < L else 0
            self._check_tables(self.degeneracies[n], expected_degens, n, n + 1, "degeneracy")
        self._check_identities()

    def _check_tables(self, tables: Tuple[Table, ...], count: int, n: int, target: int, kind: str) -> None:
        if len(tables) != count:
            raise SimplicialError(f"level {n} needs {count} {kind} maps, got {len(tables)}")
        for i, table in enumerate(tables):
            if len(table) != len(self.labels[n]):
                raise SimplicialError(f"{kind} {i} at level {n} must be defined on every element")
            for image in table:
                if not 0 <= image < len(self.labels[target]):
                    raise SimplicialError(f"{kind} {i} at level {n} points outside level {target}")

    def _fail(self, identity: str, n: int, x: int) -> None:
        raise SimplicialError(f"simplicial identity {identity} fails at level {n} on {self.labels[n][x]}")

    def _check_identities(self) -> None:
        d, s, L = self.faces, self.degeneracies, self.level
        for n in range(2, L + 1):
            for x in range(len(self.labels[n])):
                for i, j in itertools.combinations(range(n + 1), 2):
                    if d[n - 1][i][d[n][j][x]] != d[n - 1][j - 1][d[n][i][x]]:
                        self._fail(f"d{i} d{j} = d{j - 1} d{i}", n, x)
        for n in range(L - 1):
            for x in range(len(self.labels[n])):
                for i in range(n + 1):
                    for j in range(i, n + 1):
                        if s[n + 1][i][s[n][j][x]] != s[n + 1][j + 1][s[n][i][x]]:
                            self._fail(f"s{i} s{j} = s{j + 1} s{i}", n, x)
        for n in range(L):
            for x in range(len(self.labels[n])):
                for j in range(n + 1):
                    y = s[n][j][x]
                    for i in range(n + 2):
                        image = d[n + 1][i][y]
                        if i in (j, j + 1):
                            expected = x
                        elif i < j:
                            expected = s[n - 1][j - 1][d[n][i][x]]
                        else:
                            expected = s[n - 1][j][d[n][i - 1][x]]
                        if image != expected:
                            self._fail(f"d{i} s{j}", n, x)

    def size(self, n: int) -> int:
        return len(self.labels[n])

    @cached_property
    def degenerate(self) -> Tuple[FrozenSet[int], ...]:
        flags = [frozenset()]
        for n in range(1, self.level + 1):
            flags.append(frozenset(itertools.chain.from_iterable(self.degeneracies[n - 1])))
        return tuple(flags)

    def nondegenerate(self, n: int) -> Tuple[int, ...]:
        return tuple(x for x in range(self.size(n)) if x not in self.degenerate[n])

    def is_degenerate(self, n: int, x: int) -> bool:
        return x in self.degenerate[n]

    @cached_property
    def _index(self) -> Tuple[Dict[str, int], ...]:
        return tuple({label: k for k, label in enumerate(level)} for level in self.labels)

    def element(self, n: int, label: str) -> int:
        try:
            return self._index[n][label]
        except KeyError as exc:
            raise SimplicialError(f"no element {label!r} at level {n}") from exc

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degeneracy(self, n: int, i: int, x: int) -> int:
        return self.degeneracies[n][i][x]

    def sizes(self) -> List[int]:
        return [self.size(n) for n in range(self.level + 1)]

    def nondegenerate_counts(self) -> List[int]:
        return [len(self.nondegenerate(n)) for n in range(self.level + 1)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return (
            self.level == other.level
            and self.labels == other.labels
            and self.faces == other.faces
            and self.degeneracies == other.degeneracies
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class SSetMap:
    source: SimplicialSet
    target: SimplicialSet
    levels: Tuple[Table, ...]

    def validate(self) -> "SSetMap":
        if self.source.level != self.target.level or len(self.levels) != self.source.level + 1:
            raise LevelMismatchError("map must be defined on every level of equal-level simplicial sets")
        X, Y, f = self.source, self.target, self.levels
        for n in range(X.level + 1):
            for x in range(X.size(n)):
                for i in range(n + 1):
                    if n >= 1 and Y.faces[n][i][f[n][x]] != f[n - 1][X.faces[n][i][x]]:
                        raise SimplicialError(f"map does not commute with d{i} at level {n}")
                    if n < X.level and Y.degeneracies[n][i][f[n][x]] != f[n + 1][X.degeneracies[n][i][x]]:
                        raise SimplicialError(f"map does not commute with s{i} at level {n}")
        return self

    def is_bijective(self) -> bool:
        return all(
            sorted(self.levels[n]) == list(range(self.target.size(n)))
            for n in range(self.source.level + 1)
        )


# --- building from nondegenerate generators ----------------------------------


@dataclass(frozen=True)
class Generator:
    """A nondegenerate simplex; faces are (generator name, surjection) pairs."""

    name: str
    degree: int
    faces: Tuple[Tuple[str, Table], ...] = ()


def face_ref(name: str, surjection: Optional[Sequence[int]] = None, degree: int = 0) -> Tuple[str, Table]:
    return name, tuple(surjection) if surjection is not None else tuple(range(degree + 1))


def surjections(n: int, k: int) -> Iterator[Table]:
    """Nondecreasing surjections [n] -> [k], ordered by their jump positions."""
    for jumps in itertools.combinations(range(1, n + 1), k):
        yield tuple(sum(1 for j in jumps if j <= t) for t in range(n + 1))


def _element_label(generator: Generator, surjection: Table) -> str:
    if len(surjection) == generator.degree + 1:
        return generator.name
    sep = "" if generator.degree < 10 else ","
    return f"{generator.name}<{sep.join(map(str, surjection))}>"


def from_generators(
    level: int,
    generators: Sequence[Generator],
    name: str = "",
    dimension: Optional[int] = None,
) -> SimplicialSet:
    """Eilenberg-Zilber normal form: every element is (generator, surjection)."""
    by_name = {g.name: g for g in generators}
    if len(by_name) != len(generators):
        raise SimplicialError("duplicate generator names")
    for g in generators:
        expected = g.degree + 1 if g.degree >= 1 else 0
        if len(g.faces) != expected:
            raise SimplicialError(f"generator {g.name} of degree {g.degree} needs {expected} faces")
        for ref, surj in g.faces:
            h = by_name.get(ref)
            if h is None:
                raise SimplicialError(f"generator {g.name} refers to unknown face {ref}")
            if len(surj) != g.degree or surj[0] != 0 or surj[-1] != h.degree or any(
                b - a not in (0, 1) for a, b in zip(surj, surj[1:])
            ):
                raise SimplicialError(f"face {ref}{list(surj)} of {g.name} is not a surjection [{g.degree - 1}] -> [{h.degree}]")

    elements: List[List[Tuple[str, Table]]] = []
    for n in range(level + 1):
        elements.append([(g.name, s) for g in generators if g.degree <= n for s in surjections(n, g.degree)])
    index = [{e: k for k, e in enumerate(level_elements)} for level_elements in elements]

    def apply_face(element: Tuple[str, Table], i: int) -> Tuple[str, Table]:
        gname, surj = element
        g = by_name[gname]
        remaining = surj[:i] + surj[i + 1:]
        if set(remaining) == set(range(g.degree + 1)):
            return gname, remaining
        missing = surj[i]
        hname, tau = g.faces[missing]
        lowered = tuple(v - 1 if v > missing else v for v in remaining)
        return hname, tuple(tau[v] for v in lowered)

    faces: List[Tuple[Table, ...]] = [()]
    for n in range(1, level + 1):
        faces.append(tuple(
            tuple(index[n - 1][apply_face(e, i)] for e in elements[n]) for i in range(n + 1)
        ))
    degeneracies: List[Tuple[Table, ...]] = []
    for n in range(level + 1):
        if n == level:
            degeneracies.append(())
            continue
        degeneracies.append(tuple(
            tuple(index[n + 1][(g, s[:i + 1] + s[i:])] for g, s in elements[n]) for i in range(n + 1)
        ))
    labels = tuple(tuple(_element_label(by_name[g], s) for g, s in level_elements) for level_elements in elements)
    if dimension is None:
        dimension = max((g.degree for g in generators), default=0)
    return SimplicialSet(level, labels, tuple(faces), tuple(degeneracies), name, dimension)


# --- built-in simplicial sets -------------------------------------------------


def _simplex_subcomplex(
    n: int,
    level: int,
    keep: Callable[[FrozenSet[int]], bool],
    name: str,
    dimension: int,
) -> SimplicialSet:
    """Subcomplexes of Δ^n: nondecreasing maps [m] -> [n] whose image satisfies ``keep``."""
    sep = "" if n < 10 else ","
    elements = [
        [t for t in itertools.combinations_with_replacement(range(n + 1), m + 1) if keep(frozenset(t))]
        for m in range(level + 1)
    ]
    index = [{t: k for k, t in enumerate(level_elements)} for level_elements in elements]
    faces: List[Tuple[Table, ...]] = [()]
    for m in range(1, level + 1):
        faces.append(tuple(
            tuple(index[m - 1][t[:i] + t[i + 1:]] for t in elements[m]) for i in range(m + 1)
        ))
    degeneracies: List[Tuple[Table, ...]] = []
    for m in range(level + 1):
        if m == level:
            degeneracies.append(())
            continue
        degeneracies.append(tuple(
            tuple(index[m + 1][t[:i + 1] + t[i:]] for t in elements[m]) for i in range(m + 1)
        ))
    labels = tuple(tuple("v" + sep.join(map(str, t)) for t in level_elements) for level_elements in elements)
    return SimplicialSet(level, labels, tuple(faces), tuple(degeneracies), name, dimension)


def standard_simplex(n: int, level: int) -> SimplicialSet:
    return _simplex_subcomplex(n, level, lambda image: True, f"Delta{n}", n)


def point(level: int) -> SimplicialSet:
    return standard_simplex(0, level)


def boundary(n: int, level: int) -> SimplicialSet:
    full = frozenset(range(n + 1))
    return _simplex_subcomplex(n, level, lambda image: image != full, f"dDelta{n}", n - 1)


def horn(n: int, k: int, level: int) -> SimplicialSet:
    """Union of the faces d_i Δ^n with i != k."""
    if not 0 <= k <= n:
        raise SimplicialError(f"horn index {k} outside 0..{n}")
    others = [i for i in range(n + 1) if i != k]
    return _simplex_subcomplex(
        n, level, lambda image: any(i not in image for i in others), f"Lambda{n}_{k}", n - 1
    )


def minimal_circle(level: int) -> SimplicialSet:
    """Δ^1/∂Δ^1: one vertex p, one edge e."""
    generators = [Generator("p", 0), Generator("e", 1, (face_ref("p"), face_ref("p")))]
    return from_generators(level, generators, "S1")


def two_vertex_circle(level: int) -> SimplicialSet:
    generators = [
        Generator("v0", 0),
        Generator("v1", 0),
        Generator("e0", 1, (face_ref("v1"), face_ref("v0"))),
        Generator("e1", 1, (face_ref("v0"), face_ref("v1"))),
    ]
    return from_generators(level, generators, "S1_two_vertex")


def sphere_quotient(level: int) -> SimplicialSet:
    """Δ^2/∂Δ^2: every face of σ is the degenerate edge on p."""
    collapsed = face_ref("p", (0, 0))
    generators = [Generator("p", 0), Generator("sigma", 2, (collapsed, collapsed, collapsed))]
    return from_generators(level, generators, "S2")


def sphere_suspension(level: int) -> SimplicialSet:
    """Unreduced suspension of the minimal circle: a cone to N and a cone to S glued along e."""
    generators = [
        Generator("p", 0),
        Generator("N", 0),
        Generator("S", 0),
        Generator("e", 1, (face_ref("p"), face_ref("p"))),
        Generator("a", 1, (face_ref("N"), face_ref("p"))),
        Generator("b", 1, (face_ref("S"), face_ref("p"))),
        Generator("sigma", 2, (face_ref("a", degree=1), face_ref("a", degree=1), face_ref("e", degree=1))),
        Generator("tau", 2, (face_ref("b", degree=1), face_ref("b", degree=1), face_ref("e", degree=1))),
    ]
    return from_generators(level, generators, "S2_suspension")


def product(left: SimplicialSet, right: SimplicialSet) -> SimplicialSet:
    """Levelwise product; (x, y) sits at index x * |Y_n| + y."""
    if left.level != right.level:
        raise LevelMismatchError(f"levels differ: {left.level} vs {right.level}")
    L = left.level

    def pair_table(a: Table, b: Table, width: int) -> Table:
        return tuple(a[x] * width + b[y] for x in range(len(a)) for y in range(len(b)))

    labels = tuple(
        tuple(f"({x},{y})" for x in left.labels[n] for y in right.labels[n]) for n in range(L + 1)
    )
    faces: List[Tuple[Table, ...]] = [()]
    for n in range(1, L + 1):
        width = right.size(n - 1)
        faces.append(tuple(pair_table(left.faces[n][i], right.faces[n][i], width) for i in range(n + 1)))
    degeneracies: List[Tuple[Table, ...]] = []
    for n in range(L + 1):
        if n == L:
            degeneracies.append(())
            continue
        width = right.size(n + 1)
        degeneracies.append(tuple(
            pair_table(left.degeneracies[n][i], right.degeneracies[n][i], width) for i in range(n + 1)
        ))
    dimension = None
    if left.dimension is not None and right.dimension is not None:
        dimension = left.dimension + right.dimension
    name = f"{left.name}x{right.name}" if left.name and right.name else ""
    return SimplicialSet(L, labels, tuple(faces), tuple(degeneracies), name, dimension)


def projection(left: SimplicialSet, right: SimplicialSet, side: int = 0) -> SSetMap:
    source = product(left, right)
    levels = tuple(
        tuple((x if side == 0 else y) for x in range(left.size(n)) for y in range(right.size(n)))
        for n in range(left.level + 1)
    )
    return SSetMap(source, left if side == 0 else right, levels).validate()


def torus(level: int) -> SimplicialSet:
    result = product(minimal_circle(level), minimal_circle(level))
    return SimplicialSet(result.level, result.labels, result.faces, result.degeneracies, "T2", result.dimension)


def euler_characteristic(simplicial_set: SimplicialSet) -> int:
    return sum((-1) ** n * c for n, c in enumerate(simplicial_set.nondegenerate_counts()))


def normalized_chains(simplicial_set: SimplicialSet, field: Optional[Field] = None) -> ChainComplex:
    """Chains on nondegenerate simplices; complete when the known dimension fits in the levels."""
    field = field or Field.rationals()
    X = simplicial_set
    bases = [X.nondegenerate(n) for n in range(X.level + 1)]
    positions = [{x: k for k, x in enumerate(basis)} for basis in bases]
    differentials: Dict[int, ExactMatrix] = {}
    for n in range(1, X.level + 1):
        columns: List[Vector] = []
        for x in bases[n]:
            column: Vector = {}
            for i in range(n + 1):
                k = positions[n - 1].get(X.faces[n][i][x])
                if k is not None:
                    add_scaled(field, column, {k: 1}, -1 if i % 2 else 1)
            columns.append(column)
        differentials[n] = ExactMatrix.from_columns(field, len(bases[n - 1]), columns)
    truncated = X.dimension is None or X.dimension > X.level
    dims = {n: len(b) for n, b in enumerate(bases)}
    return ChainComplex(field, 0, X.level, dims, differentials, truncated)


# --- horns ----------------------------------------------------------------------


def _horn_tuples(X: SimplicialSet, n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Compatible families (y_i)_{i != k} of (n-1)-simplices: d_i y_j = d_{j-1} y_i for i < j."""
    positions = [i for i in range(n + 1) if i != k]
    d = X.faces

    def extend(chosen: Dict[int, int], depth: int) -> Iterator[Tuple[int, ...]]:
        if depth == len(positions):
            yield tuple(chosen[i] for i in positions)
            return
        j = positions[depth]
        for y in range(X.size(n - 1)):
            if n >= 2 and any(d[n - 1][i][y] != d[n - 1][j - 1][chosen[i]] for i in positions[:depth]):
                continue
            chosen[j] = y
            yield from extend(chosen, depth + 1)
            del chosen[j]

    yield from extend({}, 0)


def _filler_counts(X: SimplicialSet, n: int, k: int) -> Dict[Tuple[int, ...], int]:
    counts: Dict[Tuple[int, ...], int] = {}
    for x in range(X.size(n)):
        key = tuple(X.faces[n][i][x] for i in range(n + 1) if i != k)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _check_horn(X: SimplicialSet, n: int, k: int) -> None:
    if n < 1 or n > X.level:
        raise LevelMismatchError(f"horns of dimension {n} need levels 1..{X.level}")
    if not 0 <= k <= n:
        raise SimplicialError(f"horn index {k} outside 0..{n}")


def horn_fillers(X: SimplicialSet, n: int, k: int, faces: Sequence[int]) -> int:
    """Fillers of the horn whose faces (indices in X_{n-1}, k-th omitted) are given."""
    _check_horn(X, n, k)
    return _filler_counts(X, n, k).get(tuple(faces), 0)


def horn_check(X: SimplicialSet, n: int, k: int) -> HornReport:
    _check_horn(X, n, k)
    counts = _filler_counts(X, n, k)
    horns = 0
    fillable = 0
    low: Optional[int] = None
    high: Optional[int] = None
    for family in _horn_tuples(X, n, k):
        horns += 1
        c = counts.get(family, 0)
        fillable += c > 0
        low = c if low is None else min(low, c)
        high = c if high is None else max(high, c)
    logger.debug("horn check", extra={"set": X.name, "n": n, "k": k, "horns": horns, "fillable": fillable})
    return HornReport(n=n, k=k, horns=horns, fillable=fillable, max_fillers=high, min_fillers=low)


def kan_report(X: SimplicialSet, max_n: Optional[int] = None, inner_only: bool = False) -> List[HornReport]:
    top = X.level if max_n is None else max_n
    reports = []
    for n in range(1 if not inner_only else 2, top + 1):
        ks = range(1, n) if inner_only else range(n + 1)
        reports.extend(horn_check(X, n, k) for k in ks)
    return reports


# --- categories and nerves -------------------------------------------------------


@dataclass(frozen=True)
class FinCategory:
    objects: Tuple[str, ...]
    morphisms: Tuple[str, ...]
    source: Tuple[int, ...]
    target: Tuple[int, ...]
    identities: Tuple[int, ...]
    composition: Mapping[Tuple[int, int], int] = field(hash=False)
    name: str = ""

    def compose(self, g: int, f: int) -> int:
        """g o f."""
        return self.composition[(g, f)]

    def composable(self, g: int, f: int) -> bool:
        return self.target[f] == self.source[g]

    def validate(self) -> "FinCategory":
        n_obj, n_mor = len(self.objects), len(self.morphisms)
        if len(self.source) != n_mor or len(self.target) != n_mor or len(self.identities) != n_obj:
            raise CategoryError("source, target and identity tables have the wrong length")
        for obj, ident in enumerate(self.identities):
            if self.source[ident] != obj or self.target[ident] != obj:
                raise CategoryError(f"identity of {self.objects[obj]} is not an endomorphism of it")
        for g, f in itertools.product(range(n_mor), repeat=2):
            if not self.composable(g, f):
                continue
            gf = self.composition.get((g, f))
            if gf is None:
                raise CategoryError(f"missing composite {self.morphisms[g]} o {self.morphisms[f]}")
            if self.source[gf] != self.source[f] or self.target[gf] != self.target[g]:
                raise CategoryError(f"composite {self.morphisms[g]} o {self.morphisms[f]} has wrong endpoints")
        for f in range(n_mor):
            if self.compose(self.identities[self.target[f]], f) != f or self.compose(f, self.identities[self.source[f]]) != f:
                raise CategoryError(f"identities are not units for {self.morphisms[f]}")
        for h, g, f in itertools.product(range(n_mor), repeat=3):
            if self.composable(h, g) and self.composable(g, f):
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    raise CategoryError(
                        f"composition is not associative at ({self.morphisms[h]}, {self.morphisms[g]}, {self.morphisms[f]})"
                    )
        return self

    @cached_property
    def nondegenerate_length(self) -> Optional[int]:
        """Longest chain of composable non-identity morphisms, None if unbounded."""
        ident = set(self.identities)
        edges = [f for f in range(len(self.morphisms)) if f not in ident]
        longest: Dict[int, int] = {}
        visiting: set = set()

        def depth(obj: int) -> Optional[int]:
            if obj in longest:
                return longest[obj]
            if obj in visiting:
                return None
            visiting.add(obj)
            best = 0
            for f in edges:
                if self.source[f] == obj:
                    sub = depth(self.target[f])
                    if sub is None:
                        return None
                    best = max(best, sub + 1)
            visiting.discard(obj)
            longest[obj] = best
            return best

        results = [depth(obj) for obj in range(len(self.objects))]
        if any(r is None for r in results):
            return None
        return max(results, default=0)


def _category(objects, morphisms, source, target, identities, composition, name) -> FinCategory:
    return FinCategory(
        tuple(objects), tuple(morphisms), tuple(source), tuple(target), tuple(identities), dict(composition), name
    ).validate()


def terminal_category() -> FinCategory:
    return _category(["*"], ["id"], [0], [0], [0], {(0, 0): 0}, "terminal")


def poset_chain(n: int) -> FinCategory:
    """[n] = 0 < 1 < ... < n."""
    arrows = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    index = {a: k for k, a in enumerate(arrows)}
    composition = {
        (index[(j, l)], index[(i, j)]): index[(i, l)]
        for (i, j) in arrows
        for (j2, l) in arrows
        if j2 == j
    }
    return _category(
        [str(i) for i in range(n + 1)],
        [f"{i}-{j}" for i, j in arrows],
        [i for i, _ in arrows],
        [j for _, j in arrows],
        [index[(i, i)] for i in range(n + 1)],
        composition,
        f"[{n}]",
    )


def cyclic_group_category(n: int) -> FinCategory:
    """One object, morphisms g0..g(n-1) composing by addition mod n."""
    composition = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return _category(["*"], [f"g{a}" for a in range(n)], [0] * n, [0] * n, [0], composition, f"Z{n}")


def idempotent_monoid() -> FinCategory:
    composition = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    return _category(["*"], ["id", "e"], [0, 0], [0, 0], [0], composition, "idempotent")


def random_poset(rng: random.Random, size: int, density: float = 0.4) -> FinCategory:
    """Transitive closure of a random order relation refining 0 < 1 < ... < size-1."""
    relation = {(i, i) for i in range(size)}
    for i, j in itertools.combinations(range(size), 2):
        if rng.random() < density:
            relation.add((i, j))
    changed = True
    while changed:
        changed = False
        for (i, j), (j2, l) in itertools.product(sorted(relation), repeat=2):
            if j == j2 and (i, l) not in relation:
                relation.add((i, l))
                changed = True
    arrows = sorted(relation)
    index = {a: k for k, a in enumerate(arrows)}
    composition = {
        (index[(j, l)], index[(i, j)]): index[(i, l)]
        for (i, j) in arrows
        for (j2, l) in arrows
        if j2 == j
    }
    return _category(
        [str(i) for i in range(size)],
        [f"{i}-{j}" for i, j in arrows],
        [i for i, _ in arrows],
        [j for _, j in arrows],
        [index[(i, i)] for i in range(size)],
        composition,
        f"poset{size}",
    )


def nerve(category: FinCategory, level: int) -> SimplicialSet:
    """Level n lists composable chains x0 -f1-> x1 ... -fn-> xn, lexicographically in (f1, ..., fn)."""
    C = category
    chains: List[List[Tuple[int, ...]]] = [[(obj,) for obj in range(len(C.objects))]]
    for n in range(1, level + 1):
        chains.append([
            fs
            for fs in itertools.product(range(len(C.morphisms)), repeat=n)
            if all(C.composable(fs[t + 1], fs[t]) for t in range(n - 1))
        ])
    index = [{c: k for k, c in enumerate(level_chains)} for level_chains in chains]

    def objects_of(n: int, chain: Tuple[int, ...]) -> List[int]:
        if n == 0:
            return [chain[0]]
        return [C.source[chain[0]]] + [C.target[f] for f in chain]

    def face(n: int, i: int, chain: Tuple[int, ...]) -> Tuple[int, ...]:
        if n == 1:
            return (C.target[chain[0]],) if i == 0 else (C.source[chain[0]],)
        if i == 0:
            return chain[1:]
        if i == n:
            return chain[:-1]
        return chain[:i - 1] + (C.compose(chain[i], chain[i - 1]),) + chain[i + 1:]

    def degeneracy(n: int, i: int, chain: Tuple[int, ...]) -> Tuple[int, ...]:
        identity = C.identities[objects_of(n, chain)[i]]
        if n == 0:
            return (identity,)
        return chain[:i] + (identity,) + chain[i:]

    faces: List[Tuple[Table, ...]] = [()]
    for n in range(1, level + 1):
        faces.append(tuple(
            tuple(index[n - 1][face(n, i, c)] for c in chains[n]) for i in range(n + 1)
        ))
    degeneracies: List[Tuple[Table, ...]] = []
    for n in range(level + 1):
        if n == level:
            degeneracies.append(())
            continue
        degeneracies.append(tuple(
            tuple(index[n + 1][degeneracy(n, i, c)] for c in chains[n]) for i in range(n + 1)
        ))
    labels = [tuple(C.objects[c[0]] for c in chains[0])]
    for n in range(1, level + 1):
        labels.append(tuple("|".join(C.morphisms[f] for f in c) for c in chains[n]))
    return SimplicialSet(
        level, tuple(labels), tuple(faces), tuple(degeneracies), f"N({C.name})", C.nondegenerate_length
    )


# --- Loday construction -----------------------------------------------------------


def _tensor_index(coords: Sequence[int], d: int) -> int:
    index = 0
    for c in coords:
        index = index * d + c
    return index


def _tensor_coords(index: int, d: int, length: int) -> List[int]:
    coords = [0] * length
    for pos in range(length - 1, -1, -1):
        index, coords[pos] = divmod(index, d)
    return coords


def _pushforward(algebra: Algebra, mapping: Table, target_size: int, coords: Sequence[int]) -> Vector:
    """Image of a basis tensor along a map of finite sets: multiply each fiber in index order."""
    fibers: List[Vector] = [dict(algebra.unit_vector) for _ in range(target_size)]
    started = [False] * target_size
    for position, image in enumerate(mapping):
        factor = {coords[position]: 1}
        if started[image]:
            fibers[image] = algebra.multiply(fibers[image], factor)
        else:
            fibers[image] = factor
            started[image] = True
    d = algebra.dim
    field = algebra.field
    result: Vector = {}
    for terms in itertools.product(*(fiber.items() for fiber in fibers)):
        coefficient: Scalar = 1
        for _, value in terms:
            coefficient = field.reduce(coefficient * value)
        if coefficient:
            add_scaled(field, result, {_tensor_index([k for k, _ in terms], d): coefficient}, 1)
    return result


def loday_size(algebra: Algebra, X: SimplicialSet, maxdeg: int) -> int:
    return sum(algebra.dim ** X.size(n) for n in range(maxdeg + 1))


def loday(
    algebra: Algebra,
    X: SimplicialSet,
    maxdeg: int,
    budget: Optional[int] = None,
) -> ChainComplex:
    """Normalized Loday complex: A^{⊗X_n} modulo the images of the degeneracies.

    Degree-n basis tensors are indexed in mixed radix dim(A), first element of
    X_n most significant; the normalized basis is the non-pivot indices of the
    degenerate subspace.
    """
    if not algebra.is_commutative:
        raise NonCommutativeError("the Loday construction needs a commutative algebra")
    if maxdeg < 1 or maxdeg > X.level:
        raise LevelMismatchError(f"maxdeg {maxdeg} needs levels 1..{X.level}")
    budget = get_budget() if budget is None else budget
    check_budget("Loday complex", loday_size(algebra, X, maxdeg), budget)
    d = algebra.dim
    field = algebra.field

    degenerate: List[Echelon] = []
    for n in range(maxdeg + 1):
        echelon = Echelon(field)
        if n >= 1:
            for j in range(n):
                mapping = X.degeneracies[n - 1][j]
                for t in range(d ** X.size(n - 1)):
                    coords = _tensor_coords(t, d, X.size(n - 1))
                    echelon.add(_pushforward(algebra, mapping, X.size(n), coords))
        degenerate.append(echelon)

    complements = [
        [t for t in range(d ** X.size(n)) if t not in degenerate[n].pivots] for n in range(maxdeg + 1)
    ]
    positions = [{t: k for k, t in enumerate(c)} for c in complements]
    differentials: Dict[int, ExactMatrix] = {}
    for n in range(1, maxdeg + 1):
        columns: List[Vector] = []
        for t in complements[n]:
            coords = _tensor_coords(t, d, X.size(n))
            total: Vector = {}
            for i in range(n + 1):
                image = _pushforward(algebra, X.faces[n][i], X.size(n - 1), coords)
                add_scaled(field, total, image, -1 if i % 2 else 1)
            reduced = degenerate[n - 1].reduce(total)
            columns.append({positions[n - 1][k]: v for k, v in reduced.items()})
        differentials[n] = ExactMatrix.from_columns(field, len(complements[n - 1]), columns)
    dims = {n: len(c) for n, c in enumerate(complements)}
    logger.info("Loday complex built", extra={"algebra": algebra.name, "space": X.name, "dims": dims})
    return ChainComplex(field, 0, maxdeg, dims, differentials, truncated=True)


def loday_matches_hochschild(algebra: Algebra, maxdeg: int, budget: Optional[int] = None) -> bool:
    """On the minimal circle the normalized Loday complex is the normalized Hochschild complex."""
    adapted = unit_adapted(algebra)
    loday_complex = loday(adapted, minimal_circle(maxdeg), maxdeg, budget)
    hochschild = hochschild_complex(adapted, maxdeg, budget=budget).complex
    return dict(loday_complex.dims) == dict(hochschild.dims) and all(
        loday_complex.differentials[n] == hochschild.differentials[n] for n in range(1, maxdeg + 1)
    )


def loday_dims(algebra: Algebra, X: SimplicialSet, maxdeg: int, budget: Optional[int] = None) -> Dict[int, int]:
    return homology_dims(loday(algebra, X, maxdeg, budget), range(maxdeg))


def loday_coequalizer_dim(algebra: Algebra, X: SimplicialSet) -> int:
    """dim of A^{⊗X_0} / im(d_0 - d_1), computed on unnormalized 1-chains."""
    if X.level < 1:
        raise LevelMismatchError("H_0 of a Loday complex needs level 1")
    d = algebra.dim
    relations = Echelon(algebra.field)
    for t in range(d ** X.size(1)):
        coords = _tensor_coords(t, d, X.size(1))
        difference = _pushforward(algebra, X.faces[1][0], X.size(0), coords)
        add_scaled(algebra.field, difference, _pushforward(algebra, X.faces[1][1], X.size(0), coords), -1)
        relations.add(difference)
    return d ** X.size(0) - relations.rank


def torus_check(algebra: Algebra, maxdeg: int, budget: Optional[int] = None) -> TorusReport:
    T = torus(maxdeg)
    complex_ = loday(algebra, T, maxdeg, budget)
    dims = homology_dims(complex_, range(maxdeg))
    context = hh_dims(algebra, maxdeg, budget)
    return TorusReport(
        algebra=algebra.name or "A",
        maxdeg=maxdeg,
        torus=dims,
        hochschild=context,
        chain_dims=dict(complex_.dims),
        coequalizer=loday_coequalizer_dim(algebra, T),
    )
