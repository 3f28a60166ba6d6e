"""Text formats for algebras, monoid pairs, simplicial sets, categories and cobordisms.

All formats are line based: ``#`` starts a comment, blank lines are ignored
and the first token of a line is its keyword.  Parsers raise
``InputFormatError`` pointing at the offending token.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar

from .algebra import Algebra, Table, _check_table
from .errors import FhcalcError, InputFormatError
from .exactla import Field
from .simplicial import FinCategory, SimplicialSet
from .tft1 import Cobordism1, Endpoint

T = TypeVar("T")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Line:
    number: int
    tokens: Tuple[Token, ...]

    @property
    def keyword(self) -> str:
        return self.tokens[0].text

    @property
    def args(self) -> Tuple[Token, ...]:
        return self.tokens[1:]


@dataclass(frozen=True)
class MonoidPair:
    size: int
    unit: int
    op1: Table
    op2: Table


class _Reader:
    def __init__(self, text: str, path: Optional[str]) -> None:
        self.path = path
        self.lines = list(self._tokenize(text))

    def _tokenize(self, text: str) -> Iterator[Line]:
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0]
            tokens: List[Token] = []
            column = 0
            for piece in content.split():
                column = content.index(piece, column)
                tokens.append(Token(piece, number, column + 1))
                column += len(piece)
            if tokens:
                yield Line(number, tuple(tokens))

    def error(self, detail: str, token: Optional[Token] = None, line: Optional[Line] = None) -> InputFormatError:
        if token is not None:
            return InputFormatError(detail, token.line, token.column, self.path)
        if line is not None:
            return InputFormatError(detail, line.number, 1, self.path)
        last = self.lines[-1].number if self.lines else 1
        return InputFormatError(detail, last, 1, self.path)

    def integer(self, token: Token, minimum: Optional[int] = None) -> int:
        try:
            value = int(token.text)
        except ValueError:
            raise self.error(f"expected an integer, got {token.text!r}", token) from None
        if minimum is not None and value < minimum:
            raise self.error(f"expected an integer >= {minimum}, got {value}", token)
        return value

    def arity(self, line: Line, count: int, usage: str) -> None:
        if len(line.args) != count:
            raise self.error(f"usage: {usage}", line.tokens[-1] if len(line.args) > count else None, line)

    def convert(self, token: Token, convert: Callable[[str], T]) -> T:
        try:
            return convert(token.text)
        except FhcalcError as exc:
            raise self.error(exc.detail, token) from None


def _read_text(source: str | Path) -> Tuple[str, Optional[str]]:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8"), str(source)
    return source, None


# --- algebras -------------------------------------------------------------------


def parse_algebra(source: str | Path, path: Optional[str] = None) -> Algebra:
    """``field Q|F <p>``, ``dim <d>``, ``basis <names>``, ``unit <coeffs>``, ``mul <i> <j> <k> <value>``."""
    text, file_path = _read_text(source)
    reader = _Reader(text, path or file_path)
    field: Optional[Field] = None
    dim: Optional[int] = None
    basis: Optional[List[str]] = None
    unit: Optional[List] = None
    name = ""
    products: Dict[Tuple[int, int], Dict[int, object]] = {}
    for line in reader.lines:
        key = line.keyword
        if key == "field":
            if not line.args or line.args[0].text not in ("Q", "F"):
                raise reader.error("usage: field Q | field F <p>", line.args[0] if line.args else None, line)
            if line.args[0].text == "Q":
                reader.arity(line, 1, "field Q")
                field = Field.rationals()
            else:
                reader.arity(line, 2, "field F <p>")
                reader.integer(line.args[1], 2)
                field = reader.convert(line.args[1], lambda text: Field.prime(int(text)))
        elif key == "name":
            name = " ".join(t.text for t in line.args)
        elif key == "dim":
            reader.arity(line, 1, "dim <d>")
            dim = reader.integer(line.args[0], 1)
        elif key == "basis":
            if dim is None:
                raise reader.error("basis before dim", line=line)
            reader.arity(line, dim, f"basis <{dim} names>")
            basis = [t.text for t in line.args]
        elif key == "unit":
            if dim is None or field is None:
                raise reader.error("unit before field and dim", line=line)
            reader.arity(line, dim, f"unit <{dim} coefficients>")
            unit = [reader.convert(t, field.parse) for t in line.args]
        elif key == "mul":
            if dim is None or field is None:
                raise reader.error("mul before field and dim", line=line)
            reader.arity(line, 4, "mul <i> <j> <k> <value>")
            i, j, k = (reader.integer(t, 0) for t in line.args[:3])
            for token, value in zip(line.args[:3], (i, j, k)):
                if value >= dim:
                    raise reader.error(f"index {value} outside 0..{dim - 1}", token)
            if k in products.get((i, j), {}):
                raise reader.error(f"duplicate structure constant for ({i}, {j}, {k})", line.tokens[0])
            products.setdefault((i, j), {})[k] = reader.convert(line.args[3], field.parse)
        else:
            raise reader.error(f"unknown keyword {key!r}", line.tokens[0])
    if field is None or dim is None:
        raise reader.error("missing field or dim line")
    if basis is None:
        basis = [f"e{k}" for k in range(dim)]
    if unit is None:
        raise reader.error("missing unit line")
    try:
        return Algebra.from_products(field, basis, products, unit, name).validate()
    except FhcalcError as exc:
        raise reader.error(exc.detail) from None


def serialize_algebra(algebra: Algebra) -> str:
    field = algebra.field
    lines = ["field Q" if field.is_rational else f"field F {field.characteristic}"]
    if algebra.name:
        lines.append(f"name {algebra.name}")
    lines.append(f"dim {algebra.dim}")
    lines.append("basis " + " ".join(algebra.basis))
    lines.append("unit " + " ".join(_scalar(field, u) for u in algebra.unit))
    for i, row in enumerate(algebra.products):
        for j, image in enumerate(row):
            for k, value in sorted(image.items()):
                lines.append(f"mul {i} {j} {k} {_scalar(field, value)}")
    return "\n".join(lines) + "\n"


def _scalar(field: Field, value) -> str:
    if field.is_rational:
        return field.format(value)
    return str(int(value) % field.characteristic)


# --- monoid pairs ---------------------------------------------------------------


def parse_monoid_pair(source: str | Path, path: Optional[str] = None) -> MonoidPair:
    """``set <n>``, ``unit <e>``, then ``op1`` and ``op2`` each followed by n rows."""
    text, file_path = _read_text(source)
    reader = _Reader(text, path or file_path)
    size: Optional[int] = None
    unit: Optional[int] = None
    tables: Dict[str, List[List[int]]] = {}
    current: Optional[str] = None
    for line in reader.lines:
        key = line.keyword
        if key == "set":
            reader.arity(line, 1, "set <n>")
            size = reader.integer(line.args[0], 1)
            current = None
        elif key == "unit":
            reader.arity(line, 1, "unit <e>")
            unit = reader.integer(line.args[0], 0)
            current = None
        elif key in ("op1", "op2"):
            if size is None:
                raise reader.error(f"{key} before set", line.tokens[0])
            if key in tables:
                raise reader.error(f"duplicate {key} table", line.tokens[0])
            reader.arity(line, 0, key)
            current = key
            tables[key] = []
        elif current is not None and size is not None:
            if len(tables[current]) == size:
                raise reader.error(f"{current} already has {size} rows", line.tokens[0])
            if len(line.tokens) != size:
                raise reader.error(f"table rows need {size} entries", line=line)
            row = []
            for token in line.tokens:
                value = reader.integer(token, 0)
                if value >= size:
                    raise reader.error(f"entry {value} outside 0..{size - 1}", token)
                row.append(value)
            tables[current].append(row)
        else:
            raise reader.error(f"unknown keyword {key!r}", line.tokens[0])
    if size is None or unit is None:
        raise reader.error("missing set or unit line")
    if unit >= size:
        raise reader.error(f"unit {unit} outside 0..{size - 1}")
    for key in ("op1", "op2"):
        if len(tables.get(key, [])) != size:
            raise reader.error(f"{key} needs {size} rows")
    return MonoidPair(size, unit, _check_table(tables["op1"], size, "op1"), _check_table(tables["op2"], size, "op2"))


def serialize_monoid_pair(pair: MonoidPair) -> str:
    lines = [f"set {pair.size}", f"unit {pair.unit}"]
    for key, table in (("op1", pair.op1), ("op2", pair.op2)):
        lines.append(key)
        lines.extend(" ".join(map(str, row)) for row in table)
    return "\n".join(lines) + "\n"


# --- simplicial sets ------------------------------------------------------------


def parse_simplicial_set(source: str | Path, path: Optional[str] = None) -> SimplicialSet:
    """``levels <L>``, one ``elems <names>`` line per level, ``face``/``degen <n> <i> <elem> <image>``."""
    text, file_path = _read_text(source)
    reader = _Reader(text, path or file_path)
    level: Optional[int] = None
    name = ""
    dimension: Optional[int] = None
    elements: List[List[str]] = []
    maps: Dict[str, Dict[Tuple[int, int, int], int]] = {"face": {}, "degen": {}}
    for line in reader.lines:
        key = line.keyword
        if key == "levels":
            reader.arity(line, 1, "levels <L>")
            level = reader.integer(line.args[0], 0)
        elif key == "name":
            name = " ".join(t.text for t in line.args)
        elif key == "dimension":
            reader.arity(line, 1, "dimension <d>")
            dimension = reader.integer(line.args[0], 0)
        elif key == "elems":
            if level is None:
                raise reader.error("elems before levels", line.tokens[0])
            if len(elements) > level:
                raise reader.error(f"more than {level + 1} elems lines", line.tokens[0])
            if not line.args:
                raise reader.error("a level needs at least one element", line=line)
            elements.append([t.text for t in line.args])
        elif key in maps:
            reader.arity(line, 4, f"{key} <n> <i> <elem> <image>")
            n = reader.integer(line.args[0], 0)
            i = reader.integer(line.args[1], 0)
            target = n - 1 if key == "face" else n + 1
            for lvl, token in ((n, line.args[0]), (target, line.args[0])):
                if lvl < 0 or lvl >= len(elements):
                    raise reader.error(f"level {lvl} is not declared", token)
            if i > n:
                raise reader.error(f"{key} index {i} exceeds level {n}", line.args[1])
            x = _lookup(reader, elements[n], line.args[2], n)
            y = _lookup(reader, elements[target], line.args[3], target)
            if (n, i, x) in maps[key]:
                raise reader.error(f"duplicate {key} for {line.args[2].text}", line.args[2])
            maps[key][(n, i, x)] = y
        else:
            raise reader.error(f"unknown keyword {key!r}", line.tokens[0])
    if level is None or len(elements) != level + 1:
        raise reader.error("need a levels line and one elems line per level")

    def table(kind: str, n: int, i: int) -> Tuple[int, ...]:
        entries = maps[kind]
        missing = [x for x in range(len(elements[n])) if (n, i, x) not in entries]
        if missing:
            raise reader.error(f"{kind} {n} {i} undefined on {elements[n][missing[0]]}")
        return tuple(entries[(n, i, x)] for x in range(len(elements[n])))

    faces = [()] + [tuple(table("face", n, i) for i in range(n + 1)) for n in range(1, level + 1)]
    degens = [tuple(table("degen", n, i) for i in range(n + 1)) for n in range(level)] + [()]
    try:
        return SimplicialSet(
            level, tuple(tuple(e) for e in elements), tuple(faces), tuple(degens), name, dimension
        )
    except FhcalcError as exc:
        raise reader.error(exc.detail) from None


def _lookup(reader: _Reader, names: Sequence[str], token: Token, level: int) -> int:
    try:
        return list(names).index(token.text)
    except ValueError:
        raise reader.error(f"no element {token.text!r} at level {level}", token) from None


def serialize_simplicial_set(X: SimplicialSet) -> str:
    lines = [f"levels {X.level}"]
    if X.name:
        lines.append(f"name {X.name}")
    if X.dimension is not None:
        lines.append(f"dimension {X.dimension}")
    lines.extend("elems " + " ".join(level) for level in X.labels)
    for n in range(1, X.level + 1):
        for i in range(n + 1):
            for x, y in enumerate(X.faces[n][i]):
                lines.append(f"face {n} {i} {X.labels[n][x]} {X.labels[n - 1][y]}")
    for n in range(X.level):
        for i in range(n + 1):
            for x, y in enumerate(X.degeneracies[n][i]):
                lines.append(f"degen {n} {i} {X.labels[n][x]} {X.labels[n + 1][y]}")
    return "\n".join(lines) + "\n"


# --- categories -----------------------------------------------------------------


def parse_category(source: str | Path, path: Optional[str] = None) -> FinCategory:
    """``objects <names>``, ``morphisms <name> <src> <dst>``, ``id <obj> <mor>``, ``compose <g> <f> <gf>``."""
    text, file_path = _read_text(source)
    reader = _Reader(text, path or file_path)
    name = ""
    objects: List[str] = []
    morphisms: List[str] = []
    source_of: List[int] = []
    target_of: List[int] = []
    identities: Dict[int, int] = {}
    composition: Dict[Tuple[int, int], int] = {}
    for line in reader.lines:
        key = line.keyword
        if key == "name":
            name = " ".join(t.text for t in line.args)
        elif key == "objects":
            if objects:
                raise reader.error("objects declared twice", line.tokens[0])
            objects = [t.text for t in line.args]
            if not objects or len(set(objects)) != len(objects):
                raise reader.error("objects must be distinct and non-empty", line=line)
        elif key in ("morphisms", "morphism"):
            reader.arity(line, 3, f"{key} <name> <src> <dst>")
            if line.args[0].text in morphisms:
                raise reader.error(f"duplicate morphism {line.args[0].text!r}", line.args[0])
            morphisms.append(line.args[0].text)
            source_of.append(_lookup(reader, objects, line.args[1], 0))
            target_of.append(_lookup(reader, objects, line.args[2], 0))
        elif key == "id":
            reader.arity(line, 2, "id <obj> <morphism>")
            identities[_lookup(reader, objects, line.args[0], 0)] = _morphism(reader, morphisms, line.args[1])
        elif key == "compose":
            reader.arity(line, 3, "compose <g> <f> <gf>")
            g, f, gf = (_morphism(reader, morphisms, t) for t in line.args)
            if (g, f) in composition:
                raise reader.error("composite declared twice", line.tokens[0])
            composition[(g, f)] = gf
        else:
            raise reader.error(f"unknown keyword {key!r}", line.tokens[0])
    missing = [o for k, o in enumerate(objects) if k not in identities]
    if missing:
        raise reader.error(f"no identity declared for {missing[0]}")
    try:
        return FinCategory(
            tuple(objects),
            tuple(morphisms),
            tuple(source_of),
            tuple(target_of),
            tuple(identities[k] for k in range(len(objects))),
            composition,
            name,
        ).validate()
    except FhcalcError as exc:
        raise reader.error(exc.detail) from None


def _morphism(reader: _Reader, morphisms: Sequence[str], token: Token) -> int:
    try:
        return list(morphisms).index(token.text)
    except ValueError:
        raise reader.error(f"unknown morphism {token.text!r}", token) from None


def serialize_category(C: FinCategory) -> str:
    lines = []
    if C.name:
        lines.append(f"name {C.name}")
    lines.append("objects " + " ".join(C.objects))
    for f, label in enumerate(C.morphisms):
        lines.append(f"morphisms {label} {C.objects[C.source[f]]} {C.objects[C.target[f]]}")
    for obj, ident in enumerate(C.identities):
        lines.append(f"id {C.objects[obj]} {C.morphisms[ident]}")
    for (g, f), gf in sorted(C.composition.items()):
        lines.append(f"compose {C.morphisms[g]} {C.morphisms[f]} {C.morphisms[gf]}")
    return "\n".join(lines) + "\n"


# --- cobordisms -------------------------------------------------------------------


def _endpoint(reader: _Reader, token: Token) -> Endpoint:
    side, digits = token.text[:1], token.text[1:]
    if side not in ("s", "t") or not digits.isdigit():
        raise reader.error(f"endpoint must look like s0 or t1, got {token.text!r}", token)
    return side, int(digits)


def _signs(reader: _Reader, line: Line) -> Tuple[str, ...]:
    if len(line.args) > 1:
        raise reader.error(f"usage: {line.keyword} <signs>", line.args[1])
    text = line.args[0].text if line.args else ""
    for offset, char in enumerate(text):
        if char not in "+-":
            token = line.args[0]
            raise InputFormatError(f"sign must be + or -, got {char!r}", token.line, token.column + offset, reader.path)
    return tuple(text)


def parse_cobordism(source: str | Path, path: Optional[str] = None) -> Cobordism1:
    """``source <signs>``, ``target <signs>``, ``arc <end> <end>``, ``circles <c>``."""
    text, file_path = _read_text(source)
    reader = _Reader(text, path or file_path)
    points: Dict[str, Tuple[str, ...]] = {}
    arcs: List[Tuple[Endpoint, Endpoint]] = []
    circles = 0
    for line in reader.lines:
        key = line.keyword
        if key in ("source", "target"):
            points[key] = _signs(reader, line)
        elif key == "arc":
            reader.arity(line, 2, "arc <end> <end>")
            arcs.append((_endpoint(reader, line.args[0]), _endpoint(reader, line.args[1])))
        elif key == "circles":
            reader.arity(line, 1, "circles <c>")
            circles = reader.integer(line.args[0], 0)
        else:
            raise reader.error(f"unknown keyword {key!r}", line.tokens[0])
    try:
        return Cobordism1.build(points.get("source", ()), points.get("target", ()), arcs, circles)
    except FhcalcError as exc:
        raise reader.error(exc.detail) from None


def serialize_cobordism(X: Cobordism1) -> str:
    lines = [f"source {''.join(X.source)}".rstrip(), f"target {''.join(X.target)}".rstrip()]
    lines.extend(f"arc {a[0]}{a[1]} {b[0]}{b[1]}" for a, b in X.arcs)
    lines.append(f"circles {X.circles}")
    return "\n".join(lines) + "\n"


PARSERS = {
    ".alg": parse_algebra,
    ".mon": parse_monoid_pair,
    ".sset": parse_simplicial_set,
    ".cat": parse_category,
    ".cob": parse_cobordism,
}

SERIALIZERS = {
    ".alg": serialize_algebra,
    ".mon": serialize_monoid_pair,
    ".sset": serialize_simplicial_set,
    ".cat": serialize_category,
    ".cob": serialize_cobordism,
}
