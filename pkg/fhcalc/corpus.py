"""Named built-in objects and loading of input files.

An input argument is a file path, a file name inside ``corpus/``, or the
name of a built-in object.  Every load returns the value together with the
digest recorded in reports.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Generic, Optional, TypeVar

from sympy.combinatorics.named_groups import SymmetricGroup

from .algebra import (
    Algebra,
    dual_numbers,
    ground_field,
    group_algebra,
    matrix_algebra,
    split_algebra,
    truncated_polynomial,
    upper_triangular,
)
from .config import resolve_input_path
from .errors import UnknownInputError
from .exactla import Field
from .formats import (
    MonoidPair,
    parse_algebra,
    parse_category,
    parse_cobordism,
    parse_monoid_pair,
    parse_simplicial_set,
)
from .logging_config import logger
from .simplicial import (
    FinCategory,
    SimplicialSet,
    cyclic_group_category,
    idempotent_monoid,
    minimal_circle,
    point,
    poset_chain,
    sphere_quotient,
    sphere_suspension,
    standard_simplex,
    terminal_category,
    torus,
    two_vertex_circle,
)
from .tft1 import Cobordism1, circle, cohorseshoe, dual_snake, horseshoe, identity, zorro_snake

T = TypeVar("T")


@dataclass(frozen=True)
class Loaded(Generic[T]):
    value: T
    digest: str


BUILTIN_ALGEBRAS: Dict[str, Callable[[Field], Algebra]] = {
    "ground": ground_field,
    "split": split_algebra,
    "dual_numbers": dual_numbers,
    "truncated_cubic": lambda field: truncated_polynomial(3, field),
    "matrix2": lambda field: matrix_algebra(2, field),
    "upper_triangular": upper_triangular,
    "s3": lambda field: group_algebra(SymmetricGroup(3), field, f"{field.label}[S3]"),
}

BUILTIN_CATEGORIES: Dict[str, Callable[[], FinCategory]] = {
    "terminal": terminal_category,
    "interval": lambda: poset_chain(1),
    "chain2": lambda: poset_chain(2),
    "z2": lambda: cyclic_group_category(2),
    "z3": lambda: cyclic_group_category(3),
    "idempotent": idempotent_monoid,
}

BUILTIN_SPACES: Dict[str, Callable[[int], SimplicialSet]] = {
    "point": point,
    "interval": lambda level: standard_simplex(1, level),
    "triangle": lambda level: standard_simplex(2, level),
    "circle": minimal_circle,
    "circle2": two_vertex_circle,
    "sphere": sphere_quotient,
    "sphere2": sphere_suspension,
    "torus": torus,
}

BUILTIN_COBORDISMS: Dict[str, Callable[[], Cobordism1]] = {
    "zorro": zorro_snake,
    "dual_snake": dual_snake,
    "circle": circle,
    "horseshoe": horseshoe,
    "cohorseshoe": cohorseshoe,
    "strand": lambda: identity("+"),
}


def file_digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def _load(
    name: str,
    parse: Callable[[Path], T],
    builtins: Dict[str, Callable[[], T]],
    kind: str,
) -> Loaded[T]:
    path = resolve_input_path(name)
    if path.is_file():
        logger.debug("loading %s from %s", kind, path)
        return Loaded(parse(path), file_digest(path))
    factory = builtins.get(name)
    if factory is None:
        known = ", ".join(sorted(builtins))
        raise UnknownInputError(f"no {kind} file or built-in named {name!r} (built-ins: {known})")
    return Loaded(factory(), f"builtin:{name}")


def load_algebra(name: str, field: Optional[Field] = None) -> Loaded[Algebra]:
    """Files carry their own field; ``field`` applies to built-ins only."""
    field = field or Field.rationals()
    builtins = {key: (lambda f=factory: f(field)) for key, factory in BUILTIN_ALGEBRAS.items()}
    return _load(name, parse_algebra, builtins, "algebra")


def load_category(name: str) -> Loaded[FinCategory]:
    return _load(name, parse_category, BUILTIN_CATEGORIES, "category")


def load_simplicial_set(name: str, level: int) -> Loaded[SimplicialSet]:
    """Built-ins are built at ``level``; files carry their own level."""
    builtins = {key: (lambda f=factory: f(level)) for key, factory in BUILTIN_SPACES.items()}
    return _load(name, parse_simplicial_set, builtins, "simplicial set")


def load_monoid_pair(name: str) -> Loaded[MonoidPair]:
    return _load(name, parse_monoid_pair, {}, "monoid pair")


def load_cobordism(name: str) -> Loaded[Cobordism1]:
    return _load(name, parse_cobordism, BUILTIN_COBORDISMS, "cobordism")
