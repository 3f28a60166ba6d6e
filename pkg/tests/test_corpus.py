from __future__ import annotations

import pytest

from fhcalc.corpus import (
    BUILTIN_ALGEBRAS,
    BUILTIN_COBORDISMS,
    load_algebra,
    load_category,
    load_cobordism,
    load_monoid_pair,
    load_simplicial_set,
)
from fhcalc.errors import UnknownInputError
from fhcalc.exactla import Field
from fhcalc.simplicial import minimal_circle
from fhcalc.tft1 import zorro_snake


def test_builtin_and_file_names_resolve_differently():
    builtin = load_algebra("dual_numbers")
    from_file = load_algebra("dual_numbers.alg")
    assert builtin.digest == "builtin:dual_numbers"
    assert from_file.digest.startswith("sha256:")
    assert len(from_file.digest) == len("sha256:") + 64
    assert builtin.value.constants == from_file.value.constants


def test_file_digest_is_stable():
    assert load_algebra("s3.alg").digest == load_algebra("s3.alg").digest


def test_explicit_path(corpus_dir):
    loaded = load_algebra(str(corpus_dir / "split.alg"))
    assert loaded.digest.startswith("sha256:")
    assert loaded.value.dim == 2


def test_field_applies_to_builtins_only():
    F5 = Field.prime(5)
    assert load_algebra("upper_triangular", F5).value.field == F5
    assert load_algebra("upper_triangular.alg", F5).value.field == Field.rationals()


@pytest.mark.parametrize("name", sorted(BUILTIN_ALGEBRAS))
def test_every_builtin_algebra_validates(name):
    algebra = load_algebra(name).value
    algebra.validate()


def test_unknown_names():
    with pytest.raises(UnknownInputError, match="built-ins: "):
        load_algebra("octonions")
    with pytest.raises(UnknownInputError):
        load_monoid_pair("z5.mon")
    with pytest.raises(UnknownInputError):
        load_category("nope")


def test_simplicial_builtins_follow_the_level():
    assert load_simplicial_set("circle", 2).value == minimal_circle(2)
    assert load_simplicial_set("torus", 3).value.level == 3
    # files keep their own level
    assert load_simplicial_set("circle.sset", 4).value.level == 2


def test_cobordisms():
    assert load_cobordism("zorro").value == zorro_snake()
    assert load_cobordism("strand").value.source == ("+",)
    assert set(BUILTIN_COBORDISMS) >= {"horseshoe", "cohorseshoe", "circle"}
