from __future__ import annotations

import random

import pytest
from sympy.combinatorics.named_groups import CyclicGroup, SymmetricGroup

from fhcalc.algebra import (
    Algebra,
    augmentation_left,
    change_basis,
    cocenter,
    dual_numbers,
    eckmann_hilton_check,
    eckmann_hilton_scan,
    enveloping,
    enveloping_left_module,
    enveloping_right_module,
    group_algebra,
    kaehler_dims,
    matrix_algebra,
    opposite,
    polynomial_algebra,
    regular_bimodule,
    split_algebra,
    tensor_product,
    truncated_polynomial,
    unit_adapted,
    upper_triangular,
)
from fhcalc.errors import AlgebraError, InterchangeViolation, ModuleError, UnitMismatchError
from fhcalc.exactla import random_invertible

from .conftest import corpus_algebras


def test_corpus_algebras_are_valid(Q):
    for algebra in corpus_algebras(Q).values():
        assert algebra.validate() is algebra


def test_non_associative_table_is_rejected(Q):
    # (a a) a = b a = 0 but a (a a) = a b = a
    broken = Algebra.from_products(
        Q, ["1", "a", "b"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}, (1, 1): {2: 1}, (1, 2): {1: 1}},
        [1, 0, 0],
    )
    with pytest.raises(AlgebraError, match="associativity"):
        broken.validate()


def test_missing_unit_is_rejected(Q):
    algebra = Algebra.from_products(Q, ["a", "b"], {(0, 0): {0: 1}}, [1, 0])
    with pytest.raises(AlgebraError, match="unit law"):
        algebra.validate()


def test_commutativity_flags(Q):
    assert dual_numbers(Q).is_commutative
    assert split_algebra(Q).is_commutative
    assert not matrix_algebra(2, Q).is_commutative
    assert not upper_triangular(Q).is_commutative


def test_opposite_is_an_involution(Q):
    algebra = upper_triangular(Q)
    assert opposite(opposite(algebra)) == algebra
    assert opposite(algebra).validate()


def test_tensor_products_are_algebras(Q):
    product = tensor_product(dual_numbers(Q), upper_triangular(Q))
    assert product.dim == 6
    assert product.validate()
    assert enveloping(upper_triangular(Q)).validate().dim == 9


@pytest.mark.parametrize(
    "name, expected",
    [("ground", 1), ("split", 2), ("dual_numbers", 2), ("truncated_cubic", 3), ("matrix2", 1), ("upper_triangular", 2)],
)
def test_cocenter_dimensions(Q, name, expected):
    assert cocenter(corpus_algebras(Q)[name]).dim == expected


@pytest.mark.parametrize("group", [SymmetricGroup(3), CyclicGroup(4), SymmetricGroup(4)], ids=["S3", "Z4", "S4"])
def test_group_algebra_cocenter_counts_conjugacy_classes(Q, group):
    algebra = group_algebra(group, Q)
    assert algebra.dim == group.order()
    assert cocenter(algebra).dim == len(group.conjugacy_classes())


def test_group_algebra_is_commutative_for_abelian_groups(Q):
    assert group_algebra(CyclicGroup(4), Q).is_commutative
    assert not group_algebra(SymmetricGroup(3), Q).is_commutative


def test_change_basis_preserves_the_algebra(Q, rng):
    algebra = upper_triangular(Q)
    g = random_invertible(Q, algebra.dim, rng)
    changed = change_basis(algebra, g)
    assert changed.validate()
    assert cocenter(changed).dim == cocenter(algebra).dim
    assert changed.is_commutative == algebra.is_commutative


@pytest.mark.parametrize("name", ["dual_numbers", "s3", "split", "upper_triangular"])
@pytest.mark.parametrize("seed", range(10))
def test_cocenter_survives_random_basis_changes(F7, name, seed):
    algebra = corpus_algebras(F7)[name]
    changed = change_basis(algebra, random_invertible(F7, algebra.dim, random.Random(seed)))
    assert changed.validate()
    assert cocenter(changed).dim == cocenter(algebra).dim


def test_enveloping_factors_commute(Q):
    env = enveloping(dual_numbers(Q))
    assert env.basis == ("1⊗1", "1⊗x", "x⊗1", "x⊗x")
    assert env.products[2][1] == {3: 1}
    assert env.products[1][2] == {3: 1}
    assert env.products[3][3] == {}


def test_opposite_of_upper_is_lower_triangular(Q):
    lower = Algebra.from_products(
        Q,
        ["e11", "e22", "e21"],
        {(0, 0): {0: 1}, (1, 1): {1: 1}, (2, 0): {2: 1}, (1, 2): {2: 1}},
        [1, 1, 0],
        "lower_triangular",
    )
    flipped = opposite(upper_triangular(Q))
    assert flipped.constants == lower.constants
    assert flipped.unit == lower.unit
    assert not flipped.is_commutative


def test_unit_adapted_puts_the_unit_on_a_basis_vector(Q):
    adapted = unit_adapted(split_algebra(Q))
    assert adapted.unit_is_basis_vector
    assert adapted.validate()
    assert adapted.is_commutative


def test_regular_and_enveloping_modules_validate(Q):
    algebra = upper_triangular(Q)
    regular_bimodule(algebra).validate()
    enveloping_left_module(algebra).validate()
    enveloping_right_module(algebra).validate()


def test_augmentation_must_be_multiplicative(Q):
    algebra = dual_numbers(Q)
    assert augmentation_left(algebra, [1, 0]).dim == 1
    with pytest.raises(ModuleError):
        augmentation_left(algebra, [1, 1])


def test_polynomial_algebra_weight_dims(Q):
    graded = polynomial_algebra(2, 3, Q)
    assert graded.weight_dims == [1, 2, 3, 4]
    assert graded.algebra.validate()


def test_truncated_polynomial_needs_positive_length(Q):
    with pytest.raises(AlgebraError):
        truncated_polynomial(0, Q)


@pytest.mark.parametrize("m, i, w, expected", [(1, 0, 3, 1), (1, 1, 3, 1), (2, 1, 2, 4), (2, 2, 2, 1), (2, 2, 1, 0), (3, 4, 5, 0)])
def test_kaehler_dims(m, i, w, expected):
    assert kaehler_dims(m, i, w) == expected


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("w", range(1, 7))
def test_kaehler_forms_have_vanishing_euler_characteristic(m, w):
    assert sum((-1) ** i * kaehler_dims(m, i, w) for i in range(m + 1)) == 0


ADD_MOD_4 = [[(a + b) % 4 for b in range(4)] for a in range(4)]


def test_eckmann_hilton_on_a_commutative_monoid():
    report = eckmann_hilton_check(4, ADD_MOD_4, ADD_MOD_4, 0)
    assert report.passed
    assert report.counterexample is None


def test_eckmann_hilton_requires_a_shared_unit():
    with pytest.raises(UnitMismatchError):
        eckmann_hilton_check(4, ADD_MOD_4, ADD_MOD_4, 1)


def test_eckmann_hilton_rejects_failed_interchange():
    xor = [[a ^ b for b in range(2)] for a in range(2)]
    or_ = [[a | b for b in range(2)] for a in range(2)]
    with pytest.raises(InterchangeViolation) as excinfo:
        eckmann_hilton_check(2, xor, or_, 0)
    assert excinfo.value.exit_code == 2


def test_eckmann_hilton_scan_finds_no_counterexample():
    scan = eckmann_hilton_scan(3)
    assert scan.noncommutative_pairs == 0
    assert scan.monoids_per_size[1] == 1
    assert scan.monoids_per_size[2] == 4
    # every two-element monoid is commutative, so each pairs only with itself
    assert scan.interchange_pairs_per_size[2] == 4
