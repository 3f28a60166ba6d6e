from __future__ import annotations

import pytest

from fhcalc.algebra import (
    augmentation_left,
    augmentation_right,
    dual_numbers,
    matrix_algebra,
    regular_bimodule,
    upper_triangular,
)
from fhcalc.bartensor import (
    balanced_tensor_dim,
    bar_complex,
    excision_circle_check,
    swap_sides,
    tor_dims,
)
from fhcalc.errors import BudgetExceededError, ModuleError
from fhcalc.exactla import Field, homology_dims

from .conftest import corpus_algebras


CHARACTERS = {
    "dual_numbers": [1, 0],
    "upper_triangular": [1, 0, 0],
    "split": [1, 0],
    "s3": [1] * 6,
}


def _augmented(algebra, character=None):
    character = character or [1] + [0] * (algebra.dim - 1)
    return augmentation_right(algebra, character), algebra, augmentation_left(algebra, character)


@pytest.mark.parametrize("field", [Field.rationals(), Field.prime(2)], ids=["Q", "F2"])
def test_tor_of_the_ground_field_over_dual_numbers(field):
    assert tor_dims(*_augmented(dual_numbers(field)), 4) == {0: 1, 1: 1, 2: 1, 3: 1}


def test_free_module_has_no_higher_tor(Q):
    algebra = upper_triangular(Q)
    regular = regular_bimodule(algebra)
    right, left = regular.as_right_module(), regular.as_left_module()
    assert balanced_tensor_dim(right, algebra, left) == algebra.dim
    assert tor_dims(right, algebra, left, 3) == {0: 3, 1: 0, 2: 0}


def test_balanced_tensor_of_augmentations(Q):
    assert balanced_tensor_dim(*_augmented(dual_numbers(Q))) == 1


@pytest.mark.parametrize("name", sorted(CHARACTERS))
def test_swapping_sides_keeps_tor(Q, name):
    triple = _augmented(corpus_algebras(Q)[name], CHARACTERS[name])
    assert tor_dims(*swap_sides(*triple), 3) == tor_dims(*triple, 3)


@pytest.mark.parametrize("name", sorted(CHARACTERS))
def test_tor_zero_is_the_balanced_tensor_product(Q, name):
    triple = _augmented(corpus_algebras(Q)[name], CHARACTERS[name])
    assert tor_dims(*triple, 2)[0] == balanced_tensor_dim(*triple)
    swapped = swap_sides(*triple)
    assert tor_dims(*swapped, 2)[0] == balanced_tensor_dim(*swapped)


@pytest.mark.parametrize("name", ["dual_numbers", "upper_triangular"])
def test_unnormalized_bar_complex_has_the_same_homology(Q, name):
    triple = _augmented(corpus_algebras(Q)[name], CHARACTERS[name])
    full = bar_complex(*triple, 3, normalized=False)
    assert homology_dims(full.complex, range(3)) == tor_dims(*triple, 3)


def test_modules_must_match_the_algebra(Q):
    right, _, left = _augmented(dual_numbers(Q))
    with pytest.raises(ModuleError):
        bar_complex(right, upper_triangular(Q), left, 2)


def test_bar_complex_budget(Q):
    right, algebra, left = _augmented(dual_numbers(Q))
    with pytest.raises(BudgetExceededError):
        bar_complex(right, algebra, left, 10, budget=5)


@pytest.mark.parametrize("algebra_factory", [dual_numbers, upper_triangular], ids=["dual_numbers", "upper_triangular"])
def test_excision_for_the_circle(Q, algebra_factory):
    report = excision_circle_check(algebra_factory(Q), 3)
    assert report.passed
    assert report.tor == report.hochschild
    assert "b m a" in report.convention


def test_excision_for_matrices_in_low_degree(Q):
    report = excision_circle_check(matrix_algebra(2, Q), 2)
    assert report.passed
    assert report.tor == {0: 1, 1: 0}
