from __future__ import annotations

import pytest

from fhcalc.algebra import dual_numbers, opposite, polynomial_algebra, split_algebra, truncated_polynomial, upper_triangular
from fhcalc.errors import BudgetExceededError, CutoffExceededError, DegreeRangeError, FieldError
from fhcalc.exactla import Field, homology_dims
from fhcalc.hochschild import (
    circle_action_check,
    connes_B,
    connes_report,
    graded_hh_dims,
    graded_hochschild_complex,
    hh_dims,
    hkr_map,
    hkr_report,
    hochschild_complex,
    hochschild_size,
    morita_check,
)

from .conftest import corpus_algebras

HH_TABLES = {
    "ground": {0: 1, 1: 0, 2: 0, 3: 0},
    "split": {0: 2, 1: 0, 2: 0, 3: 0},
    "dual_numbers": {0: 2, 1: 1, 2: 1, 3: 1},
    "truncated_cubic": {0: 3, 1: 2, 2: 2, 3: 2},
    "matrix2": {0: 1, 1: 0, 2: 0, 3: 0},
    "upper_triangular": {0: 2, 1: 0, 2: 0, 3: 0},
    "s3": {0: 3, 1: 0, 2: 0, 3: 0},
}


@pytest.mark.parametrize("name", sorted(HH_TABLES))
def test_hochschild_homology_of_the_corpus(Q, name):
    assert hh_dims(corpus_algebras(Q)[name], 4) == HH_TABLES[name]


def test_hochschild_complex_sizes(Q):
    s3 = corpus_algebras(Q)["s3"]
    assert hochschild_size(s3, 4) == 4686
    complex_ = hochschild_complex(s3, 2).complex
    assert complex_.dims == {0: 6, 1: 30, 2: 150}
    assert complex_.truncated


def test_ground_field_complex_is_complete(Q):
    complex_ = hochschild_complex(corpus_algebras(Q)["ground"], 3).complex
    assert not complex_.truncated
    assert homology_dims(complex_) == {0: 1, 1: 0, 2: 0, 3: 0}


def test_top_stored_degree_is_not_reported(Q):
    complex_ = hochschild_complex(dual_numbers(Q), 2).complex
    with pytest.raises(DegreeRangeError):
        homology_dims(complex_, [2])


@pytest.mark.parametrize("name", ["dual_numbers", "upper_triangular", "split"])
def test_unnormalized_complex_has_the_same_homology(Q, name):
    algebra = corpus_algebras(Q)[name]
    plain = hochschild_complex(algebra, 3, normalized=False).complex
    assert homology_dims(plain, range(3)) == hh_dims(algebra, 3)


def test_positive_characteristic_changes_truncated_polynomials():
    F3 = Field.prime(3)
    assert hh_dims(truncated_polynomial(3, F3), 3) == {0: 3, 1: 3, 2: 3}
    F2 = Field.prime(2)
    assert hh_dims(dual_numbers(F2), 3) == {0: 2, 1: 2, 2: 2}


def test_budget_is_enforced(Q):
    with pytest.raises(BudgetExceededError, match="--budget"):
        hochschild_complex(corpus_algebras(Q)["s3"], 4, budget=1000)


def test_maxdeg_must_be_positive(Q):
    with pytest.raises(DegreeRangeError):
        hochschild_complex(dual_numbers(Q), 0)


def test_opposite_algebra_has_the_same_homology(Q):
    algebra = upper_triangular(Q)
    assert hh_dims(opposite(algebra), 4) == hh_dims(algebra, 4)


@pytest.mark.parametrize("name", sorted(HH_TABLES))
def test_connes_identities(Q, name):
    report = connes_report(hochschild_complex(corpus_algebras(Q)[name], 4))
    assert report.b_squared_zero
    assert report.B_squared_zero
    assert report.anticommutes
    assert report.passed


def test_connes_identities_over_a_prime_field():
    assert connes_report(hochschild_complex(upper_triangular(Field.prime(5)), 3)).passed


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("weight", range(1, 6))
def test_connes_identities_on_polynomial_rings(Q, m, weight):
    hc = graded_hochschild_complex(polynomial_algebra(m, weight, Q), weight)
    report = connes_report(hc)
    assert report.passed
    assert report.checked_degrees == list(range(weight))


def test_connes_operator_on_a_generator(Q):
    graded = polynomial_algebra(1, 1, Q)
    hc = graded_hochschild_complex(graded, 1)
    (x,) = graded.basis_of_weight(1)
    image = connes_B(hc).components[0].apply(hc.vector(0, {(x,): 1}))
    assert {hc.label(1, k): v for k, v in image.items()} == {"1⊗x": 1}


def test_hochschild_boundary_kills_connes_image_of_a_square(Q):
    graded = polynomial_algebra(1, 2, Q)
    hc = graded_hochschild_complex(graded, 2)
    (square,) = graded.basis_of_weight(2)
    image = connes_B(hc).components[0].apply(hc.vector(0, {(square,): 1}))
    assert image
    assert hc.complex.known_differential(1).apply(image) == {}

@pytest.mark.parametrize("weight", range(1, 6))
def test_circle_action_matches_de_rham(weight):
    report = circle_action_check(weight)
    assert report.holds
    assert report.sign in (1, -1)


def test_circle_action_sign_is_stable():
    signs = {circle_action_check(w).sign for w in range(1, 5)}
    assert len(signs) == 1


@pytest.mark.parametrize("weight", range(0, 7))
def test_hkr_one_variable(weight):
    report = hkr_report(1, weight)
    assert report.passed
    assert report.hochschild[0] == 1
    if weight >= 1:
        assert report.hochschild[1] == 1


@pytest.mark.parametrize("weight", range(0, 5))
def test_hkr_two_variables(weight):
    report = hkr_report(2, weight)
    assert report.passed
    assert all(report.maps_verified.values())


def test_hkr_refuses_small_characteristic():
    graded = polynomial_algebra(1, 3, Field.prime(3))
    with pytest.raises(FieldError):
        hkr_map(graded, 1, 3)


def test_graded_hochschild_of_a_polynomial_ring(Q):
    graded = polynomial_algebra(2, 2, Q)
    assert graded_hh_dims(graded, 2) == {0: 3, 1: 4, 2: 1}
    with pytest.raises(CutoffExceededError):
        graded_hh_dims(graded, 3)


@pytest.mark.parametrize("name, maxdeg", [("ground", 3), ("split", 3), ("dual_numbers", 2)])
def test_morita_invariance(Q, name, maxdeg):
    report = morita_check(corpus_algebras(Q)[name], 2, maxdeg)
    assert report.passed
    assert report.hochschild == report.matrix_hochschild


def test_morita_on_split_algebra_keeps_two_classes(Q):
    assert morita_check(split_algebra(Q), 2, 2).matrix_hochschild[0] == 2
