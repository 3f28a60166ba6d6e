from __future__ import annotations

import random

import pytest

from fhcalc.errors import InterfaceMismatchError, ShapeMismatchError
from fhcalc.exactla import ExactMatrix, Field, random_invertible
from fhcalc.tft1 import (
    Cobordism1,
    DualityDatum,
    canonical_duality,
    circle,
    cohorseshoe,
    compose,
    compose_all,
    disjoint_union,
    dual_snake,
    dual_snake_factors,
    duality_check,
    evaluate,
    evaluate_factors,
    full_dualizable_vect,
    horseshoe,
    identity,
    random_cobordism,
    random_datum,
    random_points,
    random_target,
    snakes_hold,
    twisted_duality,
    zorro_factors,
    zorro_snake,
)

SWAP = Cobordism1.build(("+", "-"), ("-", "+"), [(("s", 0), ("t", 1)), (("s", 1), ("t", 0))])


def test_snakes_compose_to_straight_strands():
    assert zorro_snake() == identity("+")
    assert dual_snake() == identity("-")


def test_closing_a_swap_gives_a_circle():
    assert compose_all([cohorseshoe(), SWAP, horseshoe()]) == circle()


def test_capping_a_cup_directly_is_refused():
    with pytest.raises(InterfaceMismatchError):
        compose(cohorseshoe(), horseshoe())


def test_arcs_must_respect_orientation():
    with pytest.raises(ShapeMismatchError):
        Cobordism1.build(("+", "+"), (), [(("s", 0), ("s", 1))])
    with pytest.raises(ShapeMismatchError):
        Cobordism1.build(("+",), ("+", "-"), [(("s", 0), ("t", 0))])


@pytest.mark.parametrize("n", range(1, 6))
def test_zorro_evaluates_to_the_identity(n, Q):
    assert evaluate(n, zorro_snake(), field=Q) == ExactMatrix.identity(Q, n)
    assert evaluate(n, dual_snake(), field=Q) == ExactMatrix.identity(Q, n)
    assert evaluate_factors(n, zorro_factors(), canonical_duality(n, Q)) == ExactMatrix.identity(Q, n)
    assert evaluate_factors(n, dual_snake_factors(), canonical_duality(n, Q)) == ExactMatrix.identity(Q, n)


@pytest.mark.parametrize("n", range(0, 5))
def test_circle_evaluates_to_the_dimension(n, Q):
    assert evaluate(n, circle(), field=Q).to_dense() == [[n]]
    assert evaluate(n, circle(2), field=Q).to_dense() == [[n * n]]


def test_circle_dimension_is_taken_mod_p(F7):
    assert evaluate(7, circle(), field=F7).is_zero()
    assert evaluate(9, circle(), field=F7).to_dense() == [[2]]


def test_horseshoe_is_the_coevaluation(Q):
    assert evaluate(2, horseshoe(), field=Q) == canonical_duality(2, Q).coevaluation
    assert evaluate(2, cohorseshoe(), field=Q) == canonical_duality(2, Q).evaluation


def _random_composable(rng: random.Random):
    source = random_points(rng, rng.randint(0, 3))
    middle = random_target(rng, source, 4)
    target = random_target(rng, middle, 4)
    return random_cobordism(rng, middle, target), random_cobordism(rng, source, middle)


@pytest.mark.parametrize("seed", range(100))
def test_evaluation_is_functorial(seed):
    rng = random.Random(seed)
    outer, inner = _random_composable(rng)
    n = rng.randint(1, 3)
    if seed % 4:
        datum = canonical_duality(n, Field.rationals())
    else:
        datum = twisted_duality(n, random_invertible(Field.prime(7), n, rng))
    composite = evaluate(n, compose(outer, inner), datum)
    assert composite == evaluate(n, outer, datum) @ evaluate(n, inner, datum)


@pytest.mark.parametrize("seed", range(20))
def test_evaluation_is_monoidal_for_any_pair(seed):
    rng = random.Random(500 + seed)
    n = rng.randint(1, 2)
    datum = random_datum(rng, n, Field.prime(5))
    pieces = []
    for _ in range(2):
        source = random_points(rng, rng.randint(0, 2))
        pieces.append(random_cobordism(rng, source, random_target(rng, source, 3)))
    left, right = pieces
    union = evaluate(n, disjoint_union(left, right), datum)
    assert union == evaluate(n, left, datum).kron(evaluate(n, right, datum))


@pytest.mark.parametrize("seed", range(50))
def test_snakes_through_cobordisms_agree_with_matrix_check(seed):
    rng = random.Random(900 + seed)
    n = rng.randint(1, 3)
    field = Field.prime(7) if seed % 2 else Field.rationals()
    datum = twisted_duality(n, random_invertible(field, n, rng)) if seed % 3 == 0 else random_datum(rng, n, field)
    assert snakes_hold(datum) == duality_check(datum).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_canonical_and_twisted_pairs_are_dualities(n, F7, rng):
    assert duality_check(canonical_duality(n, F7)).passed
    twisted = twisted_duality(n, random_invertible(F7, n, rng))
    report = duality_check(twisted)
    assert report.passed
    assert report.left_residual is None and report.right_residual is None
    assert twisted.circle_value == n


def test_zero_coevaluation_is_not_a_duality(Q):
    canonical = canonical_duality(2, Q)
    datum = DualityDatum(2, 2, ExactMatrix.zeros(Q, 4, 1), canonical.evaluation)
    report = duality_check(datum)
    assert not report.passed
    assert report.left_residual == ExactMatrix.identity(Q, 2).render()
    assert not snakes_hold(datum)


def test_datum_shapes_are_checked(Q):
    with pytest.raises(ShapeMismatchError):
        DualityDatum(2, 2, ExactMatrix.zeros(Q, 3, 1), ExactMatrix.zeros(Q, 1, 4))


def test_finite_dimensional_spaces_are_dualizable(Q):
    verdict = full_dualizable_vect(3, Q)
    assert verdict.dualizable
    assert verdict.check is not None and verdict.check.passed


def test_infinite_dimensional_space_is_not_dualizable():
    verdict = full_dualizable_vect(None)
    assert not verdict.dualizable
    assert "finite sum" in verdict.note


def test_random_cobordism_needs_balanced_boundaries():
    with pytest.raises(InterfaceMismatchError):
        random_cobordism(random.Random(0), ("+",), ("-",))
