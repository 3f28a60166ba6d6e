from __future__ import annotations

import random
from fractions import Fraction

import pytest
from sympy import Matrix

from fhcalc.errors import ConsistencyError, DegreeRangeError, FieldError, ShapeMismatchError
from fhcalc.exactla import (
    ChainComplex,
    ChainMap,
    Echelon,
    ExactMatrix,
    Field,
    chain_map_check,
    hom_complex,
    homology_dims,
    inverse,
    kernel_basis,
    naive_homology_dims,
    random_invertible,
    random_matrix,
    rank_dense,
    solve,
)
from fhcalc.simplicial import boundary, normalized_chains


def _random_complex(field: Field, rng: random.Random, dims, lo: int = 0) -> ChainComplex:
    """d_1 is random; later differentials take their columns from ker d_{n-1}."""
    differentials = []
    previous = None
    for n in range(1, len(dims)):
        rows, cols = dims[n - 1], dims[n]
        if previous is None or previous.ncols == 0:
            d = random_matrix(field, rows, cols, rng, density=0.5)
        else:
            kernel = kernel_basis(previous)
            columns = []
            for _ in range(cols):
                column = {}
                for vector in kernel:
                    coeff = field.random_element(rng)
                    for k, v in vector.items():
                        column[k] = field.reduce(column.get(k, 0) + coeff * v)
                columns.append({k: v for k, v in column.items() if v})
            d = ExactMatrix.from_columns(field, rows, columns)
        differentials.append(d)
        previous = d
    return ChainComplex.from_differentials(field, list(dims), differentials, lo=lo)


def test_field_rejects_composite():
    with pytest.raises(FieldError):
        Field.prime(9)


def test_field_coerces_fractions_mod_p():
    F5 = Field.prime(5)
    assert F5.coerce(Fraction(1, 2)) == 3
    with pytest.raises(FieldError):
        F5.coerce(Fraction(1, 5))


@pytest.mark.parametrize("seed", range(12))
def test_rank_matches_sympy_over_rationals(seed, Q):
    rng = random.Random(seed)
    matrix = random_matrix(Q, rng.randint(1, 7), rng.randint(1, 7), rng, density=0.5)
    assert matrix.rank == Matrix(matrix.to_dense()).rank()
    assert rank_dense(matrix) == matrix.rank


@pytest.mark.parametrize("seed", range(8))
def test_rank_matches_dense_reference_mod_p(seed, F7):
    rng = random.Random(100 + seed)
    matrix = random_matrix(F7, rng.randint(1, 8), rng.randint(1, 8), rng)
    assert matrix.rank == rank_dense(matrix)


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert ExactMatrix.from_rows(Field.rationals(), rows).rank == 2
    assert ExactMatrix.from_rows(Field.prime(2), rows).rank == 1


def test_echelon_contains_span(Q):
    echelon = Echelon(Q, [{0: 1, 1: 2}, {1: 1, 2: 1}])
    assert echelon.rank == 2
    assert echelon.contains({0: 1, 1: 3, 2: 1})
    assert not echelon.contains({2: 1})
    assert not echelon.add({0: 2, 1: 4})


def test_kernel_vectors_are_annihilated(Q, rng):
    matrix = random_matrix(Q, 3, 6, rng)
    kernel = kernel_basis(matrix)
    assert len(kernel) == 6 - matrix.rank
    for vector in kernel:
        assert matrix.apply(vector) == {}


def test_inverse_and_solve(F7, rng):
    g = random_invertible(F7, 4, rng)
    assert g @ inverse(g) == ExactMatrix.identity(F7, 4)
    target = {0: 1, 3: 2}
    x = solve(g, target)
    assert x is not None and g.apply(x) == target


def test_solve_reports_inconsistency(Q):
    matrix = ExactMatrix.from_rows(Q, [[1, 0], [0, 0]])
    assert solve(matrix, {1: 1}) is None


def test_kron_is_left_major(Q):
    a = ExactMatrix.from_rows(Q, [[1, 2]])
    b = ExactMatrix.from_rows(Q, [[3], [4]])
    assert a.kron(b).to_dense() == [[3, 6], [4, 8]]


def test_chain_complex_rejects_nonzero_square(Q):
    d1 = ExactMatrix.from_rows(Q, [[1]])
    d2 = ExactMatrix.from_rows(Q, [[1]])
    with pytest.raises(ConsistencyError):
        ChainComplex.from_differentials(Q, [1, 1, 1], [d1, d2])


def test_chain_complex_rejects_bad_shape(Q):
    with pytest.raises(ShapeMismatchError):
        ChainComplex.from_differentials(Q, [1, 2], [ExactMatrix.zeros(Q, 2, 2)])


@pytest.mark.parametrize("seed", range(10))
def test_sparse_homology_matches_dense_reference(seed):
    rng = random.Random(seed)
    field = Field.rationals() if seed % 2 else Field.prime(5)
    dims = [rng.randint(0, 5) for _ in range(rng.randint(2, 5))]
    complex_ = _random_complex(field, rng, dims)
    assert homology_dims(complex_) == naive_homology_dims(complex_)
    assert sum((-1) ** n * h for n, h in homology_dims(complex_).items()) == sum(
        (-1) ** n * d for n, d in enumerate(dims)
    )


def test_truncated_complex_refuses_top_degree(Q):
    complex_ = ChainComplex.from_differentials(Q, [1, 1], [ExactMatrix.zeros(Q, 1, 1)], truncated=True)
    assert homology_dims(complex_) == {0: 1}
    with pytest.raises(DegreeRangeError):
        homology_dims(complex_, [1])


def test_chain_map_check_detects_failure(Q):
    source = ChainComplex.from_differentials(Q, [1, 1], [ExactMatrix.from_rows(Q, [[1]])])
    good = ChainMap(source, source, 0, {0: ExactMatrix.identity(Q, 1), 1: ExactMatrix.identity(Q, 1)})
    assert chain_map_check(good).commutes
    bad = ChainMap(source, source, 0, {0: ExactMatrix.identity(Q, 1), 1: ExactMatrix.zeros(Q, 1, 1)})
    report = chain_map_check(bad)
    assert not report.commutes and report.first_violation == 1


@pytest.mark.parametrize("seed", range(8))
def test_hom_complex_degree_zero_counts_graded_maps(seed):
    rng = random.Random(1000 + seed)
    field = Field.rationals() if seed % 2 else Field.prime(3)
    V = _random_complex(field, rng, [rng.randint(0, 3) for _ in range(3)])
    W = _random_complex(field, rng, [rng.randint(0, 3) for _ in range(3)], lo=rng.randint(0, 1))
    hom = hom_complex(V, W)
    hv, hw = homology_dims(V), homology_dims(W)
    expected = sum(hv.get(j, 0) * hw.get(j, 0) for j in hv)
    assert homology_dims(hom).get(0, 0) == expected
    shift = 1
    expected_shifted = sum(hv.get(j, 0) * hw.get(j + shift, 0) for j in hv)
    if hom.lo <= shift <= hom.hi:
        assert homology_dims(hom, [shift])[shift] == expected_shifted


def _matrix_unit(field: Field, nrows: int, ncols: int, r: int, s: int) -> ExactMatrix:
    return ExactMatrix.from_columns(field, nrows, [{r: 1} if c == s else {} for c in range(ncols)])


def _flatten(field: Field, parts, coordinates) -> dict:
    vector: dict = {}
    for j, matrix in parts:
        for r, row in enumerate(matrix.data):
            for s, value in row.items():
                k = coordinates.setdefault((j, r, s), len(coordinates))
                vector[k] = field.reduce(vector.get(k, 0) + value)
    return {k: v for k, v in vector.items() if v}


def _homotopy_classes(V: ChainComplex, W: ChainComplex) -> int:
    """Degree-0 chain maps V -> W modulo null-homotopic ones, counted from the definition."""
    field = V.field
    degrees = range(V.lo, V.hi + 1)
    maps = [(j, r, s) for j in degrees for r in range(W.dim(j)) for s in range(V.dim(j))]
    constraints: dict = {}
    failures = Echelon(field)
    for j, r, s in maps:
        f = _matrix_unit(field, W.dim(j), V.dim(j), r, s)
        parts = [(j, W.known_differential(j) @ f), (j + 1, (f @ V.known_differential(j + 1)).scale(-1))]
        failures.add(_flatten(field, parts, constraints))
    cycles = len(maps) - failures.rank

    slots = {slot: k for k, slot in enumerate(maps)}
    boundaries = Echelon(field)
    for j in degrees:
        for r in range(W.dim(j + 1)):
            for s in range(V.dim(j)):
                h = _matrix_unit(field, W.dim(j + 1), V.dim(j), r, s)
                parts = [(j, W.known_differential(j + 1) @ h), (j + 1, h @ V.known_differential(j + 1))]
                boundaries.add(_flatten(field, parts, dict(slots)))
    return cycles - boundaries.rank


@pytest.mark.parametrize("seed", range(8))
def test_hom_complex_degree_zero_counts_homotopy_classes(seed):
    rng = random.Random(2000 + seed)
    field = Field.prime(5) if seed % 2 else Field.rationals()
    V = _random_complex(field, rng, [rng.randint(0, 3) for _ in range(3)])
    W = _random_complex(field, rng, [rng.randint(0, 3) for _ in range(3)], lo=rng.randint(0, 1))
    assert homology_dims(hom_complex(V, W)).get(0, 0) == _homotopy_classes(V, W)


def test_self_maps_of_the_circle_chains(Q):
    circle = normalized_chains(boundary(2, 2), Q)
    assert homology_dims(hom_complex(circle, circle))[0] == 2
    assert _homotopy_classes(circle, circle) == 2


def test_maps_out_of_an_acyclic_complex(Q):
    acyclic = ChainComplex.from_differentials(Q, [1, 1], [ExactMatrix.identity(Q, 1)])
    ground = ChainComplex.from_differentials(Q, [1], [])
    assert homology_dims(hom_complex(acyclic, ground)).get(0, 0) == 0
    assert _homotopy_classes(acyclic, ground) == 0


def test_zero_in_degree_zero_is_not_a_chain_map(Q):
    source = ChainComplex.from_differentials(Q, [1, 1], [ExactMatrix.from_rows(Q, [[1]])])
    lifted = ChainMap(source, source, 0, {0: ExactMatrix.zeros(Q, 1, 1), 1: ExactMatrix.identity(Q, 1)})
    report = chain_map_check(lifted)
    assert not report.commutes
    assert report.first_violation == 1
    assert report.checked_degrees == [0, 1]


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("characteristic", [0, 7])
def test_rank_is_transpose_invariant(seed, characteristic):
    field = Field.prime(characteristic) if characteristic else Field.rationals()
    matrix = random_matrix(field, 6, 6, random.Random(300 + seed), density=0.4)
    assert matrix.rank == matrix.transpose().rank
    if characteristic:
        assert matrix.rank == rank_dense(matrix)
    else:
        assert matrix.rank == Matrix(matrix.to_dense()).rank()


def test_hom_complex_requires_untruncated(Q):
    truncated = ChainComplex.from_differentials(Q, [1], [], truncated=True)
    with pytest.raises(DegreeRangeError):
        hom_complex(truncated, truncated)
