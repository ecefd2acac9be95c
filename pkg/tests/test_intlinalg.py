"""Tests for exact integer linear algebra."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_tool.intlinalg import (
    CokernelInvariants,
    DimensionError,
    characteristic_polynomial,
    cokernel_invariants,
    determinant,
    identity_matrix,
    int_matrix,
    mat_power,
    mat_sum_powers,
    matmul,
    matvec,
    smith_normal_form,
    solve_integer,
    zero_matrix,
)

from strategies import int_matrices, square_matrices


def entries(A):
    return [[int(x) for x in row] for row in A]


@settings(max_examples=1000)
@given(int_matrices())
def test_smith_postconditions(A):
    U, D, V = smith_normal_form(A)
    rows, cols = A.shape
    assert entries(matmul(matmul(U, A), V)) == entries(D)
    assert abs(determinant(U)) == 1
    assert abs(determinant(V)) == 1
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert D[i, j] == 0
    diagonal = [int(D[i, i]) for i in range(min(rows, cols))]
    assert all(d >= 0 for d in diagonal)
    for d, e in zip(diagonal, diagonal[1:]):
        assert (e == 0) if d == 0 else (e % d == 0)


@given(int_matrices(), st.data())
def test_solve_finds_lattice_points(A, data):
    y = data.draw(st.lists(st.integers(-5, 5), min_size=A.shape[1], max_size=A.shape[1]))
    b = matvec(A, y)
    x = solve_integer(A, b)
    assert x is not None
    assert matvec(A, x) == b


def test_solve_outside_lattice():
    assert solve_integer(int_matrix([[2, 0], [0, 3]]), [1, 0]) is None
    assert solve_integer(int_matrix([[2, 4]]), [3]) is None
    assert solve_integer(int_matrix([[2, 4]]), [6]) is not None


def test_solve_agrees_with_box_search():
    A = int_matrix([[2, 1], [4, 2]])
    reachable = {tuple(matvec(A, [a, b])) for a, b in itertools.product(range(-6, 7), repeat=2)}
    for b in itertools.product(range(-3, 4), repeat=2):
        assert (solve_integer(A, list(b)) is not None) == (b in reachable)


@pytest.mark.parametrize("rows, expected", [
    ([[2, 0], [0, 3]], CokernelInvariants(0, (6,))),
    ([[2, 4], [4, 8]], CokernelInvariants(1, (2,))),
    ([[1, 0], [0, 1]], CokernelInvariants(0, ())),
    ([[0], [0]], CokernelInvariants(2, ())),
])
def test_cokernel(rows, expected):
    assert cokernel_invariants(int_matrix(rows)) == expected


def test_cokernel_text():
    assert str(CokernelInvariants(2, ())) == "Z^2"
    assert str(CokernelInvariants(1, (2, 6))) == "Z + Z/2 + Z/6"
    assert str(CokernelInvariants(0, ())) == "0"


def test_determinant_examples():
    assert determinant(int_matrix([[0, 1], [1, 0]])) == -1
    assert determinant(int_matrix([[2, 3], [4, 5]])) == -2
    assert determinant(int_matrix([], cols=0)) == 1
    assert determinant(int_matrix([[1, 2], [2, 4]])) == 0


@given(square_matrices(), square_matrices())
def test_determinant_multiplicative(A, B):
    assert determinant(matmul(A, B)) == determinant(A) * determinant(B)


@given(square_matrices())
def test_cayley_hamilton(A):
    coefficients = characteristic_polynomial(A)
    n = A.shape[0]
    total = zero_matrix(n, n)
    for i, c in enumerate(coefficients):
        total = total + c * mat_power(A, n - i)
    assert entries(total) == entries(zero_matrix(n, n))
    assert coefficients[-1] == (-1) ** n * determinant(A)


def test_power_sums():
    A = int_matrix([[1, 1], [0, 1]])
    assert entries(mat_power(A, 3)) == [[1, 3], [0, 1]]
    assert entries(mat_sum_powers(A, 3)) == [[3, 3], [0, 3]]
    assert entries(mat_sum_powers(A, 0)) == [[0, 0], [0, 0]]
    assert entries(mat_power(A, 0)) == entries(identity_matrix(2))


def test_dimension_errors():
    with pytest.raises(DimensionError):
        matvec(int_matrix([[1, 2]]), [1])
    with pytest.raises(DimensionError):
        int_matrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        determinant(int_matrix([[1, 2]]))
    with pytest.raises(DimensionError):
        mat_power(int_matrix([[1]]), -1)


def test_entries_stay_exact():
    big = int_matrix([[10 ** 30, 1], [1, 0]])
    assert determinant(big) == -1
    assert mat_power(big, 2)[0, 0] == 10 ** 60 + 1
