import pytest
from hypothesis import given, settings, strategies as st

from localglobal.errors import DimensionMismatch
from localglobal.lindioph import (
    det,
    format_matrix,
    matmul,
    matvec,
    minor_gcds,
    parse_matrix,
    smith_normal_form,
    solvable_all_moduli,
    solvable_mod,
    solve_integer_system,
)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).divisors == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0


@given(matrices)
def test_snf_invariants(A):
    s = smith_normal_form(A)
    assert matmul(matmul(s.U, A), s.V) == s.D
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    g = minor_gcds(A)
    running = 1
    for k, d in enumerate(s.divisors):
        running *= d
        assert g[k] == running


@settings(max_examples=60)
@given(matrices, st.data())
def test_solutions_and_moduli(A, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=len(A[0]), max_size=len(A[0])))
    b = matvec(A, x)
    sol = solve_integer_system(A, b)
    assert sol.solvable and matvec(A, sol.particular) == b
    for v in sol.lattice_basis:
        assert matvec(A, v) == [0] * len(A)
    b2 = [bi + 1 for bi in b]
    report = solvable_all_moduli(A, b2, range(2, 13))
    assert report.consistent


def test_unsolvable_witness():
    A, b = [[2, 4], [6, 8]], [1, 0]
    sol = solve_integer_system(A, b)
    assert not sol.solvable
    assert not solvable_mod(A, b, sol.witness_modulus)


def test_singular_system():
    sol = solve_integer_system([[1, 2], [2, 4]], [3, 6])
    assert sol.particular == [3, 0] and sol.lattice_basis == [[-2, 1]]


def test_io_roundtrip():
    A, b = parse_matrix("2 3\n1 2 3\n4 5 6\n7 8\n")
    assert A == [[1, 2, 3], [4, 5, 6]] and b == [7, 8]
    assert parse_matrix(format_matrix(A)) == (A, None)
    with pytest.raises(ValueError):
        parse_matrix("2 2\n1 2 3")
    with pytest.raises(DimensionMismatch):
        solve_integer_system(A, [1])
