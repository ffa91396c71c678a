from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from localglobal.errors import BadParameters, DefiniteForm, DegenerateForm, LocallyUnsolvable, VertexPoint
from localglobal.padic import is_square
from localglobal.quadforms import (
    SymmetricForm,
    conic_second_intersection,
    format_hilbert_table,
    hilbert_product,
    hilbert_symbol,
    lagrange_diagonalize,
    legendre_reduce,
    norm_witness,
    pythagorean_triple,
    solve_ternary,
    ternary_represents_zero,
)

nonzero = st.integers(-500, 500).filter(bool)
places = st.sampled_from([2, 3, 5, 7, 11, 13, "inf"])


def test_hilbert_examples():
    assert hilbert_symbol(1, 1, 7) == 1
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(2, 3, 3) == -1


@given(nonzero, nonzero, nonzero, places)
def test_bimultiplicative(a, a2, b, v):
    assert hilbert_symbol(a * a2, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v)


@given(nonzero, nonzero, places)
def test_symmetry_and_norms(a, b, v):
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    assert hilbert_symbol(a, -a, v) == 1
    if a != 1:
        assert hilbert_symbol(a, 1 - a, v) == 1


@given(nonzero, nonzero)
def test_product_formula(a, b):
    assert hilbert_product(a, b).product == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(-30, 30).filter(bool), st.integers(-30, 30).filter(bool), st.sampled_from([3, 5, 7]))
def test_norm_witness(a, b, p):
    w = norm_witness(a, b, p)
    if hilbert_symbol(a, b, p) == -1:
        assert w is None
    else:
        y, z = w
        assert (z * z - Fraction(b) * y * y).agrees_with(
            z.__class__.from_rational(a, 1, p, z.abs_precision), z.abs_precision - 4
        )


def test_reduction():
    assert legendre_reduce(2, 2, 3).coefficients == (1, 1, 6)
    assert legendre_reduce(4, 9, 1).coefficients == (1, 1, 1)
    with pytest.raises(DefiniteForm):
        legendre_reduce(1, 1, -1)
    with pytest.raises(DegenerateForm):
        legendre_reduce(0, 1, 1)


@settings(max_examples=150, deadline=None)
@given(st.integers(-60, 60).filter(bool), st.integers(-60, 60).filter(bool), st.integers(-60, 60).filter(bool))
def test_solver_matches_local_criterion(a, b, c):
    verdict = ternary_represents_zero(a, b, c).represents_zero
    try:
        x, y, z = solve_ternary(a, b, c)
    except (LocallyUnsolvable, DefiniteForm):
        assert not verdict
        return
    assert verdict and (x, y, z) != (0, 0, 0)
    assert a * x * x + b * y * y == c * z * z


def test_circle_and_pythagoras():
    F = SymmetricForm.from_polynomial({(1, 1): 1, (2, 2): 1}, constant=-1)
    assert conic_second_intersection(F, (1, -1, 0), (2, 0, 1)) in {(5, 3, 4), (5, -3, 4)}
    assert pythagorean_triple(2, 1) == (4, 3, 5)
    with pytest.raises(BadParameters):
        pythagorean_triple(3, 1)
    cone = SymmetricForm([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    with pytest.raises(VertexPoint):
        conic_second_intersection(cone, (0, 0, 0), (1, 0, 1))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lagrange_diagonalize(rows):
    A = [[rows[i][j] + rows[j][i] for j in range(3)] for i in range(3)]
    C, d = lagrange_diagonalize(A)
    CtAC = [[sum(C[k][i] * A[k][l] * C[l][j] for k in range(3) for l in range(3)) for j in range(3)] for i in range(3)]
    assert all(CtAC[i][j] == (d[i] if i == j else 0) for i in range(3) for j in range(3))


def test_table_layout():
    text = format_hilbert_table(3)
    assert text.splitlines()[0] == "p = 3, v = 2"
    assert is_square(-1, 5) and not is_square(-1, 3)
