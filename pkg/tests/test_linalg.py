from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sym_rank

from homlr.errors import DimensionMismatch, EliminationTooLarge, SubspaceNotContained
from homlr.linalg import (DENSE_COLUMN_LIMIT, MAX_ENTRIES_ENV, Matrix, Quotient, Tensor3,
                          fstr, kernel_basis, linear_map_from_images, rank, rref, solve)

rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # bias toward rank deficiency: some rows are combinations of others
    rows = [[draw(rat) for _ in range(c)] for _ in range(r)]
    if r > 2 and draw(st.booleans()):
        rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    return Matrix.from_rows(rows, c)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_sympy_rank(m):
    K = kernel_basis(m)
    assert rank(m) + len(K) == m.cols
    assert rank(m) == sym_rank([list(r) for r in m.data], m.cols)
    for v in K:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_canonical_form_and_determinism(m):
    r1, p1 = rref(m)
    r2, p2 = rref(Matrix(m.data, m.cols))
    assert r1 == r2 and p1 == p2
    for row in r1:
        for x in row:
            assert isinstance(x, Fraction) and x.denominator > 0
            assert Fraction(x.numerator, x.denominator) == x


@settings(max_examples=80, deadline=None)
@given(matrices(), st.lists(rat, min_size=6, max_size=6))
def test_solve_is_consistent_with_sympy(m, xs):
    x = tuple(xs[:m.cols])
    b = m.apply(x)
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b
    S = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in m.data])
    assert S.rank() == rank(m)


def test_sparse_path_agrees_with_dense():
    n = DENSE_COLUMN_LIMIT + 3
    rows = [[Fraction((i * 7 + j * 3) % 5 - 2) if (i + j) % 9 == 0 else Fraction(0) for j in range(n)]
            for i in range(6)]
    rows.append([a + b for a, b in zip(rows[0], rows[1])])
    m = Matrix.from_rows(rows, n)
    assert rank(m) == sym_rank(rows, n)
    assert rank(m) + len(kernel_basis(m)) == n


def test_inverse_and_power():
    m = Matrix.from_rows([[2, 1], [1, 1]], 2)
    assert m @ m.inverse() == Matrix.identity(2)
    assert m.power(3) == m @ m @ m
    assert m.power(-1) == m.inverse()
    assert m.power(0) == Matrix.identity(2)


def test_from_rows_shape_errors():
    with pytest.raises(DimensionMismatch):
        Matrix.from_rows([[1, 2], [3]], 2)
    with pytest.raises(DimensionMismatch):
        Tensor3((2, 2, 2), [(0, 0, 2, 1)])


def test_tensor_transform_matches_definition():
    t = Tensor3((2, 2, 2), [(0, 1, 1, 1), (1, 0, 1, -1)])
    P = Matrix.from_rows([[1, 1], [0, 1]], 2)
    Pi = P.inverse()
    u = t.transform(P, P, Pi)
    for i in range(2):
        for j in range(2):
            assert u.basis(i, j) == Pi.apply(t(P.column(i), P.column(j)))


def test_quotient_project_lift():
    big = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    Qt = Quotient(big, [(1, 1, 0)], 3)
    assert Qt.dim == 2
    for c in ((1, 0), (0, 1), (Fraction(1, 2), 3)):
        assert Qt.project(Qt.lift(c)) == tuple(Fraction(x) for x in c)
    assert Qt.project((1, 1, 0)) == (0, 0)
    with pytest.raises(SubspaceNotContained):
        Quotient([(1, 0, 0)], [(0, 1, 0)], 3)


def test_linear_map_from_images():
    m = linear_map_from_images([(1, 0), (0, 1), (1, 1)], [(2,), (3,), (5,)], 2, 1)
    assert m == Matrix.from_rows([[2, 3]], 2)
    with pytest.raises(ValueError):
        linear_map_from_images([(1, 0), (0, 1), (1, 1)], [(2,), (3,), (6,)], 2, 1)


def test_elimination_cap(monkeypatch):
    monkeypatch.setenv(MAX_ENTRIES_ENV, "10")
    with pytest.raises(EliminationTooLarge):
        rank(Matrix.identity(4))
    monkeypatch.delenv(MAX_ENTRIES_ENV)
    assert rank(Matrix.identity(4)) == 4


def test_fstr():
    assert fstr(Fraction(-3, 6)) == "-1/2"
    assert fstr(Fraction(4)) == "4"
