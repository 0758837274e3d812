from itertools import product

import pytest
import sympy
from hypothesis import given, settings

from strategies import hom_lr_algebras

from homlr import catalog
from homlr.errors import NotLREndomorphism, NotRepresentationByDerivations
from homlr.homlie import abelian
from homlr.linalg import Matrix, Tensor3, rank
from homlr.rinehart import (CommAlgebra, change_basis, check_comm_algebra, check_hom_lr,
                            check_hom_lr_morphism, check_phi_derivation, compose_hom_lr,
                            der_phi_hom_lr, fibered_product, leibniz_constraint_matrix,
                            lr_from_hom_lie, phi_derivations_basis, transformation_hom_lr)


def derivation_dim_oracle(A):
    """dim of {D : D(ab) = phi(a) D(b) + phi(b) D(a)}, solved symbolically."""
    n = A.dim
    D = sympy.Matrix(n, n, lambda i, j: sympy.Symbol("d%d_%d" % (i, j)))
    mult = [[[sympy.Rational(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in A.mult.entries.items():
        mult[i][j][k] = sympy.Rational(c.numerator, c.denominator)
    phi = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in A.phi.data])

    def mul(u, v):
        return sympy.Matrix([sum(u[i] * v[j] * mult[i][j][k] for i in range(n) for j in range(n))
                             for k in range(n)])

    eqs = []
    E = [sympy.Matrix([1 if t == i else 0 for t in range(n)]) for i in range(n)]
    for a, b in product(E, repeat=2):
        eqs.extend(D * mul(a, b) - mul(phi * a, D * b) - mul(phi * b, D * a))
    syms = list(D)
    M, _ = sympy.linear_eq_to_matrix(eqs, syms)
    return len(syms) - M.rank()


@pytest.mark.parametrize("A,hand", [
    (catalog.rationals(), 0),
    (catalog.dual_numbers(), 1),
    (catalog.dual_numbers(2), 1),
    (catalog.truncated_poly(3), 2),
    (catalog.truncated_poly(3, 3), 2),
    (catalog.split_algebra(2), 0),
])
def test_phi_derivation_dimensions(A, hand):
    assert derivation_dim_oracle(A) == hand
    basis = phi_derivations_basis(A)
    assert len(basis) == hand
    assert len(basis) == A.dim ** 2 - rank(leibniz_constraint_matrix(A))
    for D in basis:
        assert check_phi_derivation(A, D.matrix).passed


def test_non_derivation_detected():
    A = catalog.dual_numbers()
    rep = check_phi_derivation(A, Matrix.identity(2))
    assert not rep.passed


def test_comm_algebra_checks():
    assert check_comm_algebra(catalog.truncated_poly(4, 2)).passed
    bad = CommAlgebra(2, Tensor3((2, 2, 2), [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)]),
                      (1, 0), Matrix.diag([1, 2]))
    # Q[x]/(x^2 - 1) with x -> 2x is not multiplicative
    names = [c.name for c in check_comm_algebra(bad).failures()]
    assert names == ["phi_multiplicative"]


@pytest.mark.parametrize("L", [
    catalog.euler_transformation(2), catalog.euler_transformation(3, 2), catalog.der_dual_numbers(),
    catalog.der_dual_numbers(3), lr_from_hom_lie(catalog.composed_sl2(2)),
], ids=["euler2", "euler3", "der_dual", "der_dual_3", "sl2"])
def test_constructors_pass(L):
    rep = check_hom_lr(L)
    assert rep.passed, rep.failures()


def test_faithfulness_is_a_warning():
    rep = check_hom_lr(catalog.der_dual_numbers())
    assert rep.passed
    assert [c.name for c in rep.warnings] == ["faithful_action"]


def test_der_phi_identity_is_commutator():
    A = catalog.truncated_poly(3)
    L = der_phi_hom_lr(A)
    basis = [D.matrix for D in phi_derivations_basis(A)]
    for i, j in product(range(L.rank), repeat=2):
        comm = basis[i] @ basis[j] - basis[j] @ basis[i]
        got = L.br(L.e(i), L.e(j))
        assert sum((basis[k].scale(c) for k, c in enumerate(got)), Matrix.zeros(3, 3)) == comm
    assert L.alpha == Matrix.identity(L.rank)


def test_bad_leibniz_detected():
    L = catalog.euler_transformation(2)
    broken = type(L)(L.algebra, L.rank, L.action, L.bracket, L.alpha, L.anchor.scale(2), L.a_basis)
    names = {c.name for c in check_hom_lr(broken).failures()}
    assert "c5_leibniz" in names


def test_composition_reproduces_twisted_euler():
    L = catalog.euler_transformation(2)
    pair = (Matrix.diag([1, 2]), Matrix.diag([1, 2]))
    assert compose_hom_lr(L, pair) == catalog.euler_transformation(2, 2)
    with pytest.raises(NotLREndomorphism):
        compose_hom_lr(L, (Matrix.diag([1, 2]), Matrix.diag([1, 3])))


def test_fibered_product_projections():
    L = catalog.euler_transformation(2)
    M = transformation_hom_lr(abelian(2), catalog.dual_numbers(),
                              Tensor3((2, 2, 2), [(0, 1, 1, 1), (1, 1, 1, 2)]))
    P, p1, p2 = fibered_product(L, M, return_projections=True)
    assert check_hom_lr(P).passed
    Id = Matrix.identity(2)
    assert check_hom_lr_morphism(Id, p1, P, L).passed
    assert check_hom_lr_morphism(Id, p2, P, M).passed


def test_transformation_requires_derivations():
    with pytest.raises(NotRepresentationByDerivations):
        transformation_hom_lr(abelian(1), catalog.dual_numbers(), Tensor3((1, 2, 2), [(0, 0, 0, 1)]))


@settings(max_examples=40, deadline=None)
@given(hom_lr_algebras())
def test_random_hom_lr_pass(L):
    assert check_hom_lr(L).passed


def test_change_basis_round_trip():
    L = catalog.euler_transformation(3, 2)
    P = Matrix.from_rows([[1, 1, 0], [0, 1, 2], [0, 0, 1]], 3)
    M = change_basis(L, P)
    assert check_hom_lr(M).passed
    assert change_basis(M, P.inverse()) == L
