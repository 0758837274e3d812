from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import jacobi_ok
from strategies import hom_lie_algebras, unitriangular

from homlr import catalog
from homlr.errors import AlphaNotInvertible, NotLieEndomorphism
from homlr.homlie import (HomLieAlgebra, abelian, adjoint_rep, change_basis, check_hom_lie,
                          check_representation, compose_hom_lie, direct_sum, trivial_rep)
from homlr.linalg import Matrix, Tensor3


def test_classical_algebras_pass():
    for g in (catalog.sl2(), catalog.h3(), catalog.r2(), abelian(3)):
        rep = check_hom_lie(g.dim, g.bracket, g.alpha)
        assert rep.passed
        assert [c.name for c in rep.checks] == ["antisymmetry", "alpha_multiplicative", "hom_jacobi"]


def test_broken_jacobi_reports_witness_and_defect():
    # [e0, e1] = e1, [e1, e2] = e0, [e0, e2] = 0 is antisymmetric but not Lie
    br = Tensor3((3, 3, 3), [(0, 1, 1, 1), (1, 0, 1, -1), (1, 2, 0, 1), (2, 1, 0, -1)])
    rep = check_hom_lie(3, br, Matrix.identity(3))
    bad = rep.failures()
    assert [c.name for c in bad] == ["hom_jacobi"]
    assert bad[0].witness is not None and any(bad[0].defect)
    flat = [br.entries.get((i, j, k), 0) for i, j, k in product(range(3), repeat=3)]
    assert not jacobi_ok(3, flat)


def test_non_antisymmetric_detected():
    br = Tensor3((2, 2, 2), [(0, 1, 1, 1)])
    rep = check_hom_lie(2, br, Matrix.identity(2))
    assert not rep.passed and rep.failures()[0].name == "antisymmetry"


def test_composition_twist_sl2():
    g = catalog.composed_sl2(3)
    assert g.check().passed
    # the twisted bracket is alpha o [-,-]
    assert g.br(g.e(0), g.e(1)) == (0, 6, 0)
    assert g.alpha == Matrix.diag([1, 3, Fraction(1, 3)])


def test_composition_rejects_non_endomorphism():
    with pytest.raises(NotLieEndomorphism):
        compose_hom_lie(catalog.sl2(), Matrix.diag([1, 2, 2]))


@pytest.mark.parametrize("s", [-2, -1, 0, 1, 2])
def test_adjoint_representations(s):
    for g in (catalog.composed_sl2(2), compose_hom_lie(catalog.h3(), Matrix.diag([2, 3, 6]))):
        assert check_representation(adjoint_rep(g, s)).passed


def test_adjoint_negative_power_needs_invertible_alpha():
    g = compose_hom_lie(catalog.h3(), Matrix.diag([0, 1, 0]))
    assert g.check().passed
    assert check_representation(adjoint_rep(g, 1)).passed
    with pytest.raises(AlphaNotInvertible):
        adjoint_rep(g, -1)


def test_trivial_rep_and_direct_sum():
    g = direct_sum(catalog.sl2(), catalog.r2())
    assert g.dim == 5 and g.check().passed
    assert check_representation(trivial_rep(g, 2)).passed


@settings(max_examples=60, deadline=None)
@given(hom_lie_algebras(4), st.data())
def test_random_instances_pass_and_survive_basis_change(g, data):
    assert g.check().passed
    P = data.draw(unitriangular(g.dim))
    h = change_basis(g, P)
    assert h.check().passed
    assert change_basis(h, P.inverse()) == g
    for s in (0, 1):
        assert check_representation(adjoint_rep(g, s)).passed


entry = st.sampled_from([0, 0, 0, 1, -1, 2])


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 3), st.data())
def test_classical_jacobi_verdict_agrees_with_bruteforce(n, data):
    # random antisymmetric brackets; alpha = Id reduces to classical Jacobi
    ents = []
    for i, j in product(range(n), repeat=2):
        if i < j:
            for k in range(n):
                c = data.draw(entry)
                if c:
                    ents += [(i, j, k, c), (j, i, k, -c)]
    br = Tensor3((n, n, n), ents)
    flat = [br.entries.get((i, j, k), 0) for i, j, k in product(range(n), repeat=3)]
    rep = check_hom_lie(n, br, Matrix.identity(n))
    assert rep.passed == jacobi_ok(n, flat)


def test_dimension_checks():
    with pytest.raises(ValueError):
        HomLieAlgebra(2, Tensor3.zero(3, 3, 3), Matrix.identity(2))
