"""Basis-independence and bookkeeping invariants on random instances."""

from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import classical_with_automorphism, hom_lr_algebras, lr_with_module, unitriangular

from homlr.cohomology import adjoint_module, complex_for, trivial_module
from homlr.extensions import center
from homlr.homlie import change_basis
from homlr.linalg import is_zero_vec
from homlr.rinehart import change_basis as lr_change_basis
from homlr.rinehart import lr_from_hom_lie


def _dims(L, M):
    cx = complex_for(L, M)
    return [cx.cohomology_dim(n) for n in range(1, L.rank + 1)]


@settings(max_examples=25, deadline=None)
@given(classical_with_automorphism(4), st.data())
def test_cohomology_is_basis_independent(g, data):
    P = data.draw(unitriangular(g.dim))
    for make in (trivial_module, adjoint_module):
        L = lr_from_hom_lie(g)
        L2 = lr_from_hom_lie(change_basis(g, P))
        assert _dims(L, make(L)) == _dims(L2, make(L2))


@settings(max_examples=30, deadline=None)
@given(lr_with_module())
def test_euler_characteristic(instance):
    # the complex starts in degree 1 and stops at the rank, so both alternating sums agree
    L, M = instance
    cx = complex_for(L, M)
    degrees = range(1, L.rank + 1)
    assert sum((-1) ** n * cx.dim(n) for n in degrees) == \
        sum((-1) ** n * cx.cohomology_dim(n) for n in degrees)


@settings(max_examples=30, deadline=None)
@given(hom_lr_algebras(), st.data())
def test_center_is_central_and_basis_independent(L, data):
    Z = center(L)
    A = L.algebra
    for x in Z:
        for a in range(A.dim):
            ax = L.act(A.e(a), x)
            for z in range(L.rank):
                assert is_zero_vec(L.br(ax, L.e(z)))
        assert L.rho_matrix(x).is_zero()
    P = data.draw(unitriangular(L.rank))
    assert len(center(lr_change_basis(L, P))) == len(Z)
