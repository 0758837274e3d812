"""Hom-Lie algebras and their representations, by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from homlr.errors import AlphaNotInvertible, DimensionMismatch, NotLieEndomorphism
from homlr.linalg import Matrix, Tensor3, block_diag, unit_vec, vadd, vsub, vsum
from homlr.report import Report, identity_check


@dataclass(frozen=True)
class HomLieAlgebra:
    dim: int
    bracket: Tensor3
    alpha: Matrix

    def __post_init__(self):
        n = self.dim
        if self.bracket.dims != (n, n, n):
            raise DimensionMismatch("bracket dims %r for dim %d" % (self.bracket.dims, n))
        if self.alpha.shape != (n, n):
            raise DimensionMismatch("alpha shape %r for dim %d" % (self.alpha.shape, n))

    def br(self, x, y):
        return self.bracket(x, y)

    def e(self, i):
        return unit_vec(self.dim, i)

    def ad(self, x) -> Matrix:
        return self.bracket.left(x)

    def check(self) -> Report:
        return check_hom_lie(self.dim, self.bracket, self.alpha)


def _hom_lie_cases(n, bracket, alpha):
    E = [unit_vec(n, i) for i in range(n)]
    A = [alpha.apply(v) for v in E]

    def anti():
        for i in range(n):
            for j in range(i, n):
                yield (i, j), vadd(bracket(E[i], E[j]), bracket(E[j], E[i]))

    def mult():
        for i, j in product(range(n), repeat=2):
            yield (i, j), vsub(alpha.apply(bracket(E[i], E[j])), bracket(A[i], A[j]))

    def jacobi():
        for i, j, k in product(range(n), repeat=3):
            t = vsum([bracket(A[i], bracket(E[j], E[k])),
                      bracket(A[j], bracket(E[k], E[i])),
                      bracket(A[k], bracket(E[i], E[j]))], n)
            yield (i, j, k), t

    return anti, mult, jacobi


def check_hom_lie(dim: int, bracket: Tensor3, alpha: Matrix) -> Report:
    """Antisymmetry, multiplicativity of alpha and hom-Jacobi on all basis tuples."""
    if bracket.dims != (dim, dim, dim) or alpha.shape != (dim, dim):
        raise DimensionMismatch("bracket %r / alpha %r inconsistent with dim %d"
                                % (bracket.dims, alpha.shape, dim))
    anti, mult, jacobi = _hom_lie_cases(dim, bracket, alpha)
    rep = Report("hom-Lie algebra")
    rep.add(identity_check("antisymmetry", anti()))
    rep.add(identity_check("alpha_multiplicative", mult()))
    rep.add(identity_check("hom_jacobi", jacobi()))
    return rep


def is_lie_endomorphism(bracket: Tensor3, endo: Matrix):
    """First basis pair (i, j) with endo[e_i, e_j] != [endo e_i, endo e_j], or None."""
    n = bracket.dims[0]
    for i, j in product(range(n), repeat=2):
        x, y = unit_vec(n, i), unit_vec(n, j)
        if endo.apply(bracket(x, y)) != bracket(endo.apply(x), endo.apply(y)):
            return (i, j)
    return None


def compose_hom_lie(lie: HomLieAlgebra, endo: Matrix) -> HomLieAlgebra:
    """Twist a Lie algebra (alpha = Id) by an endomorphism: bracket endo o [-,-], alpha = endo."""
    n = lie.dim
    if endo.shape != (n, n):
        raise DimensionMismatch("endomorphism shape %r for dim %d" % (endo.shape, n))
    if not lie.alpha.is_identity():
        raise ValueError("composition expects an untwisted Lie algebra (alpha = Id)")
    bad = is_lie_endomorphism(lie.bracket, endo)
    if bad is not None:
        raise NotLieEndomorphism("endomorphism does not preserve the bracket on basis pair %r" % (bad,))
    br = Tensor3.from_function((n, n, n), lambda i, j: endo.apply(lie.bracket.basis(i, j)))
    return HomLieAlgebra(n, br, endo)


def abelian(dim: int, alpha: Matrix | None = None) -> HomLieAlgebra:
    return HomLieAlgebra(dim, Tensor3.zero(dim, dim, dim), alpha if alpha is not None else Matrix.identity(dim))


@dataclass(frozen=True)
class HomLieRep:
    """theta(e_i, v) is the action of e_i on v; beta is the twist on V."""

    algebra: HomLieAlgebra
    space_dim: int
    theta: Tensor3
    beta: Matrix

    def __post_init__(self):
        n, m = self.algebra.dim, self.space_dim
        if self.theta.dims != (n, m, m):
            raise DimensionMismatch("theta dims %r, expected %r" % (self.theta.dims, (n, m, m)))
        if self.beta.shape != (m, m):
            raise DimensionMismatch("beta shape %r, expected %r" % (self.beta.shape, (m, m)))

    def act(self, x, v):
        return self.theta(x, v)

    def check(self) -> Report:
        return check_representation(self)


def check_representation(rep: HomLieRep) -> Report:
    g, th, beta = rep.algebra, rep.theta, rep.beta
    n, m = g.dim, rep.space_dim
    E = [unit_vec(n, i) for i in range(n)]
    V = [unit_vec(m, i) for i in range(m)]
    A = [g.alpha.apply(x) for x in E]
    BV = [beta.apply(v) for v in V]

    def equivariance():
        for i, k in product(range(n), range(m)):
            yield (i, k), vsub(th(A[i], BV[k]), beta.apply(th(E[i], V[k])))

    def bracket_rule():
        for i, j, k in product(range(n), range(n), range(m)):
            lhs = th(g.br(E[i], E[j]), BV[k])
            rhs = vsub(th(A[i], th(E[j], V[k])), th(A[j], th(E[i], V[k])))
            yield (i, j, k), vsub(lhs, rhs)

    rep_ = Report("hom-Lie representation")
    rep_.add(identity_check("theta_beta_equivariance", equivariance()))
    rep_.add(identity_check("bracket_action", bracket_rule()))
    return rep_


def adjoint_rep(g: HomLieAlgebra, s: int) -> HomLieRep:
    """theta(x)(y) = [alpha^s(x), y], beta = alpha.

    alpha^s is formed by repeated multiplication, so large |s| is slow.
    """
    if s < 0 and not g.alpha.is_invertible():
        raise AlphaNotInvertible("alpha^%d requested but alpha is singular" % s)
    a_s = g.alpha.power(s)
    n = g.dim
    cols = a_s.columns()
    theta = Tensor3.from_function((n, n, n), lambda i, j: g.bracket(cols[i], unit_vec(n, j)))
    return HomLieRep(g, n, theta, g.alpha)


def trivial_rep(g: HomLieAlgebra, dim: int = 1, beta: Matrix | None = None) -> HomLieRep:
    return HomLieRep(g, dim, Tensor3.zero(g.dim, dim, dim), beta if beta is not None else Matrix.identity(dim))


def change_basis(g: HomLieAlgebra, P: Matrix) -> HomLieAlgebra:
    """Express g in the basis given by the columns of P."""
    Pi = P.inverse()
    return HomLieAlgebra(g.dim, g.bracket.transform(P, P, Pi), Pi @ g.alpha @ P)


def direct_sum(g: HomLieAlgebra, h: HomLieAlgebra) -> HomLieAlgebra:
    n, m = g.dim, h.dim
    ents = [(i, j, k, c) for (i, j, k), c in g.bracket.entries.items()]
    ents += [(i + n, j + n, k + n, c) for (i, j, k), c in h.bracket.entries.items()]
    return HomLieAlgebra(n + m, Tensor3((n + m,) * 3, ents), block_diag(g.alpha, h.alpha))
