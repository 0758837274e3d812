"""
Commutative algebras with an endomorphism, phi-derivations, and
hom-Lie-Rinehart algebras.

Conventions for the structure tensors of a HomLieRinehart ``L`` over ``A``:

    action[i, j, k]   e_i . x_j = sum_k action[i, j, k] x_k      (A x L -> L)
    bracket[i, j, k]  [x_i, x_j] = sum_k bracket[i, j, k] x_k    (L x L -> L)
    anchor[i, j, k]   rho(x_i)(e_j) = sum_k anchor[i, j, k] e_k  (L x A -> A)

L is an ordinary rational vector space; the A-module structure lives in the
action tensor. An optional ``a_basis`` records a free A-basis of L, needed
only by the exterior-algebra functor.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product

from homlr.errors import (AlgebraMismatch, DimensionMismatch, NotLREndomorphism,
                          NotRepresentationByDerivations, PhiNotInvertible)
from homlr.homlie import HomLieAlgebra, HomLieRep, check_hom_lie, check_representation
from homlr.linalg import (Matrix, Tensor3, ZERO, coordinates, flatten, kernel_basis,
                          matrix_of_linear, rank, solution_space, unflatten, unit_vec,
                          vadd, vec, vsub, vsum)
from homlr.report import Check, Report, bool_check, identity_check


# --------------------------------------------------------------------------
# commutative algebras

@dataclass(frozen=True)
class CommAlgebra:
    dim: int
    mult: Tensor3
    unit: tuple
    phi: Matrix | None = None

    def __post_init__(self):
        n = self.dim
        if self.mult.dims != (n, n, n):
            raise DimensionMismatch("mult dims %r for dim %d" % (self.mult.dims, n))
        object.__setattr__(self, "unit", vec(self.unit))
        if len(self.unit) != n:
            raise DimensionMismatch("unit of length %d for dim %d" % (len(self.unit), n))
        if self.phi is None:
            object.__setattr__(self, "phi", Matrix.identity(n))
        if self.phi.shape != (n, n):
            raise DimensionMismatch("phi shape %r for dim %d" % (self.phi.shape, n))

    def mul(self, a, b):
        return self.mult(a, b)

    def e(self, i):
        return unit_vec(self.dim, i)

    def basis(self):
        return [unit_vec(self.dim, i) for i in range(self.dim)]

    def lmul(self, a) -> Matrix:
        """Matrix of b -> a b."""
        return self.mult.left(a)

    def with_phi(self, phi: Matrix) -> "CommAlgebra":
        return replace(self, phi=phi)

    def phi_power(self, k: int) -> Matrix:
        return self.phi.power(k)

    def phi_inverse(self) -> Matrix:
        try:
            return self.phi.inverse()
        except ZeroDivisionError:
            raise PhiNotInvertible("phi is not invertible") from None

    def same_as(self, other: "CommAlgebra") -> bool:
        return (self.dim == other.dim and self.mult == other.mult
                and self.unit == other.unit and self.phi == other.phi)

    def check(self) -> Report:
        return check_comm_algebra(self)


def rationals(phi: Matrix | None = None) -> CommAlgebra:
    return CommAlgebra(1, Tensor3((1, 1, 1), [(0, 0, 0, 1)]), (1,), phi)


def check_comm_algebra(A: CommAlgebra, endo_name: str = "phi") -> Report:
    n, E = A.dim, A.basis()
    mu, phi, one = A.mult, A.phi, A.unit

    def comm():
        for i in range(n):
            for j in range(i + 1, n):
                yield (i, j), vsub(mu(E[i], E[j]), mu(E[j], E[i]))

    def assoc():
        for i, j, k in product(range(n), repeat=3):
            yield (i, j, k), vsub(mu(mu(E[i], E[j]), E[k]), mu(E[i], mu(E[j], E[k])))

    def unital():
        for i in range(n):
            yield (i,), vsub(mu(one, E[i]), E[i])
            yield (i,), vsub(mu(E[i], one), E[i])

    def phi_mult():
        for i, j in product(range(n), repeat=2):
            yield (i, j), vsub(phi.apply(mu(E[i], E[j])), mu(phi.apply(E[i]), phi.apply(E[j])))

    rep = Report("commutative algebra")
    rep.add(identity_check("commutative", comm()))
    rep.add(identity_check("associative", assoc()))
    rep.add(identity_check("unital", unital()))
    rep.add(identity_check(endo_name + "_unit", [((), vsub(phi.apply(one), one))]))
    rep.add(identity_check(endo_name + "_multiplicative", phi_mult()))
    return rep


def check_a_module(A: CommAlgebra, act: Tensor3) -> Report:
    """Unitality and associativity of an action tensor A x M -> M."""
    n, m = A.dim, act.dims[1]
    if act.dims != (n, m, m):
        raise DimensionMismatch("action dims %r over algebra of dim %d" % (act.dims, n))
    E, V = A.basis(), [unit_vec(m, k) for k in range(m)]

    def unital():
        for k in range(m):
            yield (k,), vsub(act(A.unit, V[k]), V[k])

    def assoc():
        for i, j, k in product(range(n), range(n), range(m)):
            yield (i, j, k), vsub(act(A.mul(E[i], E[j]), V[k]), act(E[i], act(E[j], V[k])))

    rep = Report("A-module")
    rep.add(identity_check("unital", unital()))
    rep.add(identity_check("associative", assoc()))
    return rep


def regular_action(A: CommAlgebra) -> Tensor3:
    """A acting on itself by multiplication."""
    return A.mult


# --------------------------------------------------------------------------
# phi-derivations

@dataclass(frozen=True)
class PhiDerivation:
    algebra: CommAlgebra
    matrix: Matrix

    def __call__(self, a):
        return self.matrix.apply(a)


def _derivation_defect(A: CommAlgebra, act: Tensor3, D: Matrix, i: int, j: int):
    a, b = A.e(i), A.e(j)
    lhs = D.apply(A.mul(a, b))
    rhs = vadd(act(A.phi.apply(a), D.apply(b)), act(A.phi.apply(b), D.apply(a)))
    return vsub(lhs, rhs)


def check_phi_derivation(A: CommAlgebra, D: Matrix, act: Tensor3 | None = None) -> Report:
    """D(ab) = phi(a).D(b) + phi(b).D(a) on basis pairs.

    ``act`` is the A-module structure of the target (default: A itself).
    """
    act = A.mult if act is None else act
    n, m = A.dim, act.dims[1]
    if D.shape != (m, n) or act.dims != (n, m, m):
        raise DimensionMismatch("derivation shape %r, target action %r, algebra dim %d"
                                % (D.shape, act.dims, n))

    def cases():
        for i in range(n):
            for j in range(i, n):
                yield (i, j), _derivation_defect(A, act, D, i, j)

    rep = Report("phi-derivation")
    rep.add(identity_check("leibniz", cases()))
    rep.add(identity_check("kills_unit", [((), D.apply(A.unit))]))
    return rep


def phi_derivations_into(A: CommAlgebra, act: Tensor3) -> list:
    """Basis (as matrices dim M x dim A) of the phi-derivations A -> M."""
    n, m = A.dim, act.dims[1]
    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def residual(v):
        D = unflatten(v, m, n)
        out = []
        for i, j in pairs:
            out.extend(_derivation_defect(A, act, D, i, j))
        return out

    sols = solution_space(residual, m * n, m * len(pairs))
    return [unflatten(v, m, n) for v in sols]


def leibniz_constraint_matrix(A: CommAlgebra) -> Matrix:
    n = A.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def residual(v):
        D = unflatten(v, n, n)
        out = []
        for i, j in pairs:
            out.extend(_derivation_defect(A, A.mult, D, i, j))
        return out

    return matrix_of_linear(residual, n * n, n * len(pairs))


def phi_derivations_basis(A: CommAlgebra) -> list:
    return [PhiDerivation(A, D) for D in phi_derivations_into(A, A.mult)]


# --------------------------------------------------------------------------
# hom-Lie-Rinehart algebras

@dataclass(frozen=True)
class HomLieRinehart:
    algebra: CommAlgebra
    rank: int
    action: Tensor3
    bracket: Tensor3
    alpha: Matrix
    anchor: Tensor3
    a_basis: tuple | None = field(default=None)

    def __post_init__(self):
        dA, n = self.algebra.dim, self.rank
        if self.action.dims != (dA, n, n):
            raise DimensionMismatch("action dims %r, expected %r" % (self.action.dims, (dA, n, n)))
        if self.bracket.dims != (n, n, n):
            raise DimensionMismatch("bracket dims %r, expected %r" % (self.bracket.dims, (n, n, n)))
        if self.alpha.shape != (n, n):
            raise DimensionMismatch("alpha shape %r, expected %r" % (self.alpha.shape, (n, n)))
        if self.anchor.dims != (n, dA, dA):
            raise DimensionMismatch("anchor dims %r, expected %r" % (self.anchor.dims, (n, dA, dA)))
        if self.a_basis is not None:
            object.__setattr__(self, "a_basis", tuple(vec(b) for b in self.a_basis))
            for b in self.a_basis:
                if len(b) != n:
                    raise DimensionMismatch("A-basis vector of length %d, expected %d" % (len(b), n))

    @property
    def phi(self) -> Matrix:
        return self.algebra.phi

    @property
    def hom_lie(self) -> HomLieAlgebra:
        return HomLieAlgebra(self.rank, self.bracket, self.alpha)

    def e(self, i):
        return unit_vec(self.rank, i)

    def basis(self):
        return [unit_vec(self.rank, i) for i in range(self.rank)]

    def act(self, a, x):
        return self.action(a, x)

    def br(self, x, y):
        return self.bracket(x, y)

    def rho(self, x, a):
        return self.anchor(x, a)

    def rho_matrix(self, x) -> Matrix:
        return self.anchor.left(x)

    def check(self) -> Report:
        return check_hom_lr(self)

    def without_a_basis(self) -> "HomLieRinehart":
        return replace(self, a_basis=None)


def check_hom_lr(L: HomLieRinehart) -> Report:
    A = L.algebra
    dA, n = A.dim, L.rank
    EA, EL = A.basis(), L.basis()
    phi, alpha = A.phi, L.alpha
    rep = Report("hom-Lie-Rinehart algebra")
    rep.extend(check_comm_algebra(A), "algebra")
    rep.extend(check_a_module(A, L.action), "module")

    hl = check_hom_lie(n, L.bracket, alpha)
    rep.extend(hl, "c1")

    def c2():
        for i, j in product(range(dA), range(n)):
            yield (i, j), vsub(alpha.apply(L.act(EA[i], EL[j])), L.act(phi.apply(EA[i]), alpha.apply(EL[j])))

    rep.add(identity_check("c2_alpha_semilinear", c2()))
    rr = check_representation(HomLieRep(L.hom_lie, dA, L.anchor, phi))
    rep.extend(rr, "c3")

    def c4():
        for i, j, k in product(range(dA), range(n), range(dA)):
            lhs = L.rho(L.act(EA[i], EL[j]), EA[k])
            rhs = A.mul(phi.apply(EA[i]), L.rho(EL[j], EA[k]))
            yield (i, j, k), vsub(lhs, rhs)

    rep.add(identity_check("c4_anchor_semilinear", c4()))

    def c5():
        for i, k, j in product(range(n), range(dA), range(n)):
            x, a, y = EL[i], EA[k], EL[j]
            lhs = L.br(x, L.act(a, y))
            rhs = vadd(L.act(phi.apply(a), L.br(x, y)), L.act(L.rho(x, a), alpha.apply(y)))
            yield (i, k, j), vsub(lhs, rhs)

    rep.add(identity_check("c5_leibniz", c5()))

    def anchor_der():
        for x in range(n):
            D = L.anchor.slice(x)
            for i in range(dA):
                for j in range(i, dA):
                    yield (x, i, j), _derivation_defect(A, A.mult, D, i, j)

    rep.add(identity_check("anchor_phi_derivation", anchor_der()))
    if L.a_basis is not None:
        rep.add(bool_check("a_basis_free", is_free_basis(L, L.a_basis)))
    rep.add(faithfulness_check(L))
    return rep


def faithfulness_check(L: HomLieRinehart) -> Check:
    """Warning-level check that a.x = 0 for all x forces a = 0."""
    dA = L.algebra.dim
    if L.rank == 0:
        return bool_check("faithful_action", dA == 0, warning=True)
    M = Matrix.from_columns([flatten(L.action.slice(i)) for i in range(dA)], rows=L.rank * L.rank) \
        if dA else None
    ok = dA == 0 or rank(M) == dA
    return bool_check("faithful_action", ok, warning=True)


def is_free_basis(L: HomLieRinehart, basis) -> bool:
    """Whether the A-span map A^r -> L, (a_i) -> sum a_i b_i, is bijective."""
    A = L.algebra
    cols = [L.act(a, b) for b in basis for a in A.basis()]
    if len(cols) != L.rank:
        return False
    return L.rank == 0 or rank(Matrix.from_columns(cols, rows=L.rank)) == L.rank


def free_coordinates(L: HomLieRinehart) -> Matrix:
    """Inverse of the map A^r -> L given by the declared A-basis.

    Row index of the result is (basis index) * dim A + (A coordinate).
    """
    A = L.algebra
    cols = [L.act(a, b) for b in L.a_basis for a in A.basis()]
    return Matrix.from_columns(cols, rows=L.rank).inverse()


def lr_from_hom_lie(g: HomLieAlgebra, A: CommAlgebra | None = None) -> HomLieRinehart:
    """A hom-Lie algebra as a hom-Lie-Rinehart algebra over Q with zero anchor."""
    A = rationals() if A is None else A
    if A.dim != 1:
        raise DimensionMismatch("zero-anchor promotion is over the one-dimensional algebra Q")
    n = g.dim
    act = Tensor3((1, n, n), [(0, j, j, A.unit[0] ** -1) for j in range(n)])
    return HomLieRinehart(A, n, act, g.bracket, g.alpha, Tensor3.zero(n, 1, 1),
                          a_basis=tuple(unit_vec(n, i) for i in range(n)))


def change_basis(L: HomLieRinehart, P: Matrix) -> HomLieRinehart:
    """Re-express L in the basis formed by the columns of P."""
    Pi = P.inverse()
    dA = L.algebra.dim
    Id = Matrix.identity(dA)
    ab = None if L.a_basis is None else tuple(Pi.apply(b) for b in L.a_basis)
    return HomLieRinehart(L.algebra, L.rank, L.action.transform(Id, P, Pi),
                          L.bracket.transform(P, P, Pi), Pi @ L.alpha @ P,
                          L.anchor.transform(P, Id, Id), ab)


# --------------------------------------------------------------------------
# constructions

def der_phi_hom_lr(A: CommAlgebra) -> HomLieRinehart:
    """The phi-derivations of A with twisted commutator, alpha_phi(D) = phi D phi^-1, anchor alpha_phi."""
    phi = A.phi
    pinv = A.phi_inverse()
    basis = phi_derivations_into(A, A.mult)
    r, dA = len(basis), A.dim
    flat = [flatten(D) for D in basis]

    def coords(D: Matrix):
        c = coordinates(flat, flatten(D))
        if c is None:
            raise AssertionError("matrix is not a phi-derivation")
        return c

    def br(D1, D2):
        return phi @ D1 @ pinv @ D2 @ pinv - phi @ D2 @ pinv @ D1 @ pinv

    def alpha_phi(D):
        return phi @ D @ pinv

    bracket = Tensor3.from_function((r, r, r), lambda i, j: coords(br(basis[i], basis[j])))
    action = Tensor3.from_function((dA, r, r), lambda i, j: coords(A.lmul(A.e(i)) @ basis[j]))
    alpha = Matrix.from_columns([coords(alpha_phi(D)) for D in basis], rows=r) if r else Matrix.zeros(0, 0)
    anchor = Tensor3.from_slices([alpha_phi(D) for D in basis], dA, dA) if r else Tensor3.zero(0, dA, dA)
    return HomLieRinehart(A, r, action, bracket, alpha, anchor)


def check_hom_lr_morphism(g: Matrix, f: Matrix, src: HomLieRinehart, dst: HomLieRinehart) -> Report:
    A, B = src.algebra, dst.algebra
    n, m = src.rank, dst.rank
    if g.shape != (B.dim, A.dim) or f.shape != (m, n):
        raise DimensionMismatch("morphism shapes g %r, f %r for %d->%d, %d->%d"
                                % (g.shape, f.shape, A.dim, B.dim, n, m))
    EA, EL = A.basis(), src.basis()
    rep = Report("hom-Lie-Rinehart morphism")

    def g_alg():
        yield (), vsub(g.apply(A.unit), B.unit)
        for i, j in product(range(A.dim), repeat=2):
            yield (i, j), vsub(g.apply(A.mul(EA[i], EA[j])), B.mul(g.apply(EA[i]), g.apply(EA[j])))

    rep.add(identity_check("g_algebra_hom", g_alg()))

    def m1():
        for i, j in product(range(A.dim), range(n)):
            yield (i, j), vsub(f.apply(src.act(EA[i], EL[j])), dst.act(g.apply(EA[i]), f.apply(EL[j])))

    def m2():
        for i, j in product(range(n), repeat=2):
            yield (i, j), vsub(f.apply(src.br(EL[i], EL[j])), dst.br(f.apply(EL[i]), f.apply(EL[j])))

    def m3():
        for i in range(n):
            yield (i,), vsub(f.apply(src.alpha.apply(EL[i])), dst.alpha.apply(f.apply(EL[i])))

    def m4():
        for i in range(A.dim):
            yield (i,), vsub(g.apply(A.phi.apply(EA[i])), B.phi.apply(g.apply(EA[i])))

    def m5():
        for i, j in product(range(n), range(A.dim)):
            yield (i, j), vsub(g.apply(src.rho(EL[i], EA[j])), dst.rho(f.apply(EL[i]), g.apply(EA[j])))

    rep.add(identity_check("m1_semilinear", m1()))
    rep.add(identity_check("m2_bracket", m2()))
    rep.add(identity_check("m3_alpha", m3()))
    rep.add(identity_check("m4_phi", m4()))
    rep.add(identity_check("m5_anchor", m5()))
    return rep


def compose_hom_lr(lr: HomLieRinehart, endo_pair) -> HomLieRinehart:
    """Twist a Lie-Rinehart algebra (alpha = Id, phi = Id) by an endomorphism pair (phi, alpha)."""
    phi, alpha = endo_pair
    A = lr.algebra
    if not (lr.alpha.is_identity() and A.phi.is_identity()):
        raise ValueError("composition expects alpha = Id and phi = Id")
    chk = check_hom_lr_morphism(phi, alpha, lr, lr)
    if not chk.passed:
        bad = chk.failures()[0]
        raise NotLREndomorphism("pair fails %s at %r" % (bad.name, bad.witness))
    n, dA = lr.rank, A.dim
    bracket = Tensor3.from_function((n, n, n), lambda i, j: alpha.apply(lr.bracket.basis(i, j)))
    anchor = Tensor3.from_function((n, dA, dA), lambda i, j: phi.apply(lr.anchor.basis(i, j)))
    return HomLieRinehart(A.with_phi(phi), n, lr.action, bracket, alpha, anchor, lr.a_basis)


def check_derivation_rep(g: HomLieAlgebra, A: CommAlgebra, rho: Tensor3) -> Report:
    rep = Report("representation by phi-derivations")
    rep.extend(check_representation(HomLieRep(g, A.dim, rho, A.phi)), "rep")

    def ders():
        for x in range(g.dim):
            D = rho.slice(x)
            for i in range(A.dim):
                for j in range(i, A.dim):
                    yield (x, i, j), _derivation_defect(A, A.mult, D, i, j)

    rep.add(identity_check("phi_derivations", ders()))
    return rep


def transformation_hom_lr(g: HomLieAlgebra, A: CommAlgebra, rho: Tensor3) -> HomLieRinehart:
    """The hom-Lie-Rinehart algebra on A (x) g; basis index a * dim g + x."""
    n, dA = g.dim, A.dim
    if rho.dims != (n, dA, dA):
        raise DimensionMismatch("rho dims %r, expected %r" % (rho.dims, (n, dA, dA)))
    chk = check_derivation_rep(g, A, rho)
    if not chk.passed:
        bad = chk.failures()[0]
        raise NotRepresentationByDerivations("%s fails at %r" % (bad.name, bad.witness))
    N = dA * n
    phi, mu = A.phi, A.mult

    def tensor(a, x):
        out = [ZERO] * N
        for p, c in enumerate(a):
            if c:
                for q, d in enumerate(x):
                    if d:
                        out[p * n + q] += c * d
        return tuple(out)

    def split(k):
        return A.e(k // n), g.e(k % n)

    def br(k, l):
        a, x = split(k)
        b, y = split(l)
        t1 = tensor(phi.apply(mu(a, b)), g.br(x, y))
        t2 = tensor(mu(phi.apply(a), rho(x, b)), g.alpha.apply(y))
        t3 = tensor(mu(phi.apply(b), rho(y, a)), g.alpha.apply(x))
        return vsub(vadd(t1, t2), t3)

    def act(i, k):
        a, x = split(k)
        return tensor(mu(A.e(i), a), x)

    def alpha_col(k):
        a, x = split(k)
        return tensor(phi.apply(a), g.alpha.apply(x))

    def anc(k, j):
        a, x = split(k)
        return mu(phi.apply(a), rho(x, A.e(j)))

    bracket = Tensor3.from_function((N, N, N), br)
    action = Tensor3.from_function((dA, N, N), act)
    alpha = Matrix.from_columns([alpha_col(k) for k in range(N)], rows=N) if N else Matrix.zeros(0, 0)
    anchor = Tensor3.from_function((N, dA, dA), anc)
    a_basis = tuple(tensor(A.unit, g.e(i)) for i in range(n))
    return HomLieRinehart(A, N, action, bracket, alpha, anchor, a_basis)


def fibered_product(L: HomLieRinehart, M: HomLieRinehart, return_projections: bool = False):
    """Pairs (l, m) with rho_L(l) = rho_M(m), anchor rho(l, m) = rho_L(l)."""
    if not L.algebra.same_as(M.algebra):
        raise AlgebraMismatch("fibered product needs the same (A, phi) on both sides")
    A = L.algebra
    dA, n, m = A.dim, L.rank, M.rank
    N = n + m

    def constraint(v):
        l, mm = v[:n], v[n:]
        return vsub(flatten(L.rho_matrix(l)), flatten(M.rho_matrix(mm))) if dA else ()

    K = solution_space(constraint, N, dA * dA)
    r = len(K)

    def coords(v):
        c = coordinates(K, v)
        if c is None:
            raise AssertionError("fibered product is not closed under the structure maps")
        return c

    def pair_br(u, v):
        return tuple(L.br(u[:n], v[:n])) + tuple(M.br(u[n:], v[n:]))

    def pair_act(a, u):
        return tuple(L.act(a, u[:n])) + tuple(M.act(a, u[n:]))

    def pair_alpha(u):
        return tuple(L.alpha.apply(u[:n])) + tuple(M.alpha.apply(u[n:]))

    bracket = Tensor3.from_function((r, r, r), lambda i, j: coords(pair_br(K[i], K[j])))
    action = Tensor3.from_function((dA, r, r), lambda i, j: coords(pair_act(A.e(i), K[j])))
    alpha = Matrix.from_columns([coords(pair_alpha(u)) for u in K], rows=r) if r else Matrix.zeros(0, 0)
    anchor = Tensor3.from_function((r, dA, dA), lambda i, j: L.rho(K[i][:n], A.e(j)))
    P = HomLieRinehart(A, r, action, bracket, alpha, anchor)
    if not return_projections:
        return P
    if r:
        p1 = Matrix.from_columns([u[:n] for u in K], rows=n)
        p2 = Matrix.from_columns([u[n:] for u in K], rows=m)
    else:
        p1, p2 = Matrix.zeros(n, 0), Matrix.zeros(m, 0)
    return P, p1, p2

