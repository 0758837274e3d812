"""
phi-differentials of a commutative algebra with an automorphism, and the
hom-Lie-Rinehart structure they carry when the algebra is Poisson.

A (x) A is indexed by i * dim A + j for e_i (x) e_j. The module of
phi-differentials is I / I^2 with I = ker(mu), realized on a complement of
I^2 inside I; A acts on the left tensor factor and

    d(a) = phi(a) (x) 1 - 1 (x) phi(a)  (mod I^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from homlr.errors import (DimensionMismatch, ModuleAxiomFailure, NoSolution, NotPhiDerivation,
                          PoissonAxiomFailure)
from homlr.homlie import check_hom_lie
from homlr.linalg import (Matrix, Tensor3, Quotient, ZERO, flatten, kernel_basis,
                          linear_map_from_images, matrix_of_linear, row_basis, solution_space, solve,
                          unflatten, unit_vec, vadd, vec, vsub, vsum)
from homlr.report import Report, bool_check, identity_check
from homlr.rinehart import (CommAlgebra, HomLieRinehart, PhiDerivation, check_a_module,
                            check_comm_algebra, check_hom_lr, check_phi_derivation,
                            phi_derivations_into)


# --------------------------------------------------------------------------
# semidirect products and the d <-> d~ correspondence

def semidirect_algebra(A: CommAlgebra, act: Tensor3) -> CommAlgebra:
    """A x M with (a, m)(b, n) = (ab, a.n + b.m); M given by its action tensor."""
    n = A.dim
    if act.dims[0] != n or act.dims[1] != act.dims[2]:
        raise DimensionMismatch("module action dims %r over an algebra of dim %d" % (act.dims, n))
    if not check_a_module(A, act).passed:
        raise ModuleAxiomFailure("not an A-module: %s" % check_a_module(A, act).summary())
    m = act.dims[1]
    ents = dict(A.mult.entries)
    for (i, j, k), c in act.entries.items():
        ents[i, n + j, n + k] = ents.get((i, n + j, n + k), ZERO) + c
        ents[n + j, i, n + k] = ents.get((n + j, i, n + k), ZERO) + c
    return CommAlgebra(n + m, Tensor3((n + m,) * 3, ents), tuple(A.unit) + (ZERO,) * m)


def _require_derivation(A, act, d: Matrix):
    try:
        rep = check_phi_derivation(A, d, act)
    except DimensionMismatch as exc:
        raise NotPhiDerivation(str(exc)) from None
    if not rep.passed:
        bad = rep.failures()[0]
        raise NotPhiDerivation("%s fails at %r" % (bad.name, bad.witness))


def tilde_d(A: CommAlgebra, act: Tensor3, d: Matrix) -> Matrix:
    """a -> (a, d(phi^-1 a)), an algebra map A -> A x M splitting the projection."""
    pinv = A.phi_inverse()
    _require_derivation(A, act, d)
    top = Matrix.identity(A.dim)
    return Matrix.from_rows(list(top.data) + list((d @ pinv).data), A.dim)


def check_splitting_hom(A: CommAlgebra, act: Tensor3, h: Matrix) -> Report:
    """h: A -> A x M is multiplicative, unital and a section of the first projection."""
    S = semidirect_algebra(A, act)
    n = A.dim
    rep = Report("algebra section")
    rep.add(identity_check("multiplicative", (
        ((i, j), vsub(h.apply(A.mul(A.e(i), A.e(j))), S.mul(h.column(i), h.column(j))))
        for i in range(n) for j in range(n))))
    rep.add(identity_check("unital", [((), vsub(h.apply(A.unit), S.unit))]))
    rep.add(identity_check("section", (
        ((i,), vsub(h.column(i)[:n], A.e(i))) for i in range(n))))
    return rep


def derivation_from_hom(A: CommAlgebra, act: Tensor3, h: Matrix) -> Matrix:
    """Inverse direction: d(a) = h_1(phi(a)) for an algebra section h."""
    n = A.dim
    rep = check_splitting_hom(A, act, h)
    if not rep.passed:
        raise NotPhiDerivation("not an algebra section: %s" % rep.summary())
    return Matrix.from_rows(h.data[n:], n) @ A.phi


# --------------------------------------------------------------------------
# the universal phi-derivation

@dataclass(frozen=True, eq=False)
class PhiDifferentials:
    source: CommAlgebra
    space_dim: int
    d_map: Matrix
    a_action: Tensor3
    basis_lift: tuple
    ideal: tuple
    ideal_square: tuple
    alpha_tilde: Matrix

    @property
    def quotient(self) -> Quotient:
        n = self.source.dim
        return Quotient(self.ideal, self.ideal_square, n * n)

    def d(self, a) -> tuple:
        return self.d_map.apply(a)

    def act(self, a, xi) -> tuple:
        return self.a_action(a, xi)

    def spanning(self):
        """(i, j, e_i . d(e_j)) for all basis pairs; spans the module over Q."""
        A = self.source
        for i, j in product(range(A.dim), repeat=2):
            yield i, j, self.act(A.e(i), self.d(A.e(j)))

    def check(self) -> Report:
        return check_differentials(self)


def _tensor_mult(A: CommAlgebra) -> Tensor3:
    """Multiplication on A (x) A: (a (x) b)(c (x) d) = ac (x) bd."""
    n = A.dim
    N = n * n
    ents = {}
    for (i, k, p), c1 in A.mult.entries.items():
        for (j, l, q), c2 in A.mult.entries.items():
            key = (i * n + j, k * n + l, p * n + q)
            ents[key] = ents.get(key, ZERO) + c1 * c2
    return Tensor3((N, N, N), ents)


def _pure(A: CommAlgebra, a, b) -> tuple:
    n = A.dim
    return tuple(x * y for x in a for y in b) if n else ()


def universal_phi_derivation(A: CommAlgebra) -> PhiDifferentials:
    n = A.dim
    N = n * n
    phi = A.phi
    A.phi_inverse()
    mu = Matrix.from_columns([A.mul(A.e(i), A.e(j)) for i in range(n) for j in range(n)], rows=n)
    I = row_basis(kernel_basis(mu), N)
    T = _tensor_mult(A)
    I2 = row_basis([T(u, v) for u in I for v in I], N) if I else []
    Qt = Quotient(I, I2, N)
    D = Qt.dim
    one = A.unit

    def d_raw(a):
        pa = phi.apply(a)
        return vsub(_pure(A, pa, one), _pure(A, one, pa))

    d_map = matrix_of_linear(lambda a: Qt.project(d_raw(a)), n, D)

    def act_raw(a, u):
        return T(_pure(A, a, one), u)

    a_action = Tensor3.from_function((n, D, D), lambda i, k: Qt.project(act_raw(A.e(i), Qt.complement[k])))
    pp = _pure_matrix(phi, phi)
    alpha_tilde = matrix_of_linear(lambda xi: Qt.project(pp.apply(Qt.lift(xi))), D, D)
    return PhiDifferentials(A, D, d_map, a_action, tuple(Qt.complement), tuple(I), tuple(I2),
                            alpha_tilde)


def _pure_matrix(f: Matrix, g: Matrix) -> Matrix:
    """f (x) g on A (x) A (Kronecker product in the i * n + j indexing)."""
    n = f.rows
    rows = []
    for i, j in product(range(n), repeat=2):
        rows.append(tuple(f[i, k] * g[j, l] for k in range(n) for l in range(n)))
    return Matrix.from_rows(rows, n * n)


def check_differentials(D: PhiDifferentials) -> Report:
    A = D.source
    rep = Report("phi-differentials")
    rep.extend(check_a_module(A, D.a_action), "module")
    rep.extend(check_phi_derivation(A, D.d_map, D.a_action), "d")
    n = A.dim
    rep.add(bool_check("dimension_count", D.space_dim == len(D.ideal) - len(D.ideal_square),
                       detail="dim I = %d, dim I^2 = %d, dim D = %d"
                       % (len(D.ideal), len(D.ideal_square), D.space_dim)))
    gens = [D.d(A.e(j)) for j in range(n)]
    span = row_basis([D.act(A.e(i), g) for i in range(n) for g in gens], D.space_dim) if gens else []
    rep.add(bool_check("generated_by_d", len(span) == D.space_dim))
    return rep


def a_linear_maps(D: PhiDifferentials, act: Tensor3) -> list:
    """Basis of Hom_A(D, N) as matrices dim N x dim D; N given by its action tensor."""
    A = D.source
    n, m, k = A.dim, act.dims[1], D.space_dim

    def residual(v):
        f = unflatten(v, m, k)
        out = []
        for i, j in product(range(n), range(k)):
            a, xi = A.e(i), unit_vec(k, j)
            out.extend(vsub(f.apply(D.act(a, xi)), act(a, f.apply(xi))))
        return out

    return [unflatten(v, m, k) for v in solution_space(residual, m * k, n * k * m)]


def hom_from_derivation(D: PhiDifferentials, delta: Matrix, act: Tensor3 | None = None) -> Matrix:
    """The unique A-linear f: D -> N with delta = f o d."""
    A = D.source
    act = A.mult if act is None else act
    _require_derivation(A, act, delta)
    n, m, k = A.dim, act.dims[1], D.space_dim
    homs = a_linear_maps(D, act)
    # f = sum c_t homs[t]; solve f o d = delta
    if not homs:
        if delta.is_zero():
            return Matrix.zeros(m, k)
        raise NoSolution("no A-linear maps out of the differentials, but delta is nonzero")
    cols = [flatten(h @ D.d_map) for h in homs]
    sys = Matrix.from_columns(cols, rows=m * n)
    c = solve(sys, flatten(delta))
    if c is None:
        raise NoSolution("delta does not factor through d")
    if kernel_basis(sys):
        raise NoSolution("factorization through d is not unique")
    return sum((h.scale(t) for h, t in zip(homs[1:], c[1:])), homs[0].scale(c[0]))


def prop_dimensions(D: PhiDifferentials, act: Tensor3) -> tuple:
    """(dim Hom_A(D, N), dim Der_phi(A, N)); equal when d is universal."""
    return len(a_linear_maps(D, act)), len(phi_derivations_into(D.source, act))


# --------------------------------------------------------------------------
# Poisson algebras

@dataclass(frozen=True)
class PoissonAlgebra:
    """A commutative algebra with a Poisson bracket; base.phi is the automorphism."""

    base: CommAlgebra
    pbracket: Tensor3

    def br(self, x, y):
        return self.pbracket(x, y)

    def hom_br(self, x, y):
        """The composed bracket phi o [-, -]."""
        return self.base.phi.apply(self.pbracket(x, y))

    @property
    def hom_bracket(self) -> Tensor3:
        phi = self.base.phi
        return Tensor3.from_function(self.pbracket.dims, lambda i, j: phi.apply(self.pbracket.basis(i, j)))

    def check(self) -> Report:
        return check_poisson(self)


def check_poisson(P: PoissonAlgebra) -> Report:
    A = P.base
    n = A.dim
    if P.pbracket.dims != (n, n, n):
        raise DimensionMismatch("Poisson bracket dims %r for an algebra of dim %d" % (P.pbracket.dims, n))
    E = A.basis()
    rep = Report("Poisson algebra")
    rep.extend(check_comm_algebra(A), "algebra")
    rep.add(identity_check("antisymmetric", (
        ((i, j), vadd(P.br(E[i], E[j]), P.br(E[j], E[i]))) for i in range(n) for j in range(i, n))))
    rep.add(identity_check("leibniz", (
        ((i, j, k), vsub(P.br(E[i], A.mul(E[j], E[k])),
                         vadd(A.mul(E[j], P.br(E[i], E[k])), A.mul(E[k], P.br(E[i], E[j])))))
        for i, j, k in product(range(n), repeat=3))))

    def jac():
        for i, j, k in product(range(n), repeat=3):
            x, y, z = E[i], E[j], E[k]
            yield (i, j, k), vsum([P.br(x, P.br(y, z)), P.br(y, P.br(z, x)), P.br(z, P.br(x, y))], n)

    rep.add(identity_check("jacobi", jac()))
    phi = A.phi
    rep.add(identity_check("phi_preserves_bracket", (
        ((i, j), vsub(phi.apply(P.br(E[i], E[j])), P.br(phi.apply(E[i]), phi.apply(E[j]))))
        for i in range(n) for j in range(n))))
    rep.add(bool_check("phi_invertible", phi.is_invertible()))
    return rep


def check_purely_hom_poisson(A, mult: Tensor3, pbr: Tensor3, alpha: Matrix) -> Report:
    """Hom-Lie bracket, commutative associative product, and
    [x, yz] = alpha(y)[x, z] + alpha(z)[x, y]."""
    n = A.dim if isinstance(A, CommAlgebra) else int(A)
    if mult.dims != (n, n, n) or pbr.dims != (n, n, n) or alpha.shape != (n, n):
        raise DimensionMismatch("inconsistent dimensions for a purely hom-Poisson algebra")
    E = [unit_vec(n, i) for i in range(n)]
    rep = Report("purely hom-Poisson algebra")
    rep.extend(check_hom_lie(n, pbr, alpha), "hom_lie")
    rep.add(identity_check("commutative", (
        ((i, j), vsub(mult(E[i], E[j]), mult(E[j], E[i]))) for i in range(n) for j in range(n))))
    rep.add(identity_check("associative", (
        ((i, j, k), vsub(mult(mult(E[i], E[j]), E[k]), mult(E[i], mult(E[j], E[k]))))
        for i, j, k in product(range(n), repeat=3))))
    rep.add(identity_check("hom_leibniz", (
        ((i, j, k), vsub(pbr(E[i], mult(E[j], E[k])),
                         vadd(mult(alpha.apply(E[j]), pbr(E[i], E[k])),
                              mult(alpha.apply(E[k]), pbr(E[i], E[j])))))
        for i, j, k in product(range(n), repeat=3))))
    return rep


# --------------------------------------------------------------------------
# the hom-Lie-Rinehart algebra of differentials

def _bilinear_from_spanning(D: PhiDifferentials, value, out_dim: int, name: str) -> Tensor3:
    """Bilinear map on D determined by value(i, j, k, l) on (e_i de_j, e_k de_l).

    Raises PoissonAxiomFailure if the prescribed values are not compatible
    with the relations of D (the map would not be well defined).
    """
    A = D.source
    k = D.space_dim
    span = list(D.spanning())
    # pick spanning elements forming a basis of D
    chosen, vecs = [], []
    for i, j, v in span:
        if len(row_basis(vecs + [v], k)) > len(vecs):
            chosen.append((i, j))
            vecs.append(v)
        if len(vecs) == k:
            break
    if len(vecs) < k:
        raise PoissonAxiomFailure("differentials not spanned by e_i de_j")
    P = Matrix.from_columns(vecs, rows=k).inverse() if k else Matrix.zeros(0, 0)

    def on_basis(s, t):
        (i, j), (p, q) = chosen[s], chosen[t]
        return value(i, j, p, q)

    B = Tensor3.from_function((k, k, out_dim), on_basis) if k else Tensor3.zero(0, 0, out_dim)
    T = B.transform(P, P, Matrix.identity(out_dim))
    for (i, j, u), (p, q, v) in product(span, repeat=2):
        if vsub(T(u, v), value(i, j, p, q)) != (ZERO,) * out_dim:
            raise PoissonAxiomFailure("%s is not well defined on the differentials (at %r)"
                                      % (name, (i, j, p, q)))
    return T


def poisson_pairing(P: PoissonAlgebra, D: PhiDifferentials | None = None) -> Tensor3:
    """pi(a dx, b dy) = ab {x, y} with {-,-} = phi o [-,-]; checked well defined."""
    A = P.base
    D = universal_phi_derivation(A) if D is None else D
    E = A.basis()
    return _bilinear_from_spanning(
        D, lambda i, j, k, l: A.mul(A.mul(E[i], E[k]), P.hom_br(E[j], E[l])), A.dim, "pi")


def pi_star(D: PhiDifferentials, pi: Tensor3, xi) -> Matrix:
    """The phi-derivation a -> pi(xi, da)."""
    return pi.left(xi) @ D.d_map


def poisson_hom_lr(P: PoissonAlgebra, D: PhiDifferentials | None = None) -> HomLieRinehart:
    chk = check_poisson(P)
    if not chk.passed:
        bad = chk.failures()[0]
        raise PoissonAxiomFailure("%s fails at %r" % (bad.name, bad.witness))
    A = P.base
    D = universal_phi_derivation(A) if D is None else D
    pi = poisson_pairing(P, D)
    k, n = D.space_dim, A.dim
    E = A.basis()
    phi, at = A.phi, D.alpha_tilde
    anchor = Tensor3.from_function((k, n, n), lambda s, j: pi_star(D, pi, at.apply(unit_vec(k, s))).column(j))

    def rho(xi, b):
        return anchor(xi, b)

    def value(i, j, p, q):
        a, x, b, y = E[i], E[j], E[p], E[q]
        adx, bdy = D.act(a, D.d(x)), D.act(b, D.d(y))
        t1 = D.act(A.mul(phi.apply(a), phi.apply(b)), D.d(P.hom_br(x, y)))
        t2 = D.act(rho(adx, b), at.apply(D.d(y)))
        t3 = D.act(rho(bdy, a), at.apply(D.d(x)))
        return vsub(vadd(t1, t2), t3)

    bracket = _bilinear_from_spanning(D, value, k, "bracket")
    return HomLieRinehart(A, k, D.a_action, bracket, at, anchor)


def check_generator_jacobi(P: PoissonAlgebra, L: HomLieRinehart, D: PhiDifferentials) -> Report:
    """[[dx, dy], d phi z] + [[dy, dz], d phi x] + [[dz, dx], d phi y] = 0 on basis triples."""
    A = P.base
    E, phi = A.basis(), A.phi
    n = A.dim

    def cases():
        for i, j, l in product(range(n), repeat=3):
            x, y, z = E[i], E[j], E[l]
            dx, dy, dz = D.d(x), D.d(y), D.d(z)
            terms = [L.br(L.br(dx, dy), D.d(phi.apply(z))),
                     L.br(L.br(dy, dz), D.d(phi.apply(x))),
                     L.br(L.br(dz, dx), D.d(phi.apply(y)))]
            yield (i, j, l), vsum(terms, D.space_dim)

    rep = Report("generator hom-Jacobi")
    rep.add(identity_check("generator_jacobi", cases()))
    return rep


def lie_derivative(D: PhiDifferentials, X, omega) -> tuple:
    """L_X(a df) = phi(a) d(X f) + alpha_phi(X)(a) d(phi f), with alpha_phi(X) = phi X phi^-1."""
    return lie_derivative_matrix(D, X).apply(vec(omega))


def lie_derivative_matrix(D: PhiDifferentials, X) -> Matrix:
    A = D.source
    X = X.matrix if isinstance(X, PhiDerivation) else X
    _require_derivation(A, A.mult, X)
    phi = A.phi
    aX = phi @ X @ A.phi_inverse()
    E = A.basis()
    src, tgt = [], []
    for i, j, v in D.spanning():
        a, f = E[i], E[j]
        src.append(v)
        tgt.append(vadd(D.act(phi.apply(a), D.d(X.apply(f))), D.act(aX.apply(a), D.d(phi.apply(f)))))
    try:
        return linear_map_from_images(src, tgt, D.space_dim, D.space_dim)
    except ValueError as exc:
        raise NotPhiDerivation("Lie derivative not well defined: %s" % exc) from None


def check_bracket_rewriting(L: HomLieRinehart, D: PhiDifferentials, pi: Tensor3) -> Report:
    """[xi1, xi2] = L_{pi* xi1} xi2 - L_{pi* xi2} xi1 - d pi(xi1, xi2) on basis pairs."""
    k = D.space_dim

    def cases():
        for s, t in product(range(k), repeat=2):
            u, v = unit_vec(k, s), unit_vec(k, t)
            rhs = vsub(lie_derivative(D, pi_star(D, pi, u), v), lie_derivative(D, pi_star(D, pi, v), u))
            rhs = vsub(rhs, D.d(pi(u, v)))
            yield (s, t), vsub(L.br(u, v), rhs)

    rep = Report("Lie derivative rewriting")
    rep.add(identity_check("bracket_rewriting", cases()))
    return rep


def check_poisson_hom_lr(P: PoissonAlgebra) -> Report:
    """All checks attached to the construction: the hom-Lie-Rinehart axioms,
    the generator Jacobi identity and the Lie-derivative rewriting."""
    D = universal_phi_derivation(P.base)
    L = poisson_hom_lr(P, D)
    pi = poisson_pairing(P, D)
    rep = Report("Poisson differentials")
    rep.extend(check_differentials(D), "differentials")
    rep.extend(check_hom_lr(L), "hom_lr")
    rep.extend(check_generator_jacobi(P, L, D), "generators")
    rep.extend(check_bracket_rewriting(L, D, pi), "lie_derivative")
    return rep
