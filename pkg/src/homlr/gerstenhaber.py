"""
Truncated graded algebras with a degree -1 bracket: the exterior functor G,
the extraction functor F, hom-Gerstenhaber axiom checks, the BV generator on
the exterior algebra of a hom-Lie algebra, and a (sigma, tau)-DGA checker.

Sign conventions (|X| is the exterior degree):

    graded antisymmetry   [X, Y] = -(-1)^((|X|-1)(|Y|-1)) [Y, X]
    graded hom-Jacobi     sum over cyclic (X, Y, Z) of
                          (-1)^((|X|-1)(|Z|-1)) [alpha X, [Y, Z]] = 0
    hom-Leibniz           [X, Y Z] = [X, Y] alpha(Z) + (-1)^((|X|-1)|Y|) alpha(Y) [X, Z]

On wedges of module elements the bracket is

    [x_1..x_p, y_1..y_q] = sum (-1)^(i+j) [x_i, y_j] alpha(x_1..^i..x_p y_1..^j..y_q)
    [x_1..x_p, c]        = sum (-1)^(p-i) rho(x_i)(c) alpha(x_1..^i..x_p)

("signed"). The "printed" variant drops those signs; it is kept only so the
tests can show that it breaks the axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from homlr.cohomology import PRINTED, SIGNED, CochainComplex, trivial_module
from homlr.errors import AxiomFailure, DimensionMismatch, NotFreeModule
from homlr.exterior import merge_sign, subset_index, subsets
from homlr.homlie import HomLieAlgebra, abelian
from homlr.linalg import Matrix, Tensor3, ZERO, is_zero_vec, unit_vec, vadd, vscale, vsub, vsum
from homlr.report import Report, identity_check
from homlr.rinehart import (CommAlgebra, HomLieRinehart, check_hom_lr, free_coordinates,
                            is_free_basis, lr_from_hom_lie)


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class GradedAlgebra:
    """Degrees 0..top with wedge[(p, q)] (p + q <= top) and bracket[(p, q)] of degree -1."""

    top: int
    dims: tuple
    wedge: dict
    alpha: tuple
    bracket: dict
    unit: tuple
    a_basis: tuple | None = field(default=None, compare=True)

    def __post_init__(self):
        N, d = self.top, self.dims
        if len(d) != N + 1:
            raise DimensionMismatch("need %d component dimensions, got %d" % (N + 1, len(d)))
        for (p, q), t in self.wedge.items():
            if t.dims != (d[p], d[q], d[p + q]):
                raise DimensionMismatch("wedge (%d,%d) has dims %r" % (p, q, t.dims))
        for (p, q), t in self.bracket.items():
            if t.dims != (d[p], d[q], d[p + q - 1]):
                raise DimensionMismatch("bracket (%d,%d) has dims %r" % (p, q, t.dims))
        for k, a in enumerate(self.alpha):
            if a.shape != (d[k], d[k]):
                raise DimensionMismatch("alpha in degree %d has shape %r" % (k, a.shape))

    def __hash__(self):
        return hash((self.top, self.dims, tuple(sorted(self.wedge.items())),
                     tuple(sorted(self.bracket.items()))))

    def mul(self, p, q, u, v):
        if p + q > self.top:
            raise ValueError("product lands above the top degree")
        return self.wedge[p, q](u, v)

    def br(self, p, q, u, v):
        if p + q == 0:
            return ()
        return self.bracket[p, q](u, v)

    def al(self, p, u):
        return self.alpha[p].apply(u)

    def basis(self, p):
        return [unit_vec(self.dims[p], i) for i in range(self.dims[p])]

    def homogeneous_basis(self):
        return [(p, u) for p in range(self.top + 1) for u in self.basis(p)]


# --------------------------------------------------------------------------
# the exterior functor

class _Exterior:
    """Internal coordinates on the wedge powers of a free module over A.

    An element of degree k is a dict {I: A-vector} meaning sum_I c_I b_I.
    """

    def __init__(self, L: HomLieRinehart, convention: str):
        if L.a_basis is None:
            raise NotFreeModule("exterior powers need a declared A-basis of L")
        if not is_free_basis(L, L.a_basis):
            raise NotFreeModule("declared A-basis does not freely generate L")
        self.L, self.A = L, L.algebra
        self.r, self.dA = len(L.a_basis), L.algebra.dim
        self.C = free_coordinates(L)
        self.signed = convention == SIGNED
        if convention not in (SIGNED, PRINTED):
            raise ValueError("unknown sign convention %r" % (convention,))
        self._alpha_b = [self.from_L(L.alpha.apply(b)) for b in L.a_basis]
        self._alpha_cache = {}

    def from_L(self, v) -> dict:
        c = self.C.apply(v)
        dA = self.dA
        out = {}
        for i in range(self.r):
            a = c[i * dA:(i + 1) * dA]
            if not is_zero_vec(a):
                out[(i,)] = a
        return out

    def flat(self, X: dict, k: int) -> tuple:
        idx, dA = subset_index(self.r, k), self.dA
        out = [ZERO] * (len(idx) * dA)
        for I, a in X.items():
            base = idx[I] * dA
            for t, c in enumerate(a):
                out[base + t] += c
        return tuple(out)

    def element(self, k: int, j: int) -> dict:
        I = subsets(self.r, k)[j // self.dA]
        return {I: unit_vec(self.dA, j % self.dA)}

    def add(self, X, Y, s=1):
        out = dict(X)
        for I, a in Y.items():
            v = vadd(out[I], vscale(s, a)) if I in out else vscale(s, a)
            if is_zero_vec(v):
                out.pop(I, None)
            else:
                out[I] = v
        return out

    def scale(self, a, X):
        out = {}
        for I, c in X.items():
            v = self.A.mul(a, c)
            if not is_zero_vec(v):
                out[I] = v
        return out

    def wedge(self, X, Y):
        out = {}
        for I, a in X.items():
            for J, c in Y.items():
                s, K = merge_sign(I, J)
                if s == 0:
                    continue
                v = vscale(s, self.A.mul(a, c))
                if K in out:
                    v = vadd(out[K], v)
                if is_zero_vec(v):
                    out.pop(K, None)
                else:
                    out[K] = v
        return out

    def alpha_basis(self, I) -> dict:
        """alpha_G(b_I) = alpha(b_i1) ^ ... ^ alpha(b_ik)."""
        if I not in self._alpha_cache:
            X = {(): self.A.unit}
            for i in I:
                X = self.wedge(X, self._alpha_b[i])
            self._alpha_cache[I] = X
        return self._alpha_cache[I]

    def alpha(self, X):
        out = {}
        for I, a in X.items():
            out = self.add(out, self.scale(self.A.phi.apply(a), self.alpha_basis(I)))
        return out

    def pure_with_scalar(self, I, c) -> dict:
        """[b_I, c] for c in A."""
        p = len(I)
        out = {}
        for k in range(p):
            rho = self.L.rho(self.L.a_basis[I[k]], c)
            if is_zero_vec(rho):
                continue
            s = _sgn(p - (k + 1)) if self.signed else 1
            rest = I[:k] + I[k + 1:]
            out = self.add(out, self.scale(rho, self.alpha_basis(rest)), s)
        return out

    def pure_pair(self, I, J) -> dict:
        """[b_I, b_J] for p, q >= 1."""
        out = {}
        b = self.L.a_basis
        for k, l in product(range(len(I)), range(len(J))):
            br = self.from_L(self.L.br(b[I[k]], b[J[l]]))
            if not br:
                continue
            s0, K = merge_sign(I[:k] + I[k + 1:], J[:l] + J[l + 1:])
            if s0 == 0:
                continue
            s = s0 * (_sgn(k + l + 2) if self.signed else 1)
            out = self.add(out, self.wedge(br, self.alpha_basis(K)), s)
        return out

    def bracket_basis(self, I, a, J, c) -> dict:
        """[a b_I, c b_J] by the hom-Leibniz expansion in the coefficients."""
        p, q = len(I), len(J)
        phi = self.A.phi
        pa, pc = phi.apply(a), phi.apply(c)
        out = {}
        if p and q:
            out = self.scale(self.A.mul(pa, pc), self.pure_pair(I, J))
        if p:
            t = self.wedge(self.pure_with_scalar(I, c), self.alpha_basis(J))
            out = self.add(out, self.scale(pa, t))
        if q:
            eps = _sgn((p - 1) * (q - 1))
            t = self.wedge(self.pure_with_scalar(J, a), self.alpha_basis(I))
            out = self.add(out, self.scale(pc, t), -eps)
        return out


def functor_G(L: HomLieRinehart, top_degree: int | None = None, convention: str = SIGNED) -> GradedAlgebra:
    """The exterior algebra over A of a free hom-Lie-Rinehart algebra, up to ``top_degree``.

    Degree 1 uses the original basis of L, so F(G(L)) returns L's tensors.
    """
    ex = _Exterior(L, convention)
    r, dA = ex.r, ex.dA
    N = r if top_degree is None else int(top_degree)
    if N < 1:
        raise ValueError("top degree must be at least 1")
    dims = tuple(len(subsets(r, k)) * dA for k in range(N + 1))
    # change of basis: external coordinates <-> internal A-coordinates
    to_int = [Matrix.identity(d) for d in dims]
    to_ext = [Matrix.identity(d) for d in dims]
    to_int[1], to_ext[1] = ex.C, ex.C.inverse()

    def element(k, j):
        return ex.element(k, j)

    wedge = {}
    for p in range(N + 1):
        for q in range(N + 1 - p):
            t = Tensor3.from_function((dims[p], dims[q], dims[p + q]),
                                      lambda i, j: ex.flat(ex.wedge(element(p, i), element(q, j)), p + q))
            wedge[p, q] = t.transform(to_int[p], to_int[q], to_ext[p + q])
    bracket = {}
    for p in range(N + 1):
        for q in range(N + 1):
            if p + q == 0 or p + q - 1 > N:
                continue

            def fn(i, j):
                (I, a), = element(p, i).items()
                (J, c), = element(q, j).items()
                return ex.flat(ex.bracket_basis(I, a, J, c), p + q - 1)

            t = Tensor3.from_function((dims[p], dims[q], dims[p + q - 1]), fn)
            bracket[p, q] = t.transform(to_int[p], to_int[q], to_ext[p + q - 1])
    alpha = []
    for k in range(N + 1):
        cols = [ex.flat(ex.alpha(element(k, j)), k) for j in range(dims[k])]
        a_int = Matrix.from_columns(cols, rows=dims[k]) if cols else Matrix.zeros(0, 0)
        alpha.append(to_ext[k] @ a_int @ to_int[k])
    return GradedAlgebra(N, dims, wedge, tuple(alpha), bracket, L.algebra.unit, L.a_basis)


def functor_F(G: GradedAlgebra, verify: bool = True) -> HomLieRinehart:
    """Degree 0 as the algebra, degree 1 as the module, rho(x)(a) = [x, a]."""
    if G.top < 1:
        raise ValueError("need components in degrees 0 and 1")
    A = CommAlgebra(G.dims[0], G.wedge[0, 0], G.unit, G.alpha[0])
    L = HomLieRinehart(A, G.dims[1], G.wedge[0, 1], G.bracket[1, 1], G.alpha[1], G.bracket[1, 0], G.a_basis)
    if verify:
        chk = check_hom_lr(L)
        if not chk.passed:
            bad = chk.failures()[0]
            raise AxiomFailure("degree (0, 1) data fails %s at %r" % (bad.name, bad.witness))
    return L


def compose_gerstenhaber(G: GradedAlgebra, alpha) -> GradedAlgebra:
    """Twist a graded algebra by a degree-0 endomorphism: bracket alpha o [-,-], twist alpha."""
    alpha = tuple(alpha)
    br = {}
    for (p, q), t in G.bracket.items():
        a = alpha[p + q - 1]
        br[p, q] = Tensor3.from_function(t.dims, lambda i, j: a.apply(t.basis(i, j)))
    return GradedAlgebra(G.top, G.dims, G.wedge, alpha, br, G.unit, G.a_basis)


def exterior_algebra(n: int, top: int | None = None, twist: Matrix | None = None) -> GradedAlgebra:
    """The exterior algebra on Q^n with zero bracket (twist extended multiplicatively)."""
    g = abelian(n, twist)
    return functor_G(lr_from_hom_lie(g), top if top is not None else n)


# --------------------------------------------------------------------------
# axioms

def check_hom_gerstenhaber(G: GradedAlgebra) -> Report:
    N = G.top
    B = [G.basis(p) for p in range(N + 1)]
    rep = Report("hom-Gerstenhaber algebra")

    def idx(p):
        return range(G.dims[p])

    def commut():
        for p in range(N + 1):
            for q in range(N + 1 - p):
                for i, j in product(idx(p), idx(q)):
                    u, v = B[p][i], B[q][j]
                    yield (p, i, q, j), vsub(G.mul(p, q, u, v), vscale(_sgn(p * q), G.mul(q, p, v, u)))

    def assoc():
        for p in range(N + 1):
            for q in range(N + 1 - p):
                for r in range(N + 1 - p - q):
                    for i, j, k in product(idx(p), idx(q), idx(r)):
                        u, v, w = B[p][i], B[q][j], B[r][k]
                        lhs = G.mul(p + q, r, G.mul(p, q, u, v), w)
                        rhs = G.mul(p, q + r, u, G.mul(q, r, v, w))
                        yield (p, i, q, j, r, k), vsub(lhs, rhs)

    def unit():
        for p in range(N + 1):
            for i in idx(p):
                yield (p, i), vsub(G.mul(0, p, G.unit, B[p][i]), B[p][i])

    def alpha_mul():
        for p in range(N + 1):
            for q in range(N + 1 - p):
                for i, j in product(idx(p), idx(q)):
                    u, v = B[p][i], B[q][j]
                    yield (p, i, q, j), vsub(G.al(p + q, G.mul(p, q, u, v)), G.mul(p, q, G.al(p, u), G.al(q, v)))

    def brackets():
        for (p, q) in sorted(G.bracket):
            for i, j in product(idx(p), idx(q)):
                yield p, q, i, j

    def alpha_br():
        for p, q, i, j in brackets():
            u, v = B[p][i], B[q][j]
            yield (p, i, q, j), vsub(G.al(p + q - 1, G.br(p, q, u, v)), G.br(p, q, G.al(p, u), G.al(q, v)))

    def antisym():
        for p, q, i, j in brackets():
            u, v = B[p][i], B[q][j]
            s = _sgn((p - 1) * (q - 1))
            yield (p, i, q, j), vadd(G.br(p, q, u, v), vscale(s, G.br(q, p, v, u)))

    def jacobi():
        for p, q, r in product(range(N + 1), repeat=3):
            if max(p + q, q + r, r + p) - 1 > N or p + q + r - 2 > N:
                continue
            if p + q + r < 2 or min(p + q, q + r, r + p) == 0:
                continue
            for i, j, k in product(idx(p), idx(q), idx(r)):
                x, y, z = B[p][i], B[q][j], B[r][k]
                t1 = G.br(p, q + r - 1, G.al(p, x), G.br(q, r, y, z))
                t2 = G.br(q, r + p - 1, G.al(q, y), G.br(r, p, z, x))
                t3 = G.br(r, p + q - 1, G.al(r, z), G.br(p, q, x, y))
                tot = vsum([vscale(_sgn((p - 1) * (r - 1)), t1),
                            vscale(_sgn((q - 1) * (p - 1)), t2),
                            vscale(_sgn((r - 1) * (q - 1)), t3)], G.dims[p + q + r - 2])
                yield (p, i, q, j, r, k), tot

    def leibniz():
        for p, q, r in product(range(N + 1), repeat=3):
            if q + r > N or p + q + r - 1 > N or p + q + r == 0 or (p + q == 0) or (p + r == 0):
                continue
            for i, j, k in product(idx(p), idx(q), idx(r)):
                x, y, z = B[p][i], B[q][j], B[r][k]
                lhs = G.br(p, q + r, x, G.mul(q, r, y, z))
                t1 = G.mul(p + q - 1, r, G.br(p, q, x, y), G.al(r, z))
                t2 = G.mul(q, p + r - 1, G.al(q, y), G.br(p, r, x, z))
                yield (p, i, q, j, r, k), vsub(lhs, vadd(t1, vscale(_sgn((p - 1) * q), t2)))

    rep.add(identity_check("wedge_graded_commutative", commut()))
    rep.add(identity_check("wedge_associative", assoc()))
    rep.add(identity_check("wedge_unit", unit()))
    rep.add(identity_check("alpha_multiplicative", alpha_mul()))
    rep.add(identity_check("alpha_bracket", alpha_br()))
    rep.add(identity_check("bracket_graded_antisymmetric", antisym()))
    rep.add(identity_check("graded_hom_jacobi", jacobi()))
    rep.add(identity_check("hom_leibniz", leibniz()))
    return rep


# --------------------------------------------------------------------------
# BV generator

@dataclass(frozen=True)
class BVOperator:
    """matrices[k]: degree k -> degree k - 1 (matrices[0] is the zero map to nothing)."""

    carrier: GradedAlgebra
    matrices: tuple

    def apply(self, k, u):
        if k == 0:
            return ()
        return self.matrices[k].apply(u)


def bv_generator(g: HomLieAlgebra, top_degree: int | None = None) -> BVOperator:
    """d(x_1 ... x_n) = sum_{i<j} (-1)^(i+j) [x_i, x_j] alpha(x_1 ..^i..^j.. x_n)."""
    L = lr_from_hom_lie(g)
    G = functor_G(L, top_degree if top_degree is not None else g.dim)
    ex = _Exterior(L, SIGNED)
    r = g.dim
    mats = [Matrix.zeros(0, G.dims[0])]
    for k in range(1, G.top + 1):
        cols = []
        for I in subsets(r, k):
            out = {}
            for a, b in product(range(k), repeat=2):
                if a >= b:
                    continue
                br = ex.from_L(g.br(g.e(I[a]), g.e(I[b])))
                rest = tuple(t for s, t in enumerate(I) if s != a and s != b)
                out = ex.add(out, ex.wedge(br, ex.alpha_basis(rest)), _sgn(a + b + 2))
            cols.append(ex.flat(out, k - 1))
        mats.append(Matrix.from_columns(cols, rows=G.dims[k - 1]))
    return BVOperator(G, tuple(mats))


def check_bv_identity(op: BVOperator) -> Report:
    """d^2 = 0 and [X, Y] = (-1)^|X| (d(XY) - d(X) alpha(Y) - (-1)^|X| alpha(X) d(Y))."""
    G, N = op.carrier, op.carrier.top
    rep = Report("BV generator")

    def square():
        for k in range(2, N + 1):
            for j in range(G.dims[k]):
                u = unit_vec(G.dims[k], j)
                yield (k, j), op.apply(k - 1, op.apply(k, u))

    def gen():
        for p in range(N + 1):
            for q in range(N + 1 - p):
                if p + q == 0:
                    continue
                for i, j in product(range(G.dims[p]), range(G.dims[q])):
                    X, Y = unit_vec(G.dims[p], i), unit_vec(G.dims[q], j)
                    lhs = G.br(p, q, X, Y)
                    t = op.apply(p + q, G.mul(p, q, X, Y))
                    if p:
                        t = vsub(t, G.mul(p - 1, q, op.apply(p, X), G.al(q, Y)))
                    if q:
                        t = vsub(t, vscale(_sgn(p), G.mul(p, q - 1, G.al(p, X), op.apply(q, Y))))
                    yield (p, i, q, j), vsub(lhs, vscale(_sgn(p), t))

    rep.add(identity_check("d_squared_zero", square()))
    rep.add(identity_check("generates_bracket", gen()))
    return rep


# --------------------------------------------------------------------------
# (sigma, tau)-differential graded commutative algebras

def check_sigma_tau_dga(carrier: GradedAlgebra, sigma, tau, d) -> Report:
    """d[k]: degree k -> k+1 for k < top; sigma[k], tau[k] degree-0 maps."""
    N, dims = carrier.top, carrier.dims
    sigma, tau, d = tuple(sigma), tuple(tau), tuple(d)
    if len(sigma) != N + 1 or len(tau) != N + 1 or len(d) < N:
        raise DimensionMismatch("need %d sigma/tau maps and %d differentials" % (N + 1, N))
    for k in range(N):
        if d[k].shape != (dims[k + 1], dims[k]):
            raise DimensionMismatch("d in degree %d has shape %r" % (k, d[k].shape))
    for k in range(N + 1):
        if sigma[k].shape != (dims[k], dims[k]) or tau[k].shape != (dims[k], dims[k]):
            raise DimensionMismatch("sigma/tau in degree %d have the wrong shape" % k)
    rep = Report("(sigma, tau)-DGA")

    def dd():
        for k in range(N - 1):
            for j in range(dims[k]):
                yield (k, j), d[k + 1].apply(d[k].apply(unit_vec(dims[k], j)))

    def commute(maps):
        for k in range(N):
            for j in range(dims[k]):
                u = unit_vec(dims[k], j)
                yield (k, j), vsub(d[k].apply(maps[k].apply(u)), maps[k + 1].apply(d[k].apply(u)))

    def leibniz():
        for p in range(N + 1):
            for q in range(N - p):
                for i, j in product(range(dims[p]), range(dims[q])):
                    a, b = unit_vec(dims[p], i), unit_vec(dims[q], j)
                    lhs = d[p + q].apply(carrier.mul(p, q, a, b))
                    t1 = carrier.mul(p + 1, q, d[p].apply(a), tau[q].apply(b))
                    t2 = carrier.mul(p, q + 1, sigma[p].apply(a), d[q].apply(b))
                    yield (p, i, q, j), vsub(lhs, vadd(t1, vscale(_sgn(p), t2)))

    rep.add(identity_check("d_squared_zero", dd()))
    rep.add(identity_check("d_commutes_sigma", commute(sigma)))
    rep.add(identity_check("d_commutes_tau", commute(tau)))
    rep.add(identity_check("twisted_leibniz", leibniz()))
    return rep


def ce_dga(g: HomLieAlgebra):
    """The exterior algebra on the dual of g with the trivial-coefficient coboundary.

    Returns (carrier, differentials) ready for check_sigma_tau_dga.
    """
    n = g.dim
    L = lr_from_hom_lie(g)
    cx = CochainComplex(L, trivial_module(L))
    carrier = exterior_algebra(n)
    d = [Matrix.zeros(n, 1)]
    for k in range(1, n):
        N = len(subsets(n, k))
        cols = [cx.delta_ambient(unit_vec(N, j), k) for j in range(N)]
        d.append(Matrix.from_columns(cols, rows=len(subsets(n, k + 1))))
    return carrier, d


def identity_maps(G: GradedAlgebra):
    return [Matrix.identity(d) for d in G.dims]


def schouten_global_sign(G: GradedAlgebra) -> GradedAlgebra:
    """The bracket multiplied by (-1)^((p-1)(q-1)) on degrees (p, q)."""
    br = {k: (t if _sgn((k[0] - 1) * (k[1] - 1)) == 1 else t.scale(-1)) for k, t in G.bracket.items()}
    return GradedAlgebra(G.top, G.dims, G.wedge, G.alpha, br, G.unit, G.a_basis)
