"""
Modules over a hom-Lie-Rinehart algebra and the twisted cochain complex.

A cochain of degree n is stored on the increasing n-tuples I of L-basis
indices: the flat vector has f(e_I)[k] at position idx(I) * dim M + k.
C^n is the subspace cut out by

    f(alpha x_1, ..., alpha x_n) = beta f(x_1, ..., x_n)
    f(a.x_1, x_2, ..., x_n) = phi^(n-1)(a) . f(x_1, ..., x_n)

and there is no C^0, so H^1 is the space of 1-cocycles.

The sign in front of f([x_i, x_j], ...) in the coboundary is selectable:
"signed" uses (-1)^(i+j), "printed" uses +1. Only "signed" squares to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from homlr.errors import (DimensionMismatch, ImageNotInCochainSpace, InvalidDegree,
                          NotACochain)
from homlr.exterior import subset_index, subsets, wedge
from homlr.homlie import HomLieRep, check_representation
from homlr.linalg import (Matrix, Tensor3, ZERO, coordinates, is_zero_vec, kernel_basis,
                          matrix_of_linear, quotient_dim, rank, solution_space, solve,
                          unit_vec, vadd, vec, vscale, vsub, zero_vec)
from homlr.report import Report, identity_check
from homlr.rinehart import HomLieRinehart, check_a_module

SIGNED = "signed"
PRINTED = "printed"
CONVENTIONS = (SIGNED, PRINTED)
DEFAULT_CONVENTION = SIGNED


def pair_sign(i: int, j: int, convention: str) -> int:
    """Sign of the f([x_i, x_j], ...) term, positions 1-based."""
    if convention == SIGNED:
        return -1 if (i + j) % 2 else 1
    if convention == PRINTED:
        return 1
    raise ValueError("unknown sign convention %r" % (convention,))


@dataclass(frozen=True)
class HLRModule:
    """theta(x_i, m_j) is {x_i, m_j}; a_action(a_i, m_j) is a_i . m_j."""

    base: HomLieRinehart
    dim: int
    a_action: Tensor3
    theta: Tensor3
    beta: Matrix

    def __post_init__(self):
        dA, n, m = self.base.algebra.dim, self.base.rank, self.dim
        if self.a_action.dims != (dA, m, m):
            raise DimensionMismatch("a_action dims %r, expected %r" % (self.a_action.dims, (dA, m, m)))
        if self.theta.dims != (n, m, m):
            raise DimensionMismatch("theta dims %r, expected %r" % (self.theta.dims, (n, m, m)))
        if self.beta.shape != (m, m):
            raise DimensionMismatch("beta shape %r, expected %r" % (self.beta.shape, (m, m)))

    def act(self, a, v):
        return self.a_action(a, v)

    def curly(self, x, v):
        return self.theta(x, v)

    def check(self) -> Report:
        return check_module(self)


def check_module(M: HLRModule) -> Report:
    L = M.base
    A = L.algebra
    dA, n, m = A.dim, L.rank, M.dim
    EA, EL, EM = A.basis(), L.basis(), [unit_vec(m, k) for k in range(m)]
    phi, beta = A.phi, M.beta
    rep = Report("hom-Lie-Rinehart module")
    rep.extend(check_a_module(A, M.a_action), "a_module")
    rep.extend(check_representation(HomLieRep(L.hom_lie, m, M.theta, beta)), "m1")

    def m2():
        for i, k in product(range(dA), range(m)):
            yield (i, k), vsub(beta.apply(M.act(EA[i], EM[k])), M.act(phi.apply(EA[i]), beta.apply(EM[k])))

    def m3():
        for i, j, k in product(range(dA), range(n), range(m)):
            yield (i, j, k), vsub(M.curly(L.act(EA[i], EL[j]), EM[k]),
                                  M.act(phi.apply(EA[i]), M.curly(EL[j], EM[k])))

    def m4():
        for j, i, k in product(range(n), range(dA), range(m)):
            lhs = M.curly(EL[j], M.act(EA[i], EM[k]))
            rhs = vadd(M.act(phi.apply(EA[i]), M.curly(EL[j], EM[k])),
                       M.act(L.rho(EL[j], EA[i]), beta.apply(EM[k])))
            yield (j, i, k), vsub(lhs, rhs)

    rep.add(identity_check("m2_beta_semilinear", m2()))
    rep.add(identity_check("m3_theta_a_linear", m3()))
    rep.add(identity_check("m4_theta_leibniz", m4()))
    return rep


def trivial_module(L: HomLieRinehart, dim: int = 1, beta: Matrix | None = None) -> HLRModule:
    """Q^dim with zero action of L and A acting through its scalar part (A must be Q)."""
    A = L.algebra
    if A.dim != 1:
        raise DimensionMismatch("trivial coefficients are defined here only over A = Q")
    u = A.unit[0]
    act = Tensor3((1, dim, dim), [(0, k, k, 1 / u) for k in range(dim)])
    return HLRModule(L, dim, act, Tensor3.zero(L.rank, dim, dim),
                     Matrix.identity(dim) if beta is None else beta)


def algebra_module(L: HomLieRinehart) -> HLRModule:
    """M = A with beta = phi and {x, a} = rho(x)(a)."""
    A = L.algebra
    return HLRModule(L, A.dim, A.mult, L.anchor, A.phi)


def adjoint_module(L: HomLieRinehart) -> HLRModule:
    """M = L with beta = alpha and {x, y} = [x, y].

    This satisfies the module axioms only when the anchor of L vanishes.
    """
    return HLRModule(L, L.rank, L.action, L.bracket, L.alpha)


# --------------------------------------------------------------------------
# cochains

@dataclass(frozen=True)
class Cochain:
    base: HomLieRinehart
    module: HLRModule
    degree: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", vec(self.values))
        need = len(subsets(self.base.rank, self.degree)) * self.module.dim
        if len(self.values) != need:
            raise DimensionMismatch("cochain of length %d, expected %d" % (len(self.values), need))

    def on(self, I) -> tuple:
        """f(e_I) for an increasing tuple I."""
        m = self.module.dim
        k = subset_index(self.base.rank, self.degree)[tuple(I)]
        return self.values[k * m:(k + 1) * m]

    def as_dict(self) -> dict:
        return {I: self.on(I) for I in subsets(self.base.rank, self.degree)}

    def __call__(self, *vectors):
        return evaluate(self.values, self.base.rank, self.module.dim, vectors)

    def __add__(self, other):
        return Cochain(self.base, self.module, self.degree, vadd(self.values, other.values))

    def __sub__(self, other):
        return Cochain(self.base, self.module, self.degree, vsub(self.values, other.values))

    def scale(self, c):
        return Cochain(self.base, self.module, self.degree, vscale(c, self.values))

    def is_zero(self) -> bool:
        return is_zero_vec(self.values)


def evaluate(values, r: int, m: int, vectors) -> tuple:
    """f(v_1, ..., v_n) for a flat cochain, expanding the wedge of the arguments."""
    n = len(vectors)
    idx = subset_index(r, n)
    out = [ZERO] * m
    for I, c in wedge(vectors).items():
        base = idx[I] * m
        for k in range(m):
            a = values[base + k]
            if a:
                out[k] += c * a
    return tuple(out)


@dataclass(frozen=True)
class CochainSpace:
    degree: int
    basis: tuple
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)


class CochainComplex:
    """The complex C^*(L; M) with cached bases and coboundary matrices."""

    def __init__(self, L: HomLieRinehart, M: HLRModule, convention: str = DEFAULT_CONVENTION):
        if M.base is not L and M.base != L:
            raise DimensionMismatch("module is over a different hom-Lie-Rinehart algebra")
        if convention not in CONVENTIONS:
            raise ValueError("unknown sign convention %r" % (convention,))
        self.L, self.M, self.convention = L, M, convention
        self.r, self.m = L.rank, M.dim
        self._bases = {}
        self._frames = {}
        self._deltas = {}
        self._alpha_pows = {0: Matrix.identity(self.r)}
        self._phi_pows = {0: Matrix.identity(L.algebra.dim)}

    def _alpha_pow(self, k):
        if k not in self._alpha_pows:
            self._alpha_pows[k] = self.L.alpha.power(k)
        return self._alpha_pows[k]

    def _phi_pow(self, k):
        if k not in self._phi_pows:
            self._phi_pows[k] = self.L.algebra.phi.power(k)
        return self._phi_pows[k]

    def ambient_dim(self, n: int) -> int:
        return len(subsets(self.r, n)) * self.m

    # membership ---------------------------------------------------------

    def constraint_residual(self, values, n: int) -> list:
        """Both membership conditions for a flat degree-n vector, concatenated."""
        L, M, r, m = self.L, self.M, self.r, self.m
        A = L.algebra
        alpha, beta = L.alpha, M.beta
        acols = alpha.columns()
        out = []
        for I in subsets(r, n):
            k = subset_index(r, n)[I]
            fI = values[k * m:(k + 1) * m]
            lhs = evaluate(values, r, m, [acols[i] for i in I])
            out.extend(vsub(lhs, beta.apply(fI)))
        phin = self._phi_pow(n - 1)
        EL = L.basis()
        for a, p in product(range(A.dim), range(r)):
            ax = L.act(A.e(a), EL[p])
            pa = phin.apply(A.e(a))
            for K in subsets(r, n - 1):
                args = [EL[q] for q in K]
                lhs = evaluate(values, r, m, [ax] + args)
                rhs = M.act(pa, evaluate(values, r, m, [EL[p]] + args))
                out.extend(vsub(lhs, rhs))
        return out

    def is_member(self, values, n: int) -> bool:
        return is_zero_vec(self.constraint_residual(values, n))

    def basis(self, n: int) -> list:
        if n < 1:
            raise InvalidDegree("cochains start in degree 1, got %d" % n)
        if n not in self._bases:
            N = self.ambient_dim(n)
            if N == 0:
                self._bases[n] = []
            else:
                n_out = len(self.constraint_residual(zero_vec(N), n))
                self._bases[n] = solution_space(lambda v: self.constraint_residual(v, n), N, n_out)
        return self._bases[n]

    def space(self, n: int) -> CochainSpace:
        b = self.basis(n)
        return CochainSpace(n, tuple(Cochain(self.L, self.M, n, v) for v in b), self.ambient_dim(n))

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def coords(self, values, n: int):
        """Coordinates of a member of C^n in the computed basis, or None."""
        b = self.basis(n)
        if not b:
            return () if is_zero_vec(values) else None
        if n not in self._frames:
            self._frames[n] = Matrix.from_columns(b, rows=self.ambient_dim(n))
        return solve(self._frames[n], values)

    def from_coords(self, c, n: int) -> tuple:
        N = self.ambient_dim(n)
        out = [ZERO] * N
        for a, v in zip(c, self.basis(n)):
            if a:
                for i, x in enumerate(v):
                    if x:
                        out[i] += a * x
        return tuple(out)

    # coboundary ---------------------------------------------------------

    def delta_ambient(self, values, n: int) -> tuple:
        """The coboundary of a flat degree-n vector, as a flat degree-(n+1) vector."""
        L, M, r, m = self.L, self.M, self.r, self.m
        EL = L.basis()
        acols = L.alpha.columns()
        an1 = self._alpha_pow(n - 1).columns()
        idx_n = subset_index(r, n)
        out = []
        for J in subsets(r, n + 1):
            acc = [ZERO] * m
            for pos in range(n + 1):
                rest = J[:pos] + J[pos + 1:]
                k = idx_n[rest]
                fv = values[k * m:(k + 1) * m]
                if not is_zero_vec(fv):
                    t = M.curly(an1[J[pos]], fv)
                    sgn = 1 if pos % 2 == 0 else -1
                    for q in range(m):
                        acc[q] += sgn * t[q]
            for p in range(n + 1):
                for q in range(p + 1, n + 1):
                    s = pair_sign(p + 1, q + 1, self.convention)
                    b = L.br(EL[J[p]], EL[J[q]])
                    if is_zero_vec(b):
                        continue
                    args = [b] + [acols[J[t]] for t in range(n + 1) if t != p and t != q]
                    t = evaluate(values, r, m, args)
                    for w in range(m):
                        acc[w] += s * t[w]
            out.extend(acc)
        return tuple(out)

    def coboundary_matrix(self, n: int) -> Matrix:
        if n < 1:
            raise InvalidDegree("coboundary starts in degree 1, got %d" % n)
        if n not in self._deltas:
            src = self.basis(n)
            tgt_dim = self.dim(n + 1)
            cols = []
            for v in src:
                img = self.delta_ambient(v, n)
                if not self.is_member(img, n + 1):
                    raise ImageNotInCochainSpace(
                        "coboundary of a degree-%d cochain violates the degree-%d conditions" % (n, n + 1))
                c = self.coords(img, n + 1)
                if c is None:
                    raise ImageNotInCochainSpace("coboundary image outside the computed cochain basis")
                cols.append(c)
            self._deltas[n] = Matrix.from_columns(cols, rows=tgt_dim) if cols else Matrix.zeros(tgt_dim, 0)
        return self._deltas[n]

    def cocycles(self, n: int) -> list:
        """Basis of ker delta^n in C^n coordinates."""
        d = self.coboundary_matrix(n)
        if d.cols == 0:
            return []
        if d.rows == 0:
            return [unit_vec(d.cols, j) for j in range(d.cols)]
        return kernel_basis(d)

    def coboundaries(self, n: int) -> list:
        """Spanning set of im delta^(n-1) in C^n coordinates."""
        if n == 1:
            return []
        return self.coboundary_matrix(n - 1).columns()

    def cohomology_dim(self, n: int) -> int:
        if n < 1:
            raise InvalidDegree("cohomology starts in degree 1, got %d" % n)
        return quotient_dim(self.cocycles(n), self.coboundaries(n))

    def cohomology_representatives(self, n: int) -> list:
        """Flat cocycles whose classes form a basis of H^n."""
        Z = self.cocycles(n)
        B = self.coboundaries(n)
        chosen = list(B)
        rk = rank(Matrix.from_columns(chosen, rows=self.dim(n))) if chosen else 0
        reps = []
        for z in Z:
            if rank(Matrix.from_columns(chosen + [z], rows=self.dim(n))) > rk:
                chosen.append(z)
                rk += 1
                reps.append(self.from_coords(z, n))
        return reps

    # cochain-level API ----------------------------------------------------

    def cochain(self, values, n: int) -> Cochain:
        return Cochain(self.L, self.M, n, values)

    def require_member(self, f: Cochain):
        if f.degree < 1:
            raise InvalidDegree("cochains start in degree 1")
        if not self.is_member(f.values, f.degree):
            raise NotACochain("values violate the degree-%d cochain conditions" % f.degree)

    def delta(self, f: Cochain) -> Cochain:
        self.require_member(f)
        return Cochain(self.L, self.M, f.degree + 1, self.delta_ambient(f.values, f.degree))

    def is_cocycle(self, f: Cochain) -> bool:
        self.require_member(f)
        return is_zero_vec(self.delta_ambient(f.values, f.degree))

    def is_coboundary(self, f: Cochain):
        """(True, g) with delta g = f, or (False, None).

        In degree 1 only the zero cochain counts, with preimage None.
        """
        self.require_member(f)
        n = f.degree
        if n == 1:
            return (f.is_zero(), None)
        c = self.coords(f.values, n)
        d = self.coboundary_matrix(n - 1)
        g = solve(d, c) if d.cols else (() if is_zero_vec(c) else None)
        if g is None:
            return (False, None)
        return (True, Cochain(self.L, self.M, n - 1, self.from_coords(g, n - 1)))


@lru_cache(maxsize=64)
def complex_for(L: HomLieRinehart, M: HLRModule, convention: str = DEFAULT_CONVENTION) -> CochainComplex:
    return CochainComplex(L, M, convention)


def cochain_space(L, M, n: int) -> CochainSpace:
    return complex_for(L, M).space(n)


def coboundary_matrix(L, M, n: int, convention: str = DEFAULT_CONVENTION) -> Matrix:
    return complex_for(L, M, convention).coboundary_matrix(n)


def cohomology_dim(L, M, n: int, convention: str = DEFAULT_CONVENTION) -> int:
    return complex_for(L, M, convention).cohomology_dim(n)


def is_cocycle(f: Cochain, convention: str = DEFAULT_CONVENTION) -> bool:
    return complex_for(f.base, f.module, convention).is_cocycle(f)


def is_coboundary(f: Cochain, convention: str = DEFAULT_CONVENTION):
    return complex_for(f.base, f.module, convention).is_coboundary(f)


def delta(f: Cochain, convention: str = DEFAULT_CONVENTION) -> Cochain:
    return complex_for(f.base, f.module, convention).delta(f)


def cochain_from_function(L, M, n: int, fn) -> Cochain:
    """Cochain with f(e_I) = fn(I) on increasing tuples."""
    vals = []
    for I in subsets(L.rank, n):
        v = vec(fn(I))
        if len(v) != M.dim:
            raise DimensionMismatch("value of length %d, expected %d" % (len(v), M.dim))
        vals.extend(v)
    return Cochain(L, M, n, vals)


def zero_cochain(L, M, n: int) -> Cochain:
    return Cochain(L, M, n, zero_vec(len(subsets(L.rank, n)) * M.dim))
