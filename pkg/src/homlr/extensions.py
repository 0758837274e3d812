"""
Actions, semidirect products, A-split abelian and central extensions.

Extensions built here live on L + M with the L-block first. Given a section
tau, an element tau(x) + i(m) is written (x, m)_tau; cocycles and
automorphisms are read off in these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from homlr.cohomology import (DEFAULT_CONVENTION, Cochain, HLRModule, cochain_from_function,
                              complex_for, zero_cochain)
from homlr.errors import (ActionInvalid, AlgebraMismatch, DimensionMismatch, NoSection,
                          NotACocycle, NotExtensionAutomorphism, SectionInvalid)
from homlr.homlie import HomLieRep, check_representation
from homlr.linalg import (Matrix, Tensor3, block_diag, coordinates, flatten, rank, same_span,
                          solution_space, unit_vec, vadd, vsub, zero_vec)
from homlr.report import Report, bool_check, identity_check
from homlr.rinehart import HomLieRinehart, check_hom_lr_morphism


# --------------------------------------------------------------------------
# actions and semidirect products

@dataclass(frozen=True)
class HLRAction:
    actor: HomLieRinehart
    target: HomLieRinehart
    theta: Tensor3

    def __post_init__(self):
        n, m = self.actor.rank, self.target.rank
        if self.theta.dims != (n, m, m):
            raise DimensionMismatch("theta dims %r, expected %r" % (self.theta.dims, (n, m, m)))


def module_as_lr(M: HLRModule) -> HomLieRinehart:
    """A module viewed as a hom-Lie-Rinehart algebra with zero bracket and zero anchor."""
    dA, m = M.base.algebra.dim, M.dim
    return HomLieRinehart(M.base.algebra, m, M.a_action, Tensor3.zero(m, m, m), M.beta,
                          Tensor3.zero(m, dA, dA))


def action_from_module(M: HLRModule) -> HLRAction:
    return HLRAction(M.base, module_as_lr(M), M.theta)


def check_action(act: HLRAction) -> Report:
    L, T = act.actor, act.target
    if not L.algebra.same_as(T.algebra):
        raise AlgebraMismatch("actor and target live over different (A, phi)")
    A = L.algebra
    dA, n, m = A.dim, L.rank, T.rank
    EA, EL, EM = A.basis(), L.basis(), T.basis()
    th, beta, phi = act.theta, T.alpha, A.phi
    rep = Report("hom-Lie-Rinehart action")
    rep.add(bool_check("target_anchor_zero", T.anchor.is_zero()))
    rep.extend(check_representation(HomLieRep(L.hom_lie, m, th, beta)), "a1")

    def a2():
        for i, j, k in product(range(n), range(m), range(m)):
            x, u, v = EL[i], EM[j], EM[k]
            lhs = th(L.alpha.apply(x), T.br(u, v))
            rhs = vadd(T.br(th(x, u), beta.apply(v)), T.br(beta.apply(u), th(x, v)))
            yield (i, j, k), vsub(lhs, rhs)

    def a3():
        for i, j, k in product(range(dA), range(n), range(m)):
            yield (i, j, k), vsub(th(L.act(EA[i], EL[j]), EM[k]), T.act(phi.apply(EA[i]), th(EL[j], EM[k])))

    def a4():
        for j, i, k in product(range(n), range(dA), range(m)):
            lhs = th(EL[j], T.act(EA[i], EM[k]))
            rhs = vadd(T.act(phi.apply(EA[i]), th(EL[j], EM[k])),
                       T.act(L.rho(EL[j], EA[i]), beta.apply(EM[k])))
            yield (j, i, k), vsub(lhs, rhs)

    rep.add(identity_check("a2_derivation_of_target", a2()))
    rep.add(identity_check("a3_a_linear", a3()))
    rep.add(identity_check("a4_leibniz", a4()))
    return rep


def _sum_structure(L: HomLieRinehart, m: int, m_action: Tensor3, beta: Matrix, bracket_fn):
    A = L.algebra
    dA, n = A.dim, L.rank
    N = n + m

    def split(v):
        return v[:n], v[n:]

    def act(i, k):
        x, u = split(unit_vec(N, k))
        return tuple(L.act(A.e(i), x)) + tuple(m_action(A.e(i), u))

    def anc(k, j):
        x, _ = split(unit_vec(N, k))
        return L.rho(x, A.e(j))

    action = Tensor3.from_function((dA, N, N), act)
    bracket = Tensor3.from_function((N, N, N), lambda k, l: bracket_fn(split(unit_vec(N, k)), split(unit_vec(N, l))))
    anchor = Tensor3.from_function((N, dA, dA), anc)
    return HomLieRinehart(A, N, action, bracket, block_diag(L.alpha, beta), anchor)


def semidirect_product(act: HLRAction) -> HomLieRinehart:
    chk = check_action(act)
    if not chk.passed:
        bad = chk.failures()[0]
        raise ActionInvalid("%s fails at %r" % (bad.name, bad.witness))
    L, T, th = act.actor, act.target, act.theta

    def br(p, q):
        (x, u), (y, v) = p, q
        mpart = vsub(vadd(T.br(u, v), th(x, v)), th(y, u))
        return tuple(L.br(x, y)) + tuple(mpart)

    return _sum_structure(L, T.rank, T.action, T.alpha, br)


# --------------------------------------------------------------------------
# extensions

@dataclass(frozen=True)
class ExtensionData:
    """i: M -> total, proj: total -> L, optional section tau: L -> total."""

    total: HomLieRinehart
    inj: Matrix
    proj: Matrix
    section: Matrix | None
    base: HomLieRinehart
    module: HLRModule

    def __post_init__(self):
        N, n, m = self.total.rank, self.base.rank, self.module.dim
        if self.inj.shape != (N, m) or self.proj.shape != (n, N):
            raise DimensionMismatch("inj %r / proj %r inconsistent with dims %d, %d, %d"
                                    % (self.inj.shape, self.proj.shape, N, n, m))
        if self.section is not None and self.section.shape != (N, n):
            raise DimensionMismatch("section shape %r, expected %r" % (self.section.shape, (N, n)))

    def i_inverse(self, v):
        c = coordinates(self.inj.columns(), v)
        if c is None:
            raise ValueError("vector is not in the image of i")
        return c

    def with_section(self, tau: Matrix) -> "ExtensionData":
        return ExtensionData(self.total, self.inj, self.proj, tau, self.base, self.module)


def _canonical_maps(n, m):
    N = n + m
    inj = Matrix.from_columns([unit_vec(N, n + k) for k in range(m)], rows=N) if m else Matrix.zeros(N, 0)
    proj = Matrix.from_columns([unit_vec(n, k) if k < n else zero_vec(n) for k in range(N)], rows=n) \
        if N else Matrix.zeros(n, 0)
    sec = Matrix.from_columns([unit_vec(N, k) for k in range(n)], rows=N) if n else Matrix.zeros(N, 0)
    return inj, proj, sec


def check_section(ext: ExtensionData) -> Report:
    if ext.section is None:
        raise NoSection("extension carries no section")
    L, T, tau = ext.base, ext.total, ext.section
    A = L.algebra
    rep = Report("A-split section")
    rep.add(bool_check("sigma_tau_identity", (ext.proj @ tau).is_identity()))

    def lin():
        for i, j in product(range(A.dim), range(L.rank)):
            yield (i, j), vsub(tau.apply(L.act(A.e(i), L.e(j))), T.act(A.e(i), tau.apply(L.e(j))))

    rep.add(identity_check("a_linear", lin()))
    rep.add(bool_check("commutes_with_alpha", tau @ L.alpha == T.alpha @ tau))
    return rep


def check_extension(ext: ExtensionData) -> Report:
    """Exactness, morphism property of the projection, the abelian condition, and the section."""
    T, L, M = ext.total, ext.base, ext.module
    rep = Report("extension")
    i, s = ext.inj, ext.proj
    rep.add(bool_check("i_injective", i.cols == 0 or rank(i) == i.cols))
    rep.add(bool_check("sigma_surjective", s.rows == 0 or rank(s) == s.rows))
    rep.add(bool_check("sigma_i_zero", (s @ i).is_zero() if i.cols else True))
    ker = solution_space(s.apply, T.rank, L.rank)
    rep.add(bool_check("exact", same_span(ker, i.columns())))
    rep.extend(check_hom_lr_morphism(Matrix.identity(L.algebra.dim), s, T, L), "sigma")

    def i_semilinear():
        A = L.algebra
        for a, k in product(range(A.dim), range(M.dim)):
            yield (a, k), vsub(i.apply(M.act(A.e(a), unit_vec(M.dim, k))), T.act(A.e(a), i.apply(unit_vec(M.dim, k))))

    rep.add(identity_check("i_a_linear", i_semilinear()))
    rep.add(bool_check("i_alpha", T.alpha @ i == i @ M.beta))

    def abelian():
        for j, k in product(range(T.rank), range(M.dim)):
            xp, mv = T.e(j), unit_vec(M.dim, k)
            yield (j, k), vsub(T.br(xp, i.apply(mv)), i.apply(M.curly(s.apply(xp), mv)))

    rep.add(identity_check("abelian", abelian()))
    if ext.section is not None:
        rep.extend(check_section(ext), "section")
    return rep


def extension_from_cocycle(L: HomLieRinehart, M: HLRModule, f: Cochain,
                           verify: bool = True, convention: str = DEFAULT_CONVENTION) -> ExtensionData:
    """The extension L + M with bracket ([x,y], {x,n} - {y,m} + f(x,y)).

    With ``verify=False`` the cocycle condition is not enforced, so the
    obstruction can be observed on the total space.
    """
    if f.degree != 2:
        raise ValueError("extensions are built from degree-2 cochains")
    cx = complex_for(L, M, convention)
    cx.require_member(f)
    if verify and not cx.is_cocycle(f):
        raise NotACocycle("delta f != 0: the bracket on L + M would violate hom-Jacobi")

    def br(p, q):
        (x, u), (y, v) = p, q
        mpart = vadd(vsub(M.curly(x, v), M.curly(y, u)), f(x, y))
        return tuple(L.br(x, y)) + tuple(mpart)

    total = _sum_structure(L, M.dim, M.a_action, M.beta, br)
    inj, proj, sec = _canonical_maps(L.rank, M.dim)
    return ExtensionData(total, inj, proj, sec, L, M)


def semidirect_extension(L: HomLieRinehart, M: HLRModule) -> ExtensionData:
    """The split extension with zero cocycle."""
    return extension_from_cocycle(L, M, zero_cochain(L, M, 2))


def cocycle_from_extension(ext: ExtensionData) -> Cochain:
    """Omega_tau(x, y) = i^-1([tau x, tau y] - tau [x, y])."""
    if ext.section is None:
        raise NoSection("extension carries no section")
    chk = check_section(ext)
    if not chk.passed:
        raise SectionInvalid("section fails %s" % chk.failures()[0].name)
    L, M, T, tau = ext.base, ext.module, ext.total, ext.section

    def omega(I):
        x, y = L.e(I[0]), L.e(I[1])
        return ext.i_inverse(vsub(T.br(tau.apply(x), tau.apply(y)), tau.apply(L.br(x, y))))

    return cochain_from_function(L, M, 2, omega)


def perturb_section(ext: ExtensionData, g: Cochain) -> ExtensionData:
    """Replace tau by tau + i o g for a degree-1 cochain g."""
    if ext.section is None:
        raise NoSection("extension carries no section")
    L = ext.base
    cols = [vadd(ext.section.apply(L.e(k)), ext.inj.apply(g(L.e(k)))) for k in range(L.rank)]
    tau = Matrix.from_columns(cols, rows=ext.total.rank) if cols else ext.section
    return ext.with_section(tau)


def extensions_cohomologous(f1: Cochain, f2: Cochain, convention: str = DEFAULT_CONVENTION):
    """(True, g) with f1 - f2 = delta g, or (False, None)."""
    cx = complex_for(f1.base, f1.module, convention)
    for f in (f1, f2):
        if f.degree != 2 or not cx.is_cocycle(f):
            raise NotACocycle("both arguments must be degree-2 cocycles")
    return cx.is_coboundary(f1 - f2)


# --------------------------------------------------------------------------
# automorphisms

def check_extension_automorphism(ext: ExtensionData, F: Matrix) -> Report:
    T = ext.total
    rep = Report("extension automorphism")
    rep.add(bool_check("invertible", F.is_invertible()))
    rep.extend(check_hom_lr_morphism(Matrix.identity(T.algebra.dim), F, T, T), "morphism")
    rep.add(bool_check("fixes_module", F @ ext.inj == ext.inj))
    rep.add(bool_check("induces_identity", ext.proj @ F == ext.proj))
    return rep


def automorphism_from_cocycle(ext: ExtensionData, psi: Cochain, convention: str = DEFAULT_CONVENTION) -> Matrix:
    """F((x, m)_tau) = (x, m + psi(x))_tau, i.e. F = Id + i psi sigma."""
    if ext.section is None:
        raise NoSection("extension carries no section")
    if psi.degree != 1:
        raise ValueError("automorphisms come from degree-1 cochains")
    cx = complex_for(ext.base, ext.module, convention)
    if not cx.is_cocycle(psi):
        raise NotACocycle("delta psi != 0")
    T = ext.total
    cols = [vadd(T.e(k), ext.inj.apply(psi(ext.proj.apply(T.e(k))))) for k in range(T.rank)]
    return Matrix.from_columns(cols, rows=T.rank) if cols else Matrix.zeros(0, 0)


def cocycle_from_automorphism(ext: ExtensionData, F: Matrix) -> Cochain:
    """psi(x) = i^-1(F tau x - tau x)."""
    if ext.section is None:
        raise NoSection("extension carries no section")
    chk = check_extension_automorphism(ext, F)
    if not chk.passed:
        bad = chk.failures()[0]
        raise NotExtensionAutomorphism("%s fails at %r" % (bad.name, bad.witness))
    tau = ext.section

    def psi(I):
        tx = tau.apply(ext.base.e(I[0]))
        return ext.i_inverse(vsub(F.apply(tx), tx))

    return cochain_from_function(ext.base, ext.module, 1, psi)


# --------------------------------------------------------------------------
# centers and central extensions

def center(L: HomLieRinehart) -> list:
    """Basis of {x : [a.x, z] = [a.alpha(x), z] = 0 for all a, z, and rho(x) = 0}."""
    A = L.algebra
    n, dA = L.rank, A.dim

    def residual(x):
        out = []
        ax = L.alpha.apply(x)
        for a, z in product(range(dA), range(n)):
            out.extend(L.br(L.act(A.e(a), x), L.e(z)))
            out.extend(L.br(L.act(A.e(a), ax), L.e(z)))
        out.extend(flatten(L.rho_matrix(x)) if dA else ())
        return out

    return solution_space(residual, n, 2 * dA * n * n + dA * dA)


def check_central_extension(ext: ExtensionData) -> Report:
    T, i, s = ext.total, ext.inj, ext.proj
    rep = Report("central extension")
    ker = solution_space(s.apply, T.rank, s.rows)
    rep.add(bool_check("image_is_kernel", same_span(ker, i.columns())))
    Z = center(T)
    cols = i.columns()
    bad = next((k for k, v in enumerate(cols) if coordinates(Z, v) is None), None)
    rep.add(bool_check("image_in_center", bad is None, witness=(bad,)))

    def anchor_zero():
        for k, v in enumerate(cols):
            yield (k,), flatten(T.rho_matrix(v)) if T.algebra.dim else ()

    def bracket_zero():
        for p, q in product(range(len(cols)), repeat=2):
            yield (p, q), T.br(cols[p], cols[q])

    rep.add(identity_check("module_anchor_zero", anchor_zero()))
    rep.add(identity_check("module_bracket_zero", bracket_zero()))
    return rep

