"""
Independent reference computations used only by the tests.

Nothing here imports the elimination code or the exterior-index helpers of
the package; linear algebra goes through sympy and signs are computed by
counting inversions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

import sympy


def perm_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def sym_rank(rows, ncols):
    if not rows or ncols == 0:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in r] for r in rows]).rank()


def _rat(x):
    return sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sympy.Rational(x)


# --------------------------------------------------------------------------
# Chevalley-Eilenberg cohomology, classical conventions

def lie_bracket_table(dim, entries):
    """br[i][j] = coefficient list of [e_i, e_j]."""
    br = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k), c in entries:
        br[i][j][k] += Fraction(c)
    return br


def ce_differential(dim, br, rho, m, n):
    """Matrix of d: C^n -> C^(n+1) on alternating maps, columns indexed by
    (increasing n-tuple, output coordinate). rho[i] is the m x m matrix of e_i."""
    src = list(combinations(range(dim), n)) if n >= 0 else []
    tgt = list(combinations(range(dim), n + 1))

    def f_eval(f, args):
        # f: dict increasing tuple -> vector; alternating extension, multilinear in args (basis indices)
        if len(set(args)) < len(args):
            return [0] * m
        srt = tuple(sorted(args))
        s = perm_sign([srt.index(a) for a in args])
        return [s * v for v in f.get(srt, [0] * m)]

    def f_eval_vec(f, vecs):
        # multilinear evaluation with vector arguments
        out = [Fraction(0)] * m
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vecs]
        for choice in product(*supports):
            coef = Fraction(1)
            for _, c in choice:
                coef *= c
            val = f_eval(f, [i for i, _ in choice])
            for t in range(m):
                out[t] += coef * val[t]
        return out

    cols = []
    for I in src:
        for k in range(m):
            f = {I: [Fraction(1) if t == k else Fraction(0) for t in range(m)]}
            col = []
            for J in tgt:
                xs = [[Fraction(1) if t == j else Fraction(0) for t in range(dim)] for j in J]
                tot = [Fraction(0)] * m
                for i in range(n + 1):
                    rest = xs[:i] + xs[i + 1:]
                    v = f_eval_vec(f, rest)
                    act = [sum(rho[J[i]][a][b] * v[b] for b in range(m)) for a in range(m)]
                    for t in range(m):
                        tot[t] += (-1) ** i * act[t]
                for i, j in combinations(range(n + 1), 2):
                    b = br[J[i]][J[j]]
                    rest = [x for s, x in enumerate(xs) if s != i and s != j]
                    v = f_eval_vec(f, [b] + rest)
                    for t in range(m):
                        tot[t] += (-1) ** (i + j) * v[t]
                col.extend(tot)
            cols.append(col)
    rows = len(tgt) * m
    if not cols:
        return sympy.zeros(rows, 0)
    return sympy.Matrix([[_rat(cols[c][r]) for c in range(len(cols))] for r in range(rows)])


def ce_cohomology_dims(dim, entries, rho=None, m=1, start_at_one=True):
    """dim H^n for n = 1..dim. With ``start_at_one`` there is no C^0, so H^1 = Z^1."""
    br = lie_bracket_table(dim, entries)
    if rho is None:
        rho = [[[0] * m for _ in range(m)] for _ in range(dim)]
    out = {}
    for n in range(1, dim + 1):
        d = ce_differential(dim, br, rho, m, n)
        cn = len(list(combinations(range(dim), n))) * m
        z = cn - (d.rank() if d.shape[0] and d.shape[1] else 0)
        if n == 1 and start_at_one:
            b = 0
        else:
            dp = ce_differential(dim, br, rho, m, n - 1)
            b = dp.rank() if dp.shape[0] and dp.shape[1] else 0
        out[n] = z - b
    return out


# --------------------------------------------------------------------------
# differentials by generators and relations

def kaehler_presentation(n, mult_entries, phi_rows):
    """Symbols e_l . d(e_j) modulo e_l . (d(e_i e_j) - phi(e_i) d(e_j) - phi(e_j) d(e_i)).

    Returns (relation rows as sympy Matrix over n*n symbol coordinates, dimension).
    Coordinates: (l, j) -> l * n + j meaning e_l . d(e_j).
    """
    mul = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in mult_entries:
        mul[i][j][k] += Fraction(c)
    phi = [[Fraction(x) for x in r] for r in phi_rows]

    def times(a, b):
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if x and y:
                    for k in range(n):
                        out[k] += x * y * mul[i][j][k]
        return out

    def phi_of(i):
        return [phi[k][i] for k in range(n)]

    def sym(coef_a, j):
        # element a . d(e_j) in symbol coordinates
        v = [Fraction(0)] * (n * n)
        for l, c in enumerate(coef_a):
            v[l * n + j] += c
        return v

    rels = []
    for l, i, j in product(range(n), repeat=3):
        el = [Fraction(1) if t == l else Fraction(0) for t in range(n)]
        v = [Fraction(0)] * (n * n)
        prod = mul[i][j]
        for k, c in enumerate(prod):
            if c:
                w = sym([c * x for x in el], k)
                v = [p + q for p, q in zip(v, w)]
        for a, b in ((i, j), (j, i)):
            w = sym(times(el, phi_of(a)), b)
            v = [p - q for p, q in zip(v, w)]
        rels.append(v)
    R = sympy.Matrix([[_rat(x) for x in r] for r in rels])
    return R, n * n - R.rank()


# --------------------------------------------------------------------------
# the classical Schouten bracket on the exterior algebra of a Lie algebra

def wedge_basis(dim, k):
    return list(combinations(range(dim), k))


def _wedge_mono(seq):
    if len(set(seq)) < len(seq):
        return 0, None
    srt = tuple(sorted(seq))
    return perm_sign([srt.index(a) for a in seq]), srt


def schouten(dim, entries, I, J):
    """[e_I, e_J] = sum (-1)^(i+j) [e_I_i, e_J_j] ^ e_(I - i) ^ e_(J - j), as a dict."""
    br = lie_bracket_table(dim, entries)
    out = {}
    for a, b in product(range(len(I)), range(len(J))):
        s0 = (-1) ** (a + b + 2)
        rest = list(I[:a] + I[a + 1:]) + list(J[:b] + J[b + 1:])
        for k, c in enumerate(br[I[a]][J[b]]):
            if not c:
                continue
            s, K = _wedge_mono([k] + rest)
            if s:
                out[K] = out.get(K, Fraction(0)) + s0 * s * c
    return {K: c for K, c in out.items() if c}


# --------------------------------------------------------------------------
# Poisson brackets by constraint solving

def poisson_constraint_space(n, mult_entries, phi_rows):
    """Basis of the brackets satisfying antisymmetry, Leibniz and phi-equivariance
    (all linear). Unknown index (i, j, k) -> (i * n + j) * n + k."""
    mul = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in mult_entries:
        mul[i][j][k] += Fraction(c)
    phi = [[Fraction(x) for x in r] for r in phi_rows]
    N = n ** 3

    def var(i, j, k):
        return (i * n + j) * n + k

    rows = []
    for i, j, k in product(range(n), repeat=3):
        r = [0] * N
        r[var(i, j, k)] += 1
        r[var(j, i, k)] += 1
        rows.append(r)
    # {e_i, e_j e_l} = e_j {e_i, e_l} + e_l {e_i, e_j}
    for i, j, l in product(range(n), repeat=3):
        for out in range(n):
            r = [Fraction(0)] * N
            for k, c in enumerate(mul[j][l]):
                if c:
                    r[var(i, k, out)] += c
            for (a, b) in ((j, l), (l, j)):
                # e_a {e_i, e_b}: sum_p {e_i, e_b}_p e_a e_p, coefficient on out
                for p in range(n):
                    c = mul[a][p][out]
                    if c:
                        r[var(i, b, p)] -= c
            rows.append(r)
    # phi {e_i, e_j} = {phi e_i, phi e_j}
    for i, j, out in product(range(n), repeat=3):
        r = [Fraction(0)] * N
        for p in range(n):
            if phi[out][p]:
                r[var(i, j, p)] += phi[out][p]
        for a, b in product(range(n), repeat=2):
            c = phi[a][i] * phi[b][j]
            if c:
                r[var(a, b, out)] -= c
        rows.append(r)
    M = sympy.Matrix([[_rat(x) for x in r] for r in rows])
    return [[Fraction(int(x.p), int(x.q)) for x in v] for v in M.nullspace()]


def jacobi_ok(n, bracket):
    def br(u, v):
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                if a and b:
                    for k in range(n):
                        out[k] += a * b * bracket[(i * n + j) * n + k]
        return out

    E = [[Fraction(1) if t == i else Fraction(0) for t in range(n)] for i in range(n)]
    for x, y, z in product(E, repeat=3):
        s = [p + q + r for p, q, r in zip(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y)))]
        if any(s):
            return False
    return True


def find_poisson_brackets(n, mult_entries, phi_rows, max_coeff=1):
    """Nonzero brackets (flat vectors) on the linear solution space with integer
    coordinates in [-max_coeff, max_coeff] that satisfy Jacobi, in search order."""
    basis = poisson_constraint_space(n, mult_entries, phi_rows)
    found = []
    rng = range(-max_coeff, max_coeff + 1)
    order = sorted(product(rng, repeat=len(basis)), key=lambda c: (sum(map(abs, c)), [-x for x in c]))
    for coeffs in order:
        if not any(coeffs):
            continue
        v = [sum(c * b[t] for c, b in zip(coeffs, basis)) for t in range(n ** 3)]
        if jacobi_ok(n, v):
            found.append((coeffs, v))
    return basis, found
