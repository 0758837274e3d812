"""
Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms with a positive
denominator). Vectors are plain tuples of Fractions. ``Matrix`` is an
immutable dense matrix, ``Tensor3`` a sparse 3-index array read as a bilinear
map ``V1 x V2 -> V3``:

    T(u, v)[k] = sum_{i,j} u[i] * v[j] * T[i, j, k]

Row reduction switches from a dense to a sparse elimination once a matrix has
more than ``DENSE_COLUMN_LIMIT`` columns. Both produce the reduced row echelon
form, which is unique, so the choice never changes a result.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import product

from homlr.errors import DimensionMismatch, EliminationTooLarge, SubspaceNotContained

DENSE_COLUMN_LIMIT = 512
MAX_ENTRIES_ENV = "HOMLR_MAX_ELIM_ENTRIES"

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("not an exact scalar: %r" % (x,))


def fstr(x: Fraction) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


# --------------------------------------------------------------------------
# vectors

def vec(xs) -> tuple:
    return tuple(Q(x) for x in xs)


def zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> tuple:
    c = Q(c)
    return tuple(c * a for a in v)


def vsum(vectors, n: int) -> tuple:
    out = [ZERO] * n
    for v in vectors:
        for i, a in enumerate(v):
            if a:
                out[i] += a
    return tuple(out)


def is_zero_vec(v) -> bool:
    return not any(v)


def first_nonzero(v):
    for i, a in enumerate(v):
        if a:
            return i
    return None


# --------------------------------------------------------------------------
# matrices

class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data, cols=None):
        data = tuple(tuple(Q(x) for x in row) for row in data)
        rows = len(data)
        if cols is None:
            if rows == 0:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, data, rows, cols):
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.data = data
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n, n)

    @classmethod
    def diag(cls, entries):
        entries = vec(entries)
        n = len(entries)
        return cls._raw(
            tuple(tuple(entries[i] if i == j else ZERO for j in range(n)) for i in range(n)),
            n, n)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [vec(c) for c in columns]
        if not columns:
            if rows is None:
                raise DimensionMismatch("row count needed for a matrix with no columns")
            return cls._raw(tuple(() for _ in range(rows)), rows, 0)
        n = len(columns[0])
        if rows is not None and n != rows:
            raise DimensionMismatch("column length %d != %d" % (n, rows))
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(n)), n, len(columns))

    @classmethod
    def from_rows(cls, rows_, cols):
        rows_ = [vec(r) for r in rows_]
        return cls(rows_, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> tuple:
        return self.data[i]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.cols, self.rows)

    def apply(self, v) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch("vector of length %d for %dx%d matrix" % (len(v), self.rows, self.cols))
        nz = [(j, a) for j, a in enumerate(v) if a]
        return tuple(sum((r[j] * a for j, a in nz), ZERO) for r in self.data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch("cannot multiply %dx%d by %dx%d" % (self.shape + other.shape))
            ocols = other.columns()
            return Matrix._raw(
                tuple(tuple(sum((a * b for a, b in zip(r, c) if a), ZERO) for c in ocols)
                      for r in self.data),
                self.rows, other.cols)
        return self.apply(other)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape %s != %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_same(other)
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self.data, other.data)), self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self.data, other.data)), self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return Matrix._raw(tuple(vscale(c, r) for r in self.data), self.rows, self.cols)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(fstr(x) for x in r) for r in self.data)
        return "Matrix(%dx%d: [%s])" % (self.rows, self.cols, body)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def power(self, k: int) -> "Matrix":
        """Integer power by repeated multiplication; negative k uses the inverse."""
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        base = self if k >= 0 else self.inverse()
        out = Matrix.identity(self.rows)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> "Matrix":
        """Exact inverse; raises ZeroDivisionError when singular."""
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self.data)]
        red, pivots = _rref_dense(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix._raw(tuple(tuple(red[i][n:]) for i in range(n)), n, n)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    rows = [tuple(r) + (ZERO,) * b.cols for r in a.data]
    rows += [(ZERO,) * a.cols + tuple(r) for r in b.data]
    return Matrix._raw(tuple(rows), a.rows + b.rows, a.cols + b.cols)


def hstack(mats, rows) -> Matrix:
    cols = []
    for m in mats:
        cols.extend(m.columns())
    return Matrix.from_columns(cols, rows=rows)


def vstack(mats, cols) -> Matrix:
    data = []
    for m in mats:
        if m.cols != cols:
            raise DimensionMismatch("vstack column mismatch")
        data.extend(m.data)
    return Matrix._raw(tuple(data), len(data), cols)


# --------------------------------------------------------------------------
# elimination

def _guard(rows, cols):
    cap = os.environ.get(MAX_ENTRIES_ENV)
    if cap and rows * cols > int(cap):
        raise EliminationTooLarge(
            "elimination on a %dx%d matrix exceeds %s=%s" % (rows, cols, MAX_ENTRIES_ENV, cap))


def _rref_dense(rows, ncols):
    """In-place RREF of a list of lists. Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [x * inv for x in m[r]]
        prow = m[r]
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nzc:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_sparse(rows, ncols):
    """Same contract as _rref_dense, rows held as {col: value} dicts."""
    m = [{j: x for j, x in enumerate(r) if x} for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i].get(c):
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = {j: x * inv for j, x in m[r].items()}
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i].get(c)
                if f:
                    row = m[i]
                    for j, x in prow.items():
                        y = row.get(j, ZERO) - f * x
                        if y:
                            row[j] = y
                        else:
                            row.pop(j, None)
        pivots.append(c)
        r += 1
    dense = [[row.get(j, ZERO) for j in range(ncols)] for row in m[:r]]
    return dense, pivots


def rref(m: Matrix):
    """Reduced row echelon form: (nonzero rows as tuples, pivot columns)."""
    _guard(m.rows, m.cols)
    if m.cols > DENSE_COLUMN_LIMIT:
        red, piv = _rref_sparse(m.data, m.cols)
    else:
        red, piv = _rref_dense(m.data, m.cols)
    return [tuple(r) for r in red], piv


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list:
    """Basis of {v : m v = 0}, one vector per non-pivot column."""
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def span_rank(vectors, n=None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return rank(Matrix._raw(tuple(vec(v) for v in vectors), len(vectors), len(vectors[0])))


def row_basis(vectors, n: int) -> list:
    """Reduced basis of the span of ``vectors`` (vectors of length n)."""
    vectors = [vec(v) for v in vectors]
    if not vectors:
        return []
    red, _ = rref(Matrix._raw(tuple(vectors), len(vectors), n))
    return red


def quotient_dim(big, sub) -> int:
    """dim span(big) - dim span(sub); requires span(sub) inside span(big)."""
    big = [vec(v) for v in big]
    sub = [vec(v) for v in sub]
    rb = span_rank(big)
    if sub and span_rank(big + sub) != rb:
        raise SubspaceNotContained("span(sub) is not contained in span(big)")
    return rb - span_rank(sub)


def solve(m: Matrix, rhs):
    """A particular solution x of m x = rhs, or None. Free variables are set to 0."""
    rhs = vec(rhs)
    if len(rhs) != m.rows:
        raise DimensionMismatch("rhs length %d != %d rows" % (len(rhs), m.rows))
    aug = Matrix._raw(tuple(r + (b,) for r, b in zip(m.data, rhs)), m.rows, m.cols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, pc in zip(red, pivots):
        x[pc] = row[m.cols]
    return tuple(x)


def coordinates(basis, v):
    """Coefficients c with sum c_i basis_i = v, or None when v is outside the span."""
    v = vec(v)
    if not basis:
        return () if is_zero_vec(v) else None
    return solve(Matrix.from_columns(basis, rows=len(v)), v)


def in_span(basis, v) -> bool:
    return coordinates(basis, v) is not None


def independent(vectors) -> bool:
    vectors = list(vectors)
    return span_rank(vectors) == len(vectors)


def same_span(a, b) -> bool:
    a = list(a)
    b = list(b)
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb and span_rank(a + b) == ra


class Quotient:
    """The quotient span(big) / span(sub) with a chosen complement basis.

    The complement is picked greedily from ``big`` in order, so it is
    deterministic. ``project`` returns coordinates of the class of a vector.
    """

    def __init__(self, big, sub, n: int):
        big = [vec(v) for v in big]
        sub = row_basis(sub, n)
        if sub and span_rank(big + sub) != span_rank(big):
            raise SubspaceNotContained("span(sub) is not contained in span(big)")
        chosen = list(sub)
        comp = []
        r = len(chosen)
        for v in big:
            if span_rank(chosen + [v]) > r:
                chosen.append(v)
                comp.append(v)
                r += 1
        self.n = n
        self.sub = sub
        self.complement = comp
        self.dim = len(comp)
        self._frame = Matrix.from_columns(chosen, rows=n) if chosen else None

    def project(self, v) -> tuple:
        if self._frame is None:
            if not is_zero_vec(v):
                raise SubspaceNotContained("vector outside span(big)")
            return ()
        c = solve(self._frame, v)
        if c is None:
            raise SubspaceNotContained("vector outside span(big)")
        return c[len(self.sub):]

    def lift(self, coords) -> tuple:
        return vsum((vscale(c, b) for c, b in zip(coords, self.complement)), self.n)


def linear_map_from_images(sources, targets, n_in: int, n_out: int) -> Matrix:
    """The unique matrix sending each source vector to its target.

    ``sources`` must span the domain; raises ValueError if the prescribed
    values are inconsistent (the map would not be well defined).
    """
    sources = [vec(s) for s in sources]
    targets = [vec(t) for t in targets]
    idx = []
    r = 0
    for k, s in enumerate(sources):
        if span_rank([sources[i] for i in idx] + [s]) > r:
            idx.append(k)
            r += 1
    if r != n_in:
        raise ValueError("sources span a %d-dimensional subspace of a %d-dimensional domain" % (r, n_in))
    S = Matrix.from_columns([sources[i] for i in idx], rows=n_in)
    T = Matrix.from_columns([targets[i] for i in idx], rows=n_out) if n_out else Matrix.zeros(0, n_in)
    m = T @ S.inverse() if n_out else Matrix.zeros(0, n_in)
    for s, t in zip(sources, targets):
        if m.apply(s) != t:
            raise ValueError("prescribed images are not consistent with linearity")
    return m


# --------------------------------------------------------------------------
# 3-index tensors

class Tensor3:
    """Sparse structure constants of a bilinear map V1 x V2 -> V3."""

    __slots__ = ("dims", "entries", "_by_ij")

    def __init__(self, dims, entries=()):
        dims = tuple(int(d) for d in dims)
        if len(dims) != 3 or any(d < 0 for d in dims):
            raise DimensionMismatch("bad tensor dims %r" % (dims,))
        table = {}
        if isinstance(entries, dict):
            entries = [(i, j, k, c) for (i, j, k), c in entries.items()]
        for i, j, k, c in entries:
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise DimensionMismatch("index (%d,%d,%d) outside dims %r" % (i, j, k, dims))
            if (i, j, k) in table:
                raise DimensionMismatch("duplicate entry (%d,%d,%d)" % (i, j, k))
            c = Q(c)
            if c:
                table[i, j, k] = c
        self.dims = dims
        self.entries = table
        by = {}
        for (i, j, k), c in sorted(table.items()):
            by.setdefault((i, j), []).append((k, c))
        self._by_ij = by

    @classmethod
    def zero(cls, d1, d2, d3):
        return cls((d1, d2, d3))

    @classmethod
    def from_function(cls, dims, fn):
        """Build from fn(i, j) -> vector of length dims[2] on basis pairs."""
        entries = []
        for i in range(dims[0]):
            for j in range(dims[1]):
                v = fn(i, j)
                if len(v) != dims[2]:
                    raise DimensionMismatch("fn(%d,%d) has length %d, expected %d" % (i, j, len(v), dims[2]))
                for k, c in enumerate(v):
                    if c:
                        entries.append((i, j, k, c))
        return cls(dims, entries)

    @classmethod
    def from_slices(cls, matrices, d2, d3):
        """T[i, j, k] = matrices[i][k, j], i.e. T(e_i, -) is the matrix matrices[i]."""
        entries = []
        for i, m in enumerate(matrices):
            if m.shape != (d3, d2):
                raise DimensionMismatch("slice %d has shape %s, expected %s" % (i, m.shape, (d3, d2)))
            for k in range(d3):
                for j in range(d2):
                    if m[k, j]:
                        entries.append((i, j, k, m[k, j]))
        return cls((len(matrices), d2, d3), entries)

    def basis(self, i, j) -> tuple:
        out = [ZERO] * self.dims[2]
        for k, c in self._by_ij.get((i, j), ()):
            out[k] = c
        return tuple(out)

    def __call__(self, u, v) -> tuple:
        if len(u) != self.dims[0] or len(v) != self.dims[1]:
            raise DimensionMismatch("arguments of length (%d,%d) for dims %r" % (len(u), len(v), self.dims))
        out = [ZERO] * self.dims[2]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in nv:
                for k, c in self._by_ij.get((i, j), ()):
                    out[k] += a * b * c
        return tuple(out)

    def left(self, u) -> Matrix:
        """The matrix of v -> T(u, v)."""
        d2, d3 = self.dims[1], self.dims[2]
        cols = [self(u, unit_vec(d2, j)) for j in range(d2)]
        return Matrix.from_columns(cols, rows=d3) if d2 else Matrix.zeros(d3, 0)

    def slice(self, i) -> Matrix:
        return self.left(unit_vec(self.dims[0], i))

    def right(self, v) -> Matrix:
        """The matrix of u -> T(u, v)."""
        d1, d3 = self.dims[0], self.dims[2]
        cols = [self(unit_vec(d1, i), v) for i in range(d1)]
        return Matrix.from_columns(cols, rows=d3) if d1 else Matrix.zeros(d3, 0)

    def is_zero(self) -> bool:
        return not self.entries

    def transform(self, p1: Matrix, p2: Matrix, p3: Matrix) -> "Tensor3":
        """Pull back along p1, p2 and push forward along p3: p3(T(p1 u, p2 v))."""
        d1, d2 = p1.cols, p2.cols
        c1, c2 = p1.columns(), p2.columns()
        return Tensor3.from_function((d1, d2, p3.rows), lambda i, j: p3.apply(self(c1[i], c2[j])))

    def sorted_entries(self):
        return sorted(self.entries.items())

    def __eq__(self, other):
        return isinstance(other, Tensor3) and self.dims == other.dims and self.entries == other.entries

    def __hash__(self):
        return hash((self.dims, tuple(sorted(self.entries.items()))))

    def __add__(self, other):
        if self.dims != other.dims:
            raise DimensionMismatch("tensor dims %r != %r" % (self.dims, other.dims))
        out = dict(self.entries)
        for key, c in other.entries.items():
            out[key] = out.get(key, ZERO) + c
        return Tensor3(self.dims, out)

    def scale(self, c):
        c = Q(c)
        return Tensor3(self.dims, {key: c * x for key, x in self.entries.items()})

    def __repr__(self):
        return "Tensor3(%r, %d nonzero)" % (self.dims, len(self.entries))


def basis_pairs(n1, n2):
    return product(range(n1), range(n2))


def matrix_of_linear(fn, n_in: int, n_out: int) -> Matrix:
    """Matrix whose j-th column is fn(e_j); fn must be linear."""
    cols = [vec(fn(unit_vec(n_in, j))) for j in range(n_in)]
    for c in cols:
        if len(c) != n_out:
            raise DimensionMismatch("linear map output of length %d, expected %d" % (len(c), n_out))
    return Matrix.from_columns(cols, rows=n_out) if n_in else Matrix.zeros(n_out, 0)


def solution_space(fn, n_in: int, n_out: int) -> list:
    """Kernel basis of a linear residual fn: Q^n_in -> Q^n_out."""
    if n_in == 0:
        return []
    if n_out == 0:
        return [unit_vec(n_in, j) for j in range(n_in)]
    return kernel_basis(matrix_of_linear(fn, n_in, n_out))


def flatten(m: Matrix) -> tuple:
    return m.entries


def unflatten(v, rows: int, cols: int) -> Matrix:
    v = tuple(v)
    return Matrix._raw(tuple(v[r * cols:(r + 1) * cols] for r in range(rows)), rows, cols)
