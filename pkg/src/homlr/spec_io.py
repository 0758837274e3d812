"""
JSON documents for algebras, modules, cochains, extensions and Poisson data.

Rationals are strings "p/q" (plain integers are accepted too); matrices are
lists of rows; a structure tensor is a list of [i, j, k, "c"] entries, each
meaning T(e_i, e_j) has coefficient c on e_k. A cochain lists entries
[[i_1, ..., i_n], k, "c"] meaning f(e_i_1, ..., e_i_n) has coefficient c on m_k.

Every document carries "kind". Nested objects (the algebra inside a hom_lr,
the base inside an extension) use the same schema, with "kind" optional.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from homlr.cohomology import (HLRModule, Cochain, adjoint_module, algebra_module,
                              cochain_from_function, trivial_module)
from homlr.errors import DimensionError, DimensionMismatch, ParseError, SchemaError
from homlr.extensions import ExtensionData
from homlr.exterior import subsets
from homlr.homlie import HomLieAlgebra
from homlr.linalg import Matrix, Tensor3, fstr
from homlr.differentials import PoissonAlgebra
from homlr.rinehart import CommAlgebra, HomLieRinehart, lr_from_hom_lie

KINDS = ("hom_lie", "comm_algebra", "hom_lr", "module", "cochain", "extension", "poisson")
MODULE_PRESETS = ("trivial", "adjoint", "algebra")

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class AlgebraSpec:
    """A parsed document: its kind and a normalized payload (Fractions, tuples)."""

    kind: str
    data: tuple  # sorted (key, value) pairs

    def get(self, key, default=None):
        for k, v in self.data:
            if k == key:
                return v
        return default

    def __contains__(self, key):
        return any(k == key for k, _ in self.data)


# --------------------------------------------------------------------------
# field readers

def _scalar(x, where):
    if isinstance(x, bool):
        raise SchemaError("%s: expected a rational, got a boolean" % where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise SchemaError("%s: floats are not allowed, write rationals as strings \"p/q\"" % where)
    if not isinstance(x, str):
        raise SchemaError("%s: expected a rational string, got %s" % (where, type(x).__name__))
    m = _RATIONAL.match(x)
    if not m:
        raise SchemaError("%s: %r is not a rational of the form p/q" % (where, x))
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise SchemaError("%s: zero denominator in %r" % (where, x))
    return Fraction(num, den)


def parse_rational(x, where="value") -> Fraction:
    """A rational from a JSON string "p/q" or an integer; floats are rejected."""
    return _scalar(x, where)


def _count(x, where, positive=False):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise SchemaError("%s: expected a non-negative integer" % where)
    if positive and x == 0:
        raise SchemaError("%s: expected a positive integer" % where)
    return x


def _vector(x, n, where):
    if not isinstance(x, list):
        raise SchemaError("%s: expected a list" % where)
    if n is not None and len(x) != n:
        raise DimensionError("%s: expected length %d, got %d" % (where, n, len(x)))
    return tuple(_scalar(c, "%s[%d]" % (where, i)) for i, c in enumerate(x))


def _matrix(x, rows, cols, where):
    if not isinstance(x, list):
        raise SchemaError("%s: expected a list of rows" % where)
    if len(x) != rows:
        raise DimensionError("%s: expected %d rows, got %d" % (where, rows, len(x)))
    return tuple(_vector(r, cols, "%s[%d]" % (where, i)) for i, r in enumerate(x))


def _tensor(x, dims, where):
    if not isinstance(x, list):
        raise SchemaError("%s: expected a list of [i, j, k, c] entries" % where)
    out = {}
    for t, ent in enumerate(x):
        w = "%s[%d]" % (where, t)
        if not isinstance(ent, list) or len(ent) != 4:
            raise SchemaError("%s: expected [i, j, k, c]" % w)
        idx = tuple(_count(ent[s], "%s[%d]" % (w, s)) for s in range(3))
        if dims is not None:
            for s in range(3):
                if dims[s] is not None and idx[s] >= dims[s]:
                    raise DimensionError("%s: index %d out of range for dimension %d" % (w, idx[s], dims[s]))
        if idx in out:
            raise SchemaError("%s: duplicate entry for %r" % (w, list(idx)))
        c = _scalar(ent[3], "%s[3]" % w)
        out[idx] = c
    return tuple(sorted((k, c) for k, c in out.items() if c))


def _require(doc, key, where):
    if key not in doc:
        raise SchemaError("%s: missing field %r" % (where, key))
    return doc[key]


def _check_keys(doc, allowed, where):
    extra = sorted(set(doc) - set(allowed) - {"kind", "name", "comment"})
    if extra:
        raise SchemaError("%s: unknown field(s) %s" % (where, ", ".join(map(repr, extra))))


# --------------------------------------------------------------------------
# per-kind normalization

def _norm_hom_lie(doc, where):
    _check_keys(doc, ("dim", "bracket", "alpha"), where)
    n = _count(_require(doc, "dim", where), where + ".dim")
    out = {"dim": n, "bracket": _tensor(_require(doc, "bracket", where), (n, n, n), where + ".bracket")}
    if "alpha" in doc:
        out["alpha"] = _matrix(doc["alpha"], n, n, where + ".alpha")
    return out


def _norm_comm_algebra(doc, where):
    _check_keys(doc, ("dim", "mult", "unit", "phi"), where)
    n = _count(_require(doc, "dim", where), where + ".dim", positive=True)
    out = {"dim": n,
           "mult": _tensor(_require(doc, "mult", where), (n, n, n), where + ".mult"),
           "unit": _vector(_require(doc, "unit", where), n, where + ".unit")}
    if "phi" in doc:
        out["phi"] = _matrix(doc["phi"], n, n, where + ".phi")
    return out


def _nested(doc, key, kind, where):
    sub = _require(doc, key, where)
    if not isinstance(sub, dict):
        raise SchemaError("%s.%s: expected an object" % (where, key))
    k = sub.get("kind", kind)
    if k != kind and not (kind == "hom_lr" and k == "hom_lie"):
        raise SchemaError("%s.%s: expected kind %r, got %r" % (where, key, kind, k))
    return _normalize(sub, k, "%s.%s" % (where, key))


def _norm_hom_lr(doc, where):
    _check_keys(doc, ("algebra", "rank", "action", "bracket", "alpha", "anchor", "a_basis"), where)
    alg = _nested(doc, "algebra", "comm_algebra", where)
    dA = alg.get("dim")
    r = _count(_require(doc, "rank", where), where + ".rank")
    out = {"algebra": alg, "rank": r,
           "action": _tensor(_require(doc, "action", where), (dA, r, r), where + ".action"),
           "bracket": _tensor(_require(doc, "bracket", where), (r, r, r), where + ".bracket"),
           "alpha": _matrix(_require(doc, "alpha", where), r, r, where + ".alpha"),
           "anchor": _tensor(_require(doc, "anchor", where), (r, dA, dA), where + ".anchor")}
    if "a_basis" in doc:
        if not isinstance(doc["a_basis"], list):
            raise SchemaError("%s.a_basis: expected a list of vectors" % where)
        out["a_basis"] = tuple(_vector(v, r, "%s.a_basis[%d]" % (where, i)) for i, v in enumerate(doc["a_basis"]))
    return out


def _norm_module(doc, where):
    if "preset" in doc:
        _check_keys(doc, ("preset", "dim", "beta"), where)
        p = doc["preset"]
        if p not in MODULE_PRESETS:
            raise SchemaError("%s.preset: unknown preset %r (expected one of %s)" % (where, p, ", ".join(MODULE_PRESETS)))
        out = {"preset": p}
        if p == "trivial":
            m = _count(doc.get("dim", 1), where + ".dim")
            out["dim"] = m
            if "beta" in doc:
                out["beta"] = _matrix(doc["beta"], m, m, where + ".beta")
        elif "dim" in doc or "beta" in doc:
            raise SchemaError("%s: preset %r takes no dim or beta" % (where, p))
        return out
    _check_keys(doc, ("dim", "a_action", "theta", "beta"), where)
    m = _count(_require(doc, "dim", where), where + ".dim")
    return {"dim": m,
            "a_action": _tensor(_require(doc, "a_action", where), (None, m, m), where + ".a_action"),
            "theta": _tensor(_require(doc, "theta", where), (None, m, m), where + ".theta"),
            "beta": _matrix(_require(doc, "beta", where), m, m, where + ".beta")}


def _norm_cochain(doc, where):
    _check_keys(doc, ("degree", "entries"), where)
    n = _count(_require(doc, "degree", where), where + ".degree", positive=True)
    ents = _require(doc, "entries", where)
    if not isinstance(ents, list):
        raise SchemaError("%s.entries: expected a list" % where)
    out = {}
    for t, e in enumerate(ents):
        w = "%s.entries[%d]" % (where, t)
        if not isinstance(e, list) or len(e) != 3 or not isinstance(e[0], list):
            raise SchemaError("%s: expected [[i_1, ..., i_n], k, c]" % w)
        args = tuple(_count(i, w) for i in e[0])
        if len(args) != n:
            raise DimensionError("%s: expected %d arguments, got %d" % (w, n, len(args)))
        if list(args) != sorted(set(args)):
            raise SchemaError("%s: arguments must be strictly increasing" % w)
        key = (args, _count(e[1], w))
        if key in out:
            raise SchemaError("%s: duplicate entry" % w)
        out[key] = _scalar(e[2], w)
    return {"degree": n, "entries": tuple(sorted((k, c) for k, c in out.items() if c))}


def _norm_extension(doc, where):
    _check_keys(doc, ("base", "module", "total", "inj", "proj", "section"), where)
    base = _nested(doc, "base", "hom_lr", where)
    module = _nested(doc, "module", "module", where)
    total = _nested(doc, "total", "hom_lr", where)
    n = base.get("rank") if base.kind == "hom_lr" else base.get("dim")
    N = total.get("rank") if total.kind == "hom_lr" else total.get("dim")
    m = _module_dim(module, n)
    out = {"base": base, "module": module, "total": total,
           "inj": _matrix(_require(doc, "inj", where), N, m, where + ".inj") if m is not None
           else _raw_matrix(_require(doc, "inj", where), where + ".inj"),
           "proj": _matrix(_require(doc, "proj", where), n, N, where + ".proj")}
    if "section" in doc and doc["section"] is not None:
        out["section"] = _matrix(doc["section"], N, n, where + ".section")
    return out


def _raw_matrix(x, where):
    if not isinstance(x, list) or not x:
        raise SchemaError("%s: expected a non-empty list of rows" % where)
    return _matrix(x, len(x), len(x[0]) if isinstance(x[0], list) else 0, where)


def _module_dim(module: AlgebraSpec, base_rank):
    p = module.get("preset")
    if p is None or p == "trivial":
        return module.get("dim", 1)
    if p == "adjoint":
        return base_rank
    return None


def _norm_poisson(doc, where):
    _check_keys(doc, ("algebra", "pbracket"), where)
    alg = _nested(doc, "algebra", "comm_algebra", where)
    n = alg.get("dim")
    return {"algebra": alg, "pbracket": _tensor(_require(doc, "pbracket", where), (n, n, n), where + ".pbracket")}


_NORMALIZERS = {
    "hom_lie": _norm_hom_lie, "comm_algebra": _norm_comm_algebra, "hom_lr": _norm_hom_lr,
    "module": _norm_module, "cochain": _norm_cochain, "extension": _norm_extension,
    "poisson": _norm_poisson,
}


def _normalize(doc, kind, where) -> AlgebraSpec:
    if kind not in _NORMALIZERS:
        raise SchemaError("%s: unknown kind %r (expected one of %s)" % (where, kind, ", ".join(KINDS)))
    data = _NORMALIZERS[kind](doc, where)
    return AlgebraSpec(kind, tuple(sorted(data.items())))


def parse_spec(document: str) -> AlgebraSpec:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SchemaError("$: expected a JSON object")
    kind = _require(doc, "kind", "$")
    if not isinstance(kind, str):
        raise SchemaError("$.kind: expected a string")
    return _normalize(doc, kind, "$")


def load_spec(path) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


# --------------------------------------------------------------------------
# serialization

def _ser_tensor(ents):
    return [[i, j, k, fstr(c)] for (i, j, k), c in ents]


def _ser_matrix(rows):
    return [[fstr(c) for c in r] for r in rows]


def _ser_vector(v):
    return [fstr(c) for c in v]


def to_document(spec: AlgebraSpec, nested=False) -> dict:
    out = {} if nested and spec.kind in ("comm_algebra",) else {"kind": spec.kind}
    for key, val in spec.data:
        if isinstance(val, AlgebraSpec):
            out[key] = to_document(val, nested=True)
        elif key in ("bracket", "mult", "action", "anchor", "a_action", "theta", "pbracket"):
            out[key] = _ser_tensor(val)
        elif key in ("alpha", "phi", "beta", "inj", "proj", "section"):
            out[key] = _ser_matrix(val)
        elif key == "unit":
            out[key] = _ser_vector(val)
        elif key == "a_basis":
            out[key] = [_ser_vector(v) for v in val]
        elif key == "entries":
            out[key] = [[list(args), k, fstr(c)] for (args, k), c in val]
        else:
            out[key] = val
    return out


def serialize(spec: AlgebraSpec) -> str:
    return json.dumps(to_document(spec), indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# building domain objects

def _T(ents, dims):
    return Tensor3(dims, [(i, j, k, c) for (i, j, k), c in ents])


def _M(rows, n_rows, n_cols):
    return Matrix(rows, n_cols) if n_rows else Matrix.zeros(0, n_cols)


def _guard(fn, *args):
    try:
        return fn(*args)
    except DimensionMismatch as exc:
        raise DimensionError(str(exc)) from None


def build_hom_lie(spec: AlgebraSpec) -> HomLieAlgebra:
    n = spec.get("dim")
    alpha = _M(spec.get("alpha"), n, n) if "alpha" in spec else Matrix.identity(n)
    return _guard(HomLieAlgebra, n, _T(spec.get("bracket"), (n, n, n)), alpha)


def build_comm_algebra(spec: AlgebraSpec) -> CommAlgebra:
    n = spec.get("dim")
    phi = _M(spec.get("phi"), n, n) if "phi" in spec else None
    return _guard(CommAlgebra, n, _T(spec.get("mult"), (n, n, n)), spec.get("unit"), phi)


def build_hom_lr(spec: AlgebraSpec) -> HomLieRinehart:
    """A hom_lie document is promoted to a hom-Lie-Rinehart algebra over Q."""
    if spec.kind == "hom_lie":
        return lr_from_hom_lie(build_hom_lie(spec))
    if spec.kind != "hom_lr":
        raise SchemaError("expected a hom_lr or hom_lie document, got %r" % spec.kind)
    A = build_comm_algebra(spec.get("algebra"))
    r, dA = spec.get("rank"), A.dim
    return _guard(HomLieRinehart, A, r, _T(spec.get("action"), (dA, r, r)), _T(spec.get("bracket"), (r, r, r)),
                  _M(spec.get("alpha"), r, r), _T(spec.get("anchor"), (r, dA, dA)), spec.get("a_basis"))


def build_module(spec: AlgebraSpec, base: HomLieRinehart) -> HLRModule:
    if spec.kind != "module":
        raise SchemaError("expected a module document, got %r" % spec.kind)
    p = spec.get("preset")
    if p == "trivial":
        m = spec.get("dim")
        beta = _M(spec.get("beta"), m, m) if "beta" in spec else None
        return _guard(trivial_module, base, m, beta)
    if p == "adjoint":
        return _guard(adjoint_module, base)
    if p == "algebra":
        return _guard(algebra_module, base)
    m, dA, r = spec.get("dim"), base.algebra.dim, base.rank
    for key, dims in (("a_action", (dA, m, m)), ("theta", (r, m, m))):
        for (idx, _) in spec.get(key):
            if any(i >= d for i, d in zip(idx, dims)):
                raise DimensionError("module %s entry %r out of range for dims %r" % (key, list(idx), dims))
    return _guard(HLRModule, base, m, _T(spec.get("a_action"), (dA, m, m)), _T(spec.get("theta"), (r, m, m)),
                  _M(spec.get("beta"), m, m))


def build_cochain(spec: AlgebraSpec, base: HomLieRinehart, module: HLRModule) -> Cochain:
    if spec.kind != "cochain":
        raise SchemaError("expected a cochain document, got %r" % spec.kind)
    n, r, m = spec.get("degree"), base.rank, module.dim
    if n > r:
        raise DimensionError("degree %d exceeds the dimension %d of the base" % (n, r))
    vals = {}
    for (args, k), c in spec.get("entries"):
        if args[-1] >= r or k >= m:
            raise DimensionError("cochain entry %r out of range" % ([list(args), k],))
        vals.setdefault(args, [Fraction(0)] * m)[k] = c
    return cochain_from_function(base, module, n, lambda I: tuple(vals.get(I, (0,) * m)))


def build_extension(spec: AlgebraSpec) -> ExtensionData:
    if spec.kind != "extension":
        raise SchemaError("expected an extension document, got %r" % spec.kind)
    base = build_hom_lr(spec.get("base"))
    module = build_module(spec.get("module"), base)
    total = build_hom_lr(spec.get("total"))
    N, n, m = total.rank, base.rank, module.dim
    inj = spec.get("inj")
    if len(inj) != N or any(len(r) != m for r in inj):
        raise DimensionError("inj must be %d x %d" % (N, m))
    sec = spec.get("section")
    return _guard(ExtensionData, total, _M(inj, N, m), _M(spec.get("proj"), n, N),
                  _M(sec, N, n) if sec is not None else None, base, module)


def build_poisson(spec: AlgebraSpec) -> PoissonAlgebra:
    A = build_comm_algebra(spec.get("algebra"))
    n = A.dim
    return PoissonAlgebra(A, _T(spec.get("pbracket"), (n, n, n)))


def build(spec: AlgebraSpec, base=None, module=None):
    """Construct the domain object of a document (modules and cochains need their base)."""
    k = spec.kind
    if k == "hom_lie":
        return build_hom_lie(spec)
    if k == "comm_algebra":
        return build_comm_algebra(spec)
    if k == "hom_lr":
        return build_hom_lr(spec)
    if k == "module":
        if base is None:
            raise SchemaError("a module document needs a base algebra")
        return build_module(spec, base)
    if k == "cochain":
        if base is None or module is None:
            raise SchemaError("a cochain document needs a base algebra and a module")
        return build_cochain(spec, base, module)
    if k == "extension":
        return build_extension(spec)
    return build_poisson(spec)


# --------------------------------------------------------------------------
# domain objects back to documents

def _tensor_ents(t: Tensor3):
    return tuple(((i, j, k), c) for (i, j, k), c in t.sorted_entries())


def _rows(m: Matrix):
    return tuple(tuple(r) for r in m.data)


def spec_of(obj) -> AlgebraSpec:
    if isinstance(obj, HomLieAlgebra):
        d = {"dim": obj.dim, "bracket": _tensor_ents(obj.bracket), "alpha": _rows(obj.alpha)}
        return AlgebraSpec("hom_lie", tuple(sorted(d.items())))
    if isinstance(obj, CommAlgebra):
        d = {"dim": obj.dim, "mult": _tensor_ents(obj.mult), "unit": tuple(obj.unit), "phi": _rows(obj.phi)}
        return AlgebraSpec("comm_algebra", tuple(sorted(d.items())))
    if isinstance(obj, HomLieRinehart):
        d = {"algebra": spec_of(obj.algebra), "rank": obj.rank, "action": _tensor_ents(obj.action),
             "bracket": _tensor_ents(obj.bracket), "alpha": _rows(obj.alpha), "anchor": _tensor_ents(obj.anchor)}
        if obj.a_basis is not None:
            d["a_basis"] = tuple(tuple(v) for v in obj.a_basis)
        return AlgebraSpec("hom_lr", tuple(sorted(d.items())))
    if isinstance(obj, HLRModule):
        d = {"dim": obj.dim, "a_action": _tensor_ents(obj.a_action), "theta": _tensor_ents(obj.theta),
             "beta": _rows(obj.beta)}
        return AlgebraSpec("module", tuple(sorted(d.items())))
    if isinstance(obj, Cochain):
        m = obj.module.dim
        ents = []
        for j, I in enumerate(subsets(obj.base.rank, obj.degree)):
            for k in range(m):
                c = obj.values[j * m + k]
                if c:
                    ents.append(((I, k), c))
        d = {"degree": obj.degree, "entries": tuple(ents)}
        return AlgebraSpec("cochain", tuple(sorted(d.items())))
    if isinstance(obj, ExtensionData):
        d = {"base": spec_of(obj.base), "module": spec_of(obj.module), "total": spec_of(obj.total),
             "inj": _rows(obj.inj), "proj": _rows(obj.proj)}
        if obj.section is not None:
            d["section"] = _rows(obj.section)
        return AlgebraSpec("extension", tuple(sorted(d.items())))
    if isinstance(obj, PoissonAlgebra):
        d = {"algebra": spec_of(obj.base), "pbracket": _tensor_ents(obj.pbracket)}
        return AlgebraSpec("poisson", tuple(sorted(d.items())))
    raise TypeError("no document form for %s" % type(obj).__name__)
