"""
Command-line front end.

    homlr check FILE [--base FILE] [--module FILE]
    homlr cohomology BASE MODULE [--degree N]
    homlr extend BASE MODULE --cocycle FILE [--output FILE]
    homlr classify EXT [EXT2]
    homlr center BASE
    homlr gerstenhaber BASE [--top-degree N]
    homlr bv-check HOMLIE [--top-degree N]
    homlr kaehler ALGEBRA
    homlr lie-derivative ALGEBRA --derivation JSON [--omega JSON]

A JSON report goes to stdout and a one-line summary to stderr. Exit status:
0 when every check passes, 1 when a mathematical check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from homlr.cohomology import CONVENTIONS, DEFAULT_CONVENTION, check_module, complex_for
from homlr.differentials import (PoissonAlgebra, check_differentials, check_poisson,
                                 check_poisson_hom_lr, lie_derivative_matrix, prop_dimensions,
                                 universal_phi_derivation)
from homlr.errors import DimensionMismatch, HomLRError, NotACocycle, SchemaError, SpecError
from homlr.extensions import (center, check_extension, cocycle_from_extension,
                              extension_from_cocycle, extensions_cohomologous, semidirect_extension)
from homlr.gerstenhaber import bv_generator, check_bv_identity, check_hom_gerstenhaber, functor_F, functor_G
from homlr.homlie import check_hom_lie
from homlr.linalg import Matrix, fstr
from homlr.report import Report, bool_check
from homlr.rinehart import CommAlgebra, check_comm_algebra, check_hom_lr
from homlr.spec_io import (build, build_cochain, build_comm_algebra, build_extension, build_hom_lie,
                           build_hom_lr, build_module, load_spec, parse_rational, serialize, spec_of)


class InputError(Exception):
    pass


def _vec(v):
    return [fstr(c) for c in v]


def _mat(m: Matrix):
    return [_vec(r) for r in m.data]


def _load(path):
    try:
        return load_spec(path)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None


def _base(path):
    return build_hom_lr(_load(path))


# --------------------------------------------------------------------------
# commands; each returns (report, result dict)

def cmd_check(args):
    spec = _load(args.file)
    k = spec.kind
    result = {"kind": k}
    if k == "hom_lie":
        g = build_hom_lie(spec)
        return check_hom_lie(g.dim, g.bracket, g.alpha), result
    if k == "comm_algebra":
        return check_comm_algebra(build_comm_algebra(spec)), result
    if k == "hom_lr":
        return check_hom_lr(build_hom_lr(spec)), result
    if k == "extension":
        return check_extension(build_extension(spec)), result
    if k == "poisson":
        return check_poisson(build(spec)), result
    if args.base is None:
        raise SchemaError("checking a %s document needs --base" % k)
    L = _base(args.base)
    if k == "module":
        return check_module(build_module(spec, L)), result
    if args.module is None:
        raise SchemaError("checking a cochain document needs --module")
    M = build_module(_load(args.module), L)
    f = build_cochain(spec, L, M)
    cx = complex_for(L, M, args.sign_convention)
    rep = Report("cochain")
    rep.add(bool_check("in_cochain_space", cx.is_member(f.values, f.degree)))
    result["cocycle"] = cx.is_cocycle(f)
    return rep, result


def cmd_cohomology(args):
    L = _base(args.base)
    M = build_module(_load(args.module), L)
    cx = complex_for(L, M, args.sign_convention)
    rep = Report("cohomology")
    rep.extend(check_module(M), "module")
    degrees = [args.degree] if args.degree is not None else list(range(1, L.rank + 1))
    for n in degrees:
        if n < 1 or n > L.rank:
            raise SchemaError("degree %d outside 1..%d" % (n, L.rank))
    for n in range(1, L.rank - 1):
        dd = cx.coboundary_matrix(n + 1) @ cx.coboundary_matrix(n)
        rep.add(bool_check("delta_squared_zero.%d" % n, dd.is_zero(), witness=(n,)))
    result = {"convention": args.sign_convention,
              "cochain_dims": {str(n): cx.dim(n) for n in degrees},
              "dims": None}
    # without delta^2 = 0 the quotient ker/im is meaningless
    if rep.passed:
        result["dims"] = {str(n): cx.cohomology_dim(n) for n in degrees}
    return rep, result


def cmd_extend(args):
    L = _base(args.base)
    M = build_module(_load(args.module), L)
    f = build_cochain(_load(args.cocycle), L, M)
    rep = Report("extension")
    try:
        ext = extension_from_cocycle(L, M, f, convention=args.sign_convention)
    except NotACocycle as exc:
        rep.add(bool_check("cocycle", False, detail=str(exc)))
        return rep, {}
    rep.add(bool_check("cocycle", True))
    rep.extend(check_extension(ext))
    doc = serialize(spec_of(ext))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return rep, {"extension": json.loads(doc)}


def cmd_classify(args):
    e1 = build_extension(_load(args.ext))
    e2 = build_extension(_load(args.ext2)) if args.ext2 else semidirect_extension(e1.base, e1.module)
    if e2.base != e1.base or e2.module != e1.module:
        raise SchemaError("the two extensions have different base or module")
    rep = Report("classification")
    rep.extend(check_extension(e1), "first")
    rep.extend(check_extension(e2), "second")
    if not rep.passed:
        return rep, {}
    f1, f2 = cocycle_from_extension(e1), cocycle_from_extension(e2)
    same, g = extensions_cohomologous(f1, f2, args.sign_convention)
    result = {"cohomologous": same, "class": "cohomologous" if same else "not cohomologous",
              "against": "second" if args.ext2 else "semidirect"}
    if same:
        result["primitive"] = _vec(g.values)
    return rep, result


def cmd_center(args):
    L = _base(args.base)
    rep = Report("center")
    rep.extend(check_hom_lr(L), "base")
    Z = center(L)
    return rep, {"dim": len(Z), "basis": [_vec(v) for v in Z]}


def cmd_gerstenhaber(args):
    L = _base(args.base)
    G = functor_G(L, args.top_degree, args.sign_convention)
    rep = check_hom_gerstenhaber(G)
    back = functor_F(G, verify=False)
    rep.add(bool_check("F_of_G_is_L", back == L))
    return rep, {"top_degree": G.top, "dims": list(G.dims)}


def cmd_bv(args):
    g = build_hom_lie(_load(args.file))
    op = bv_generator(g, args.top_degree)
    rep = check_bv_identity(op)
    return rep, {"top_degree": op.carrier.top, "dims": list(op.carrier.dims)}


def cmd_kaehler(args):
    spec = _load(args.file)
    obj = build(spec)
    if isinstance(obj, PoissonAlgebra):
        A = obj.base
    elif isinstance(obj, CommAlgebra):
        A = obj
    else:
        raise SchemaError("kaehler needs a comm_algebra or poisson document")
    D = universal_phi_derivation(A)
    rep = Report("phi-differentials")
    rep.extend(check_differentials(D))
    h, dd = prop_dimensions(D, A.mult)
    rep.add(bool_check("hom_equals_derivations", h == dd, detail="Hom_A = %d, Der_phi = %d" % (h, dd)))
    if isinstance(obj, PoissonAlgebra):
        rep.extend(check_poisson_hom_lr(obj), "poisson")
    result = {"ideal_dim": len(D.ideal), "ideal_square_dim": len(D.ideal_square),
              "dim": D.space_dim, "d": _mat(D.d_map), "alpha_tilde": _mat(D.alpha_tilde)}
    return rep, result


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("%s is not valid JSON: %s" % (what, exc.msg)) from None


def cmd_lie_derivative(args):
    spec = _load(args.file)
    obj = build(spec)
    A = obj.base if isinstance(obj, PoissonAlgebra) else obj
    if not isinstance(A, CommAlgebra):
        raise SchemaError("lie-derivative needs a comm_algebra or poisson document")
    rows = _json_arg(args.derivation, "--derivation")
    if not isinstance(rows, list) or len(rows) != A.dim or any(not isinstance(r, list) or len(r) != A.dim for r in rows):
        raise SchemaError("--derivation must be a %d x %d matrix" % (A.dim, A.dim))
    X = Matrix([[parse_rational(c, "--derivation") for c in r] for r in rows], A.dim)
    D = universal_phi_derivation(A)
    rep = Report("Lie derivative")
    LX = lie_derivative_matrix(D, X)
    rep.add(bool_check("well_defined", True))
    result = {"matrix": _mat(LX)}
    if args.omega is not None:
        om = _json_arg(args.omega, "--omega")
        if not isinstance(om, list) or len(om) != D.space_dim:
            raise SchemaError("--omega must be a vector of length %d" % D.space_dim)
        result["value"] = _vec(LX.apply([parse_rational(c, "--omega") for c in om]))
    return rep, result


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homlr", description="hom-Lie-Rinehart algebra toolkit")
    p.add_argument("--sign-convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION,
                   help="coboundary and exterior bracket signs (default: %(default)s)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="verify the axioms of a document")
    s.add_argument("file")
    s.add_argument("--base")
    s.add_argument("--module")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("cohomology", help="dimensions of H^n(L; M)")
    s.add_argument("base")
    s.add_argument("module")
    s.add_argument("--degree", type=int)
    s.set_defaults(fn=cmd_cohomology)

    s = sub.add_parser("extend", help="abelian extension from a 2-cocycle")
    s.add_argument("base")
    s.add_argument("module")
    s.add_argument("--cocycle", required=True)
    s.add_argument("--output")
    s.set_defaults(fn=cmd_extend)

    s = sub.add_parser("classify", help="compare extension classes (default: against the semidirect product)")
    s.add_argument("ext")
    s.add_argument("ext2", nargs="?")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("center", help="center of a hom-Lie-Rinehart algebra")
    s.add_argument("base")
    s.set_defaults(fn=cmd_center)

    s = sub.add_parser("gerstenhaber", help="exterior hom-Gerstenhaber algebra and its axioms")
    s.add_argument("base")
    s.add_argument("--top-degree", type=int)
    s.set_defaults(fn=cmd_gerstenhaber)

    s = sub.add_parser("bv-check", help="BV generator of a hom-Lie algebra")
    s.add_argument("file")
    s.add_argument("--top-degree", type=int)
    s.set_defaults(fn=cmd_bv)

    s = sub.add_parser("kaehler", help="module of phi-differentials")
    s.add_argument("file")
    s.set_defaults(fn=cmd_kaehler)

    s = sub.add_parser("lie-derivative", help="Lie derivative along a phi-derivation")
    s.add_argument("file")
    s.add_argument("--derivation", required=True, help="JSON matrix of the phi-derivation")
    s.add_argument("--omega", help="JSON vector in the module of phi-differentials")
    s.set_defaults(fn=cmd_lie_derivative)
    return p


def run_command(argv) -> tuple:
    """(exit status, output document, summary line)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, result = args.fn(args)
    except (SpecError, InputError, DimensionMismatch) as exc:
        out = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}}
        return 2, out, "input error: %s" % exc
    except HomLRError as exc:
        out = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}}
        return 1, out, "%s: %s" % (type(exc).__name__, exc)
    out = {"command": args.command, "report": rep.to_dict(), "result": result}
    summary = rep.summary()
    if "class" in result:
        summary += "; %s" % result["class"]
    return (0 if rep.passed else 1), out, summary


def main(argv=None) -> int:
    try:
        status, out, summary = run_command(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code else 0
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    sys.stderr.write(summary + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
