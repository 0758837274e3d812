"""Regenerate corpus/: specification documents, the command manifest and the
expected-report fixtures. Poisson instances come from the constraint solver in
tests/oracles.py and are stored with their certificates.

    python3 scripts/make_corpus.py
"""

import json
import os
import sys
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "tests"))

from oracles import find_poisson_brackets  # noqa: E402

from homlr import catalog  # noqa: E402
from homlr.cli import run_command  # noqa: E402
from homlr.cohomology import adjoint_module, cochain_from_function, complex_for, trivial_module  # noqa: E402
from homlr.differentials import PoissonAlgebra  # noqa: E402
from homlr.homlie import abelian, compose_hom_lie, direct_sum  # noqa: E402
from homlr.linalg import Matrix, Tensor3, fstr  # noqa: E402
from homlr.rinehart import CommAlgebra  # noqa: E402
from homlr.spec_io import AlgebraSpec, serialize, spec_of  # noqa: E402

CORPUS = os.path.join(ROOT, "corpus")


def square_zero(k, phi_diag):
    """Q + m with m^2 = 0, dim m = k."""
    n = k + 1
    ents = [(0, 0, 0, 1)] + [(0, i, i, 1) for i in range(1, n)] + [(i, 0, i, 1) for i in range(1, n)]
    return CommAlgebra(n, Tensor3((n, n, n), ents), (1,) + (0,) * k, Matrix.diag(phi_diag))


def exterior_pair(phi_diag):
    """Q[x, y]/(x^2, y^2) on 1, x, y, xy."""
    mon = [(0, 0), (1, 0), (0, 1), (1, 1)]
    ents = []
    for i, a in enumerate(mon):
        for j, b in enumerate(mon):
            c = (a[0] + b[0], a[1] + b[1])
            if c in mon:
                ents.append((i, j, mon.index(c), 1))
    return CommAlgebra(4, Tensor3((4, 4, 4), ents), (1, 0, 0, 0), Matrix.diag(phi_diag))


def solver_instance(A, name):
    basis, found = find_poisson_brackets(A.dim, A.mult.sorted_entries(), A.phi.data)
    coeffs, flat = found[0]
    n = A.dim
    ents = [(i, j, k, flat[(i * n + j) * n + k]) for i in range(n) for j in range(n) for k in range(n)
            if flat[(i * n + j) * n + k]]
    P = PoissonAlgebra(A, Tensor3((n, n, n), ents))
    cert = {"algebra": name, "linear_solution_dim": len(basis),
            "linear_basis": [[fstr(x) for x in b] for b in basis],
            "chosen_coefficients": list(coeffs), "jacobi_verified": True,
            "search": "integer coefficients in [-1, 1], ordered by L1 norm"}
    return P, cert


def write(name, spec):
    with open(os.path.join(CORPUS, name), "w", encoding="utf-8") as fh:
        fh.write(serialize(spec))


def main():
    os.makedirs(os.path.join(CORPUS, "expected"), exist_ok=True)
    h3 = catalog.h3()
    docs = {
        "abelian2.json": spec_of(abelian(2)),
        "abelian3_twisted.json": spec_of(abelian(3, Matrix.diag([1, 2, 3]))),
        "sl2.json": spec_of(catalog.sl2()),
        "sl2_composed.json": spec_of(catalog.composed_sl2(3)),
        "heisenberg.json": spec_of(h3),
        "heisenberg_composed.json": spec_of(compose_hom_lie(h3, Matrix.diag([2, 1, 2]))),
        "r2.json": spec_of(catalog.r2()),
        "heisenberg_plus_line.json": spec_of(compose_hom_lie(direct_sum(h3, abelian(1)),
                                                             Matrix.diag([2, 3, 6, 5]))),
        "dual_numbers.json": spec_of(catalog.dual_numbers()),
        "dual_numbers_twisted.json": spec_of(catalog.dual_numbers(2)),
        "truncated3.json": spec_of(catalog.truncated_poly(3)),
        "split2.json": spec_of(catalog.split_algebra(2)),
        "der_dual_numbers.json": spec_of(catalog.der_dual_numbers(2)),
        "euler2.json": spec_of(catalog.euler_transformation(2, 2)),
        "euler3.json": spec_of(catalog.euler_transformation(3)),
        "poisson_zero.json": spec_of(PoissonAlgebra(catalog.dual_numbers(2), Tensor3.zero(2, 2, 2))),
    }
    certs = {}
    for name, A in (("poisson3", square_zero(2, [1, 2, 1])), ("poisson4", exterior_pair([1, 2, 1, 2]))):
        P, cert = solver_instance(A, name)
        docs[name + ".json"] = spec_of(P)
        certs[name] = cert
    docs["trivial_module.json"] = AlgebraSpec("module", (("dim", 1), ("preset", "trivial")))
    docs["adjoint_module.json"] = AlgebraSpec("module", (("preset", "adjoint"),))
    docs["algebra_module.json"] = AlgebraSpec("module", (("preset", "algebra"),))

    # a 2-cocycle on h3 with trivial coefficients that is not a coboundary: f(x, z) = 1
    L = catalog.lr_from_hom_lie(h3)
    M = trivial_module(L)
    f = cochain_from_function(L, M, 2, lambda I: (1,) if I == (0, 2) else (0,))
    cx = complex_for(L, M)
    assert cx.is_cocycle(f) and not cx.is_coboundary(f)[0]
    docs["heisenberg_cocycle.json"] = spec_of(f)
    g = cochain_from_function(L, M, 2, lambda I: (1,) if I == (0, 1) else (0,))
    assert cx.is_cocycle(g) and cx.is_coboundary(g)[0]
    docs["heisenberg_coboundary.json"] = spec_of(g)
    # on sl2 with adjoint coefficients most 2-cochains are not cocycles
    S = catalog.lr_from_hom_lie(catalog.sl2())
    ad = adjoint_module(S)
    sx = complex_for(S, ad)
    bad = next(cx_f for cx_f in (sx.cochain(v, 2) for v in sx.basis(2)) if not sx.is_cocycle(cx_f))
    docs["sl2_adjoint_noncocycle.json"] = spec_of(bad)

    for name, spec in sorted(docs.items()):
        write(name, spec)
    with open(os.path.join(CORPUS, "poisson_certificates.json"), "w", encoding="utf-8") as fh:
        json.dump(certs, fh, indent=2, sort_keys=True)
        fh.write("\n")

    def c(*args):
        return ["corpus/" + a if a.endswith(".json") else a for a in args]

    runs = [
        ("check_abelian2", c("check", "abelian2.json")),
        ("check_abelian3_twisted", c("check", "abelian3_twisted.json")),
        ("check_sl2", c("check", "sl2.json")),
        ("check_sl2_composed", c("check", "sl2_composed.json")),
        ("check_heisenberg", c("check", "heisenberg.json")),
        ("check_heisenberg_composed", c("check", "heisenberg_composed.json")),
        ("check_r2", c("check", "r2.json")),
        ("check_dual_numbers", c("check", "dual_numbers.json")),
        ("check_dual_numbers_twisted", c("check", "dual_numbers_twisted.json")),
        ("check_truncated3", c("check", "truncated3.json")),
        ("check_split2", c("check", "split2.json")),
        ("check_der_dual_numbers", c("check", "der_dual_numbers.json")),
        ("check_euler2", c("check", "euler2.json")),
        ("check_euler3", c("check", "euler3.json")),
        ("check_poisson3", c("check", "poisson3.json")),
        ("check_poisson4", c("check", "poisson4.json")),
        ("check_adjoint_module_sl2", c("check", "adjoint_module.json", "--base", "sl2.json")),
        ("check_cocycle", c("check", "heisenberg_cocycle.json", "--base", "heisenberg.json",
                            "--module", "trivial_module.json")),
        ("cohomology_sl2_trivial", c("cohomology", "sl2.json", "trivial_module.json")),
        ("cohomology_sl2_adjoint", c("cohomology", "sl2.json", "adjoint_module.json")),
        ("cohomology_sl2_composed_adjoint", c("cohomology", "sl2_composed.json", "adjoint_module.json")),
        ("cohomology_heisenberg_h2", c("cohomology", "--degree", "2", "heisenberg.json", "trivial_module.json")),
        ("cohomology_heisenberg_composed", c("cohomology", "heisenberg_composed.json", "trivial_module.json")),
        ("cohomology_sl2_printed", ["--sign-convention", "printed"] + c("cohomology", "sl2.json", "trivial_module.json")),
        ("cohomology_euler2_algebra", c("cohomology", "euler2.json", "algebra_module.json")),
        ("extend_heisenberg", c("extend", "heisenberg.json", "trivial_module.json", "--cocycle",
                                "heisenberg_cocycle.json", "--output", "heisenberg_extension.json")),
        ("extend_sl2_noncocycle", c("extend", "sl2.json", "adjoint_module.json", "--cocycle",
                                    "sl2_adjoint_noncocycle.json")),
        ("extend_heisenberg_coboundary", c("extend", "heisenberg.json", "trivial_module.json", "--cocycle",
                                           "heisenberg_coboundary.json", "--output",
                                           "heisenberg_extension_trivial.json")),
        ("classify_heisenberg", c("classify", "heisenberg_extension.json")),
        ("classify_heisenberg_trivial", c("classify", "heisenberg_extension_trivial.json")),
        ("classify_heisenberg_pair", c("classify", "heisenberg_extension.json", "heisenberg_extension_trivial.json")),
        ("center_heisenberg", c("center", "heisenberg.json")),
        ("center_sl2", c("center", "sl2.json")),
        ("center_euler2", c("center", "euler2.json")),
        ("gerstenhaber_sl2", c("gerstenhaber", "sl2.json")),
        ("gerstenhaber_sl2_composed", c("gerstenhaber", "sl2_composed.json")),
        ("gerstenhaber_sl2_printed", ["--sign-convention", "printed"] + c("gerstenhaber", "sl2.json")),
        ("gerstenhaber_heisenberg", c("gerstenhaber", "heisenberg.json")),
        ("gerstenhaber_heisenberg_plus_line", c("gerstenhaber", "heisenberg_plus_line.json")),
        ("check_heisenberg_plus_line", c("check", "heisenberg_plus_line.json")),
        ("gerstenhaber_euler2", c("gerstenhaber", "euler2.json")),
        ("gerstenhaber_euler3", c("gerstenhaber", "euler3.json")),
        ("gerstenhaber_der_dual_numbers", c("gerstenhaber", "der_dual_numbers.json")),
        ("bv_sl2", c("bv-check", "sl2.json")),
        ("bv_sl2_composed", c("bv-check", "sl2_composed.json")),
        ("bv_heisenberg", c("bv-check", "heisenberg.json")),
        ("kaehler_rationals_split", c("kaehler", "split2.json")),
        ("kaehler_dual_numbers", c("kaehler", "dual_numbers.json")),
        ("kaehler_dual_numbers_twisted", c("kaehler", "dual_numbers_twisted.json")),
        ("kaehler_truncated3", c("kaehler", "truncated3.json")),
        ("kaehler_poisson_zero", c("kaehler", "poisson_zero.json")),
        ("kaehler_poisson3", c("kaehler", "poisson3.json")),
        ("kaehler_poisson4", c("kaehler", "poisson4.json")),
        ("lie_derivative_dual_numbers", c("lie-derivative", "dual_numbers.json", "--derivation",
                                          '[["0", "0"], ["0", "1"]]', "--omega", '["1"]')),
    ]
    manifest = []
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        for name, argv in runs:
            status, out, summary = run_command(argv)
            text = json.dumps(out, indent=2, sort_keys=True) + "\n"
            with open(os.path.join(CORPUS, "expected", name + ".json"), "w", encoding="utf-8") as fh:
                fh.write(text)
            manifest.append({"name": name, "argv": argv, "status": status, "summary": summary})
            print("%-36s exit %d  %s" % (name, status, summary))
    finally:
        os.chdir(cwd)
    with open(os.path.join(CORPUS, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
