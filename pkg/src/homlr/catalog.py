"""Small named algebras used throughout the tests, the corpus and the CLI."""

from __future__ import annotations

from homlr.homlie import HomLieAlgebra, abelian, compose_hom_lie
from homlr.linalg import Matrix, Tensor3, Q
from homlr.rinehart import (CommAlgebra, HomLieRinehart, der_phi_hom_lr, lr_from_hom_lie,
                            rationals, transformation_hom_lr)

__all__ = [
    "rationals", "truncated_poly", "split_algebra", "sl2", "h3", "r2", "abelian",
    "composed_sl2", "sl2_automorphism", "dual_numbers", "der_dual_numbers",
    "euler_transformation", "lr_from_hom_lie",
]


def truncated_poly(n: int, scale=1) -> CommAlgebra:
    """Q[x]/(x^n) on the basis 1, x, ..., x^(n-1), with phi(x) = scale * x."""
    scale = Q(scale)
    ents = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    phi = Matrix.diag([scale ** k for k in range(n)])
    return CommAlgebra(n, Tensor3((n, n, n), ents), (1,) + (0,) * (n - 1), phi)


def dual_numbers(scale=1) -> CommAlgebra:
    return truncated_poly(2, scale)


def split_algebra(k: int, phi: Matrix | None = None) -> CommAlgebra:
    """Q x ... x Q (k factors) on orthogonal idempotents."""
    return CommAlgebra(k, Tensor3((k, k, k), [(i, i, i, 1) for i in range(k)]), (1,) * k, phi)


def sl2() -> HomLieAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    ents = [(0, 1, 1, 2), (1, 0, 1, -2), (0, 2, 2, -2), (2, 0, 2, 2), (1, 2, 0, 1), (2, 1, 0, -1)]
    return HomLieAlgebra(3, Tensor3((3, 3, 3), ents), Matrix.identity(3))


def h3() -> HomLieAlgebra:
    """Heisenberg algebra, basis (x, y, z) with [x, y] = z central."""
    return HomLieAlgebra(3, Tensor3((3, 3, 3), [(0, 1, 2, 1), (1, 0, 2, -1)]), Matrix.identity(3))


def r2() -> HomLieAlgebra:
    """The non-abelian two-dimensional Lie algebra, [a, b] = b."""
    return HomLieAlgebra(2, Tensor3((2, 2, 2), [(0, 1, 1, 1), (1, 0, 1, -1)]), Matrix.identity(2))


def sl2_automorphism(lam) -> Matrix:
    lam = Q(lam)
    return Matrix.diag([1, lam, 1 / lam])


def composed_sl2(lam=3) -> HomLieAlgebra:
    return compose_hom_lie(sl2(), sl2_automorphism(lam))


def der_dual_numbers(scale=1) -> HomLieRinehart:
    return der_phi_hom_lr(dual_numbers(scale))


def euler_transformation(n: int = 2, scale=1) -> HomLieRinehart:
    """One-dimensional g acting on Q[x]/(x^n) by x d/dx, twisted by phi(x) = scale * x.

    Free of rank one over A, so dimension n over Q.
    """
    A = truncated_poly(n, scale)
    g = abelian(1)
    rho = Tensor3((1, n, n), [(0, k, k, k * A.phi[k, k]) for k in range(1, n)])
    return transformation_hom_lr(g, A, rho)

