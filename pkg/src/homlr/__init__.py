"""Exact computations with hom-Lie and hom-Lie-Rinehart algebras over the rationals."""

from homlr.homlie import HomLieAlgebra, HomLieRep, check_hom_lie, check_representation
from homlr.rinehart import CommAlgebra, HomLieRinehart, check_comm_algebra, check_hom_lr, check_phi_derivation
from homlr.cohomology import HLRModule, Cochain, cochain_space, coboundary_matrix, cohomology_dim
from homlr.extensions import ExtensionData, extension_from_cocycle, cocycle_from_extension, center
from homlr.gerstenhaber import GradedAlgebra, functor_G, functor_F, check_hom_gerstenhaber, bv_generator
from homlr.differentials import PoissonAlgebra, PhiDifferentials, universal_phi_derivation, poisson_hom_lr
from homlr.report import Check, Report

__version__ = "0.1.0"
