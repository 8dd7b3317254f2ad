"""Exact cohomology of diagrams of incidence algebras.

Hochschild cohomology of finite-dimensional algebras, the Gerstenhaber-Schack
double complex of an algebra presheaf with its spectral sequence, and the
Baues-Wirsching / Roos comparison pipelines.
"""

from .alg import FiniteAlgebra, AlgebraMorphism, Bimodule, incidence_algebra, restriction_morphism
from .errors import CohomLabError
from .exactla import Field, SparseMatrix, rank, kernel_basis, solve
from .fincat import FinPoset, FinCategory, poset_to_category, nerve
from .gs import AlgebraPresheaf, GSDoubleComplex, gs_cohomology, incidence_presheaf, ss_pages
from .hochschild import HochschildComplex, hh, tor, certify_hom_epi
from .bw import bw_cohomology, roos_cohomology, e2_vs_bw, selfduality_check
from .simp import SimplicialComplex, Filtration, face_poset, simplicial_cohomology

__version__ = "0.1.0"

__all__ = [
    "AlgebraMorphism", "AlgebraPresheaf", "Bimodule", "CohomLabError", "Field", "Filtration", "FinCategory",
    "FinPoset", "FiniteAlgebra", "GSDoubleComplex", "HochschildComplex", "SimplicialComplex", "SparseMatrix",
    "bw_cohomology", "certify_hom_epi", "e2_vs_bw", "face_poset", "gs_cohomology", "hh", "incidence_algebra",
    "incidence_presheaf", "kernel_basis", "nerve", "poset_to_category", "rank", "restriction_morphism",
    "roos_cohomology", "selfduality_check", "simplicial_cohomology", "solve", "ss_pages", "tor",
]
