"""Exact computations for 3-Leibniz algebras, twisted Rota-Baxter operators and NS-3-Leibniz algebras."""

from ._backend import BACKEND
from .algebra import (
    LeibnizAlgebra,
    LeibnizRepresentation,
    LinearOperator,
    Representation,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    check_3leibniz,
    check_leibniz,
    check_leibniz_representation,
    check_representation,
    rep_from_leibniz_rep,
    semidirect_product,
    threeleibniz_from_leibniz,
)
from .cohomology import (
    G_TO_V,
    V_TO_G,
    Cochain,
    coboundary,
    coboundary_matrix,
    cohomology_dim,
    is_cocycle,
    twisted_semidirect,
)
from .deformation import (
    OrderNDeformation,
    check_order_n,
    extend,
    infinitesimal,
    infinitesimals_cohomologous,
    obstruction,
)
from .errors import L3KitError, PreconditionError, ShapeError
from .exactla import DenseTensor, Scalar, parse_scalar
from .linfty import GradedElement, graded_bracket, l3, l4, mc_residual, twisted_lk
from .manifest import Manifest, ManifestError, load_manifest
from .ns import (
    NSAlgebra,
    check_ns,
    check_weighted_rbo,
    compatible_ns_from_invertible_trbo,
    ns_canonical_package,
    ns_from_nijenhuis,
    ns_from_reynolds,
    ns_from_trbo,
    ns_from_weighted_rbo,
    subadjacent,
)
from .rbo_cohomology import InducedRep, cohomology_dim_T, delta_T, induced_rep, partial_T, wp
from .report import Report, Violation
from .twisted_rbo import (
    TwistedSetup,
    check_graph_subalgebra,
    check_nijenhuis,
    check_reynolds,
    check_trbo,
    gauge_transform,
    induced_bracket,
    nijenhuis_package,
    reynolds_setup,
    shift_trbo,
)

__version__ = "0.1.0"
