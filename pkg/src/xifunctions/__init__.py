"""Xi-functions: the six even-subgroup orbit function families of C2 and G2.

The package covers root data and Weyl groups, fundamental domains and
discrete grids, pointwise evaluation, continuous and discrete orthogonality,
the discrete transforms, and product decompositions.
"""

from .algebra import AlgebraKind, Basis, RootData, SurdValue, change_basis, root_data
from .domains import Family, domain_membership, fold_to_F, grid_points, weight_points
from .orbitfn import psi, xi, xi_array, xi_closed_form
from .products import SignedWeightSum, decompose, normalize, verify_decomposition
from .transform import (
    CoeffVector,
    SampleVector,
    continuous_inner,
    forward_discrete,
    gram_discrete,
    inverse_discrete,
)
from .weyl import SignHom, generate_group, kernel

__all__ = [
    "AlgebraKind",
    "Basis",
    "CoeffVector",
    "Family",
    "RootData",
    "SampleVector",
    "SignHom",
    "SignedWeightSum",
    "SurdValue",
    "change_basis",
    "continuous_inner",
    "decompose",
    "domain_membership",
    "fold_to_F",
    "forward_discrete",
    "generate_group",
    "grid_points",
    "gram_discrete",
    "inverse_discrete",
    "kernel",
    "normalize",
    "psi",
    "root_data",
    "verify_decomposition",
    "weight_points",
    "xi",
    "xi_array",
    "xi_closed_form",
]

__version__ = "0.1.0"
