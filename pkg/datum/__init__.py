"""
DimDatum - Core Library

Exact arithmetic for Weyl-averaged characters, the determinant polynomial
families, branching multiplicities, bundle spectra and affine root systems.
"""

from .affine import (
    AffineGroup,
    AffineRootSystem,
    AffineWeight,
    GeneralizedTorus,
    averaged_F,
    catalog,
    catalog_discrepancies,
    delta_and_A,
    f_polynomial,
    full_group_A,
    density_at,
    density_samples,
    fiber_product_error,
    liftings,
    parse_selector,
    restriction_is_zero,
    restriction_roundtrip,
    validate_affine,
    weyl_integration_check,
)
from .branch import (
    IrrepLabel,
    Spectrum,
    branch_multiplicity,
    bundle_spectrum,
    casimir_eigenvalue,
    decompose,
    enumerate_irreps,
    spectra_equal,
    tau_dimension_datum,
    weight_multiplicities,
    weyl_dimension,
)
from .cache import WeightCache
from .charalg import (
    CharacterElement,
    alternating_sum,
    averaged_character,
    char_equal,
    conjugate_tori_criterion,
    norm_polynomial,
    orbit_character,
    t_polynomial,
    t_polynomial_product,
    weyl_product,
)
from .exceptions import (
    AffineError,
    BranchingError,
    CacheError,
    ContainmentError,
    DatumError,
    DominanceError,
    RankMismatchError,
    RootSystemError,
    SchemeError,
)
from .groups import Embedding, GroupDesc, identity, maximal_torus, theorem_embeddings
from .lattice import (
    SignedPermutation,
    Weight,
    WeylSubgroup,
    dominant_representative,
    format_weight,
    orbit,
    parse_weight,
)
from .polyfam import (
    Polynomial,
    SymbolicMatrix,
    build_det_matrix,
    encode,
    family_poly,
    limit_product,
    sigma,
    sigma_sign,
    verify_det_equals_weylsum,
    verify_factorization,
    verify_irreducible_inductive,
)
from .rootsys import RootSystem, delta, standard_system, theorem_systems, validate, weyl_group

__all__ = [
    # Errors
    "DatumError",
    "RankMismatchError",
    "DominanceError",
    "RootSystemError",
    "ContainmentError",
    "SchemeError",
    "BranchingError",
    "AffineError",
    "CacheError",
    # Lattice
    "Weight",
    "SignedPermutation",
    "WeylSubgroup",
    "orbit",
    "dominant_representative",
    "parse_weight",
    "format_weight",
    # Root systems
    "RootSystem",
    "standard_system",
    "validate",
    "delta",
    "weyl_group",
    "theorem_systems",
    # Characters
    "CharacterElement",
    "alternating_sum",
    "averaged_character",
    "orbit_character",
    "weyl_product",
    "char_equal",
    "conjugate_tori_criterion",
    "norm_polynomial",
    "t_polynomial",
    "t_polynomial_product",
    # Polynomial families
    "Polynomial",
    "SymbolicMatrix",
    "encode",
    "sigma",
    "sigma_sign",
    "limit_product",
    "build_det_matrix",
    "family_poly",
    "verify_det_equals_weylsum",
    "verify_factorization",
    "verify_irreducible_inductive",
    # Groups and branching
    "GroupDesc",
    "Embedding",
    "theorem_embeddings",
    "maximal_torus",
    "identity",
    "IrrepLabel",
    "Spectrum",
    "weyl_dimension",
    "weight_multiplicities",
    "decompose",
    "branch_multiplicity",
    "tau_dimension_datum",
    "casimir_eigenvalue",
    "enumerate_irreps",
    "bundle_spectrum",
    "spectra_equal",
    # Cache
    "WeightCache",
    # Affine root systems
    "GeneralizedTorus",
    "AffineWeight",
    "AffineRootSystem",
    "AffineGroup",
    "validate_affine",
    "catalog",
    "parse_selector",
    "catalog_discrepancies",
    "liftings",
    "delta_and_A",
    "full_group_A",
    "f_polynomial",
    "averaged_F",
    "density_at",
    "density_samples",
    "fiber_product_error",
    "restriction_is_zero",
    "restriction_roundtrip",
    "weyl_integration_check",
]
