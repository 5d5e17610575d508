"""Exact string spectra on flag quotients and equivariant toric indices."""

from .bwb import (
    CohomologyResult,
    ParabolicSubset,
    ext_dim_vector_bundles,
    line_bundle_cohomology,
    string_space_line_bundles,
    validate_q_character,
)
from .charseries import (
    ExpSum,
    GenericDirection,
    RatFunc,
    choose_generic_direction,
    localization_term,
    restrict_to_direction,
    sum_and_evaluate_at_one,
)
from .errors import DomainError, Error, GenericityError, InputError, PoleError
from .localize import (
    ChargeAtFixedPoints,
    LocalizationResult,
    charge_at_fixed_points,
    chern_character_at_fixed_points,
    koszul_charge,
    lattice_point_character,
    localization_index,
)
from .rootsys import (
    RootSystem,
    apply_weyl_word,
    build_root_system,
    count_negative_roots,
    inner_product,
    is_dominant,
    is_regular,
    make_dominant,
    reflect_simple,
    rho,
    weyl_dimension,
)
from .tensorrep import (
    TensorDecomposition,
    WeightMultiset,
    dual_irrep,
    irrep_dimension,
    tensor_decompose,
    weight_multiplicities,
)
from .toricfan import (
    EquivBundleAtFixedPoints,
    EquivLineBundle,
    Fan,
    FanDocument,
    FixedPoint,
    build_fan,
    bundle_from_divisor,
    divisor_is_nef,
    fixed_points,
    parse_fan,
    parse_fan_document,
)

__version__ = "0.1.0"
