"""Saturated k-Sperner systems: exact structure checks, constructions,
composition and reduction, bounded minimum search, and the numeric
lower/upper bound machinery."""

from .bounds import (
    EPS_MNS,
    EPS_NEW,
    BoundReport,
    ThresholdScan,
    bound_table,
    bracket_factor,
    erf_fn,
    erfc_fn,
    erf_lower_bound_log2,
    find_threshold,
    layer_lower_bound,
    sum_lower_bound,
    upper_bound_report,
)
from .constructions import (
    CompositionPlan,
    ReductionTrace,
    TraceStep,
    bootstrapped,
    compose,
    reduce_antichain,
    seven56,
    three_sperner,
    trivial_construction,
)
from .family import (
    MAX_ATOMS,
    Family,
    FamilyFormatError,
    LayerDecomposition,
    Member,
    atoms_of_mask,
    canonical_decomposition,
    complement_family,
    complement_member,
    is_antichain,
    is_layered,
    longest_chain_length,
    mask_of_atoms,
    member_depths,
    parse_family,
    serialize_family,
)
from .saturation import (
    LAYER_NOT_SATURATED,
    ORACLE_MAX_GROUND,
    SCAN_MAX_ATOMS,
    WRONG_LAYER_COUNT,
    AtomPartition,
    ConcreteFamily,
    LayerReport,
    Reason,
    SizeDiagnostics,
    VerificationReport,
    brute_force_saturated,
    eps_of,
    expected_hits,
    find_atoms,
    instantiate,
    is_saturated_antichain,
    parse_concrete,
    size_bounds_check,
    verify_saturated_k_sperner,
)
from .search import (
    BUDGET_EXHAUSTED,
    CANONICAL_MAX_ATOMS,
    FOUND,
    NONE_WITHIN_BOUNDS,
    Certificate,
    SearchBounds,
    SearchResult,
    canonical_form,
    search_min,
)

__all__ = [
    "AtomPartition",
    "BUDGET_EXHAUSTED",
    "BoundReport",
    "CANONICAL_MAX_ATOMS",
    "Certificate",
    "CompositionPlan",
    "ConcreteFamily",
    "EPS_MNS",
    "EPS_NEW",
    "FOUND",
    "Family",
    "FamilyFormatError",
    "LAYER_NOT_SATURATED",
    "LayerDecomposition",
    "LayerReport",
    "MAX_ATOMS",
    "Member",
    "NONE_WITHIN_BOUNDS",
    "ORACLE_MAX_GROUND",
    "Reason",
    "ReductionTrace",
    "SCAN_MAX_ATOMS",
    "SearchBounds",
    "SearchResult",
    "SizeDiagnostics",
    "ThresholdScan",
    "TraceStep",
    "VerificationReport",
    "WRONG_LAYER_COUNT",
    "atoms_of_mask",
    "bootstrapped",
    "bound_table",
    "bracket_factor",
    "brute_force_saturated",
    "canonical_decomposition",
    "canonical_form",
    "complement_family",
    "complement_member",
    "compose",
    "eps_of",
    "erf_fn",
    "erfc_fn",
    "erf_lower_bound_log2",
    "expected_hits",
    "find_atoms",
    "find_threshold",
    "instantiate",
    "is_antichain",
    "is_layered",
    "is_saturated_antichain",
    "layer_lower_bound",
    "longest_chain_length",
    "mask_of_atoms",
    "member_depths",
    "parse_concrete",
    "parse_family",
    "reduce_antichain",
    "search_min",
    "serialize_family",
    "seven56",
    "size_bounds_check",
    "sum_lower_bound",
    "three_sperner",
    "trivial_construction",
    "upper_bound_report",
    "verify_saturated_k_sperner",
]
