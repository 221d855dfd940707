"""Exact combinatorics of non-trivial d-wise intersecting set families.

The package builds the extremal reference families, measures sunflower
core degrees, runs exact symmetry-reduced maximum searches, and verifies
the structural facts relating them, all at desk scale with reproducible
output.
"""

from .checks import (
    CheckReport,
    FamilyInputError,
    conjecture_probe,
    run_lemma_suite,
    structure_bound_check,
    verify_small_cases,
)
from .constructions import (
    KINDS,
    SizeComparison,
    closed_size,
    compare_extremal_sizes,
    generate,
    threshold_n0,
)
from .families import (
    Family,
    Params,
    all_ksets,
    common_intersection,
    element_degrees,
    is_d_wise_intersecting,
    is_non_trivial,
    link,
    mask_elements,
    min_degree,
    min_m_wise_intersection,
    set_mask,
    trace_classes,
)
from .fileio import (
    FamilyParseError,
    format_family_json,
    format_family_text,
    parse_family_json,
    parse_family_text,
)
from .patterns import (
    HomogeneityReport,
    HomogenizeResult,
    Partition,
    PatternLevelReport,
    check_homogeneous,
    greedy_homogenize,
    intersection_pattern,
    is_intersection_closed,
    pattern,
    pattern_level_check,
    rank,
)
from .search import (
    CanonicalForm,
    IsoClass,
    SearchReport,
    are_isomorphic,
    canonical_form,
    saturate,
    search_max,
)
from .sunflowers import (
    DeltaSystem,
    DsetClassification,
    SdSet,
    classify_intersecting_dsets,
    core_degree,
    core_degree_witness,
    large_core_sets,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "CheckReport",
    "DeltaSystem",
    "DsetClassification",
    "Family",
    "FamilyInputError",
    "FamilyParseError",
    "HomogeneityReport",
    "HomogenizeResult",
    "IsoClass",
    "KINDS",
    "Params",
    "Partition",
    "PatternLevelReport",
    "SdSet",
    "SearchReport",
    "SizeComparison",
    "all_ksets",
    "are_isomorphic",
    "canonical_form",
    "check_homogeneous",
    "classify_intersecting_dsets",
    "closed_size",
    "common_intersection",
    "compare_extremal_sizes",
    "conjecture_probe",
    "core_degree",
    "core_degree_witness",
    "element_degrees",
    "format_family_json",
    "format_family_text",
    "generate",
    "greedy_homogenize",
    "intersection_pattern",
    "is_d_wise_intersecting",
    "is_intersection_closed",
    "is_non_trivial",
    "large_core_sets",
    "link",
    "mask_elements",
    "min_degree",
    "min_m_wise_intersection",
    "parse_family_json",
    "parse_family_text",
    "pattern",
    "pattern_level_check",
    "rank",
    "run_lemma_suite",
    "saturate",
    "search_max",
    "set_mask",
    "structure_bound_check",
    "threshold_n0",
    "trace_classes",
    "verify_small_cases",
]
