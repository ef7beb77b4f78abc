"""Combinatorial calculus of periodic surface homeomorphisms via data sets."""

from .census import (
    CensusQuery,
    CensusRecord,
    census,
    degree_cap,
    enumerate_data_sets,
    enumerate_irreducible,
    enumerate_oracle,
    read_census,
    write_census,
)
from .core import (
    ActionClass,
    ConePair,
    DataSet,
    MarkedDataSet,
    ParseError,
    ValidationReport,
    canonicalize,
    canonicalize_marked,
    classify,
    data_set_from_json,
    data_set_to_json,
    format_data_set,
    genus,
    mod_inverse,
    parse_data_set,
    validate,
)
from .fillability import (
    ConditionReport,
    FillabilityVerdict,
    ProfilePair,
    build_profile,
    classify_assembly,
    classify_irreducible,
    classify_marked,
    classify_positive_word,
    search_profiles,
    verify_profile,
)
from .gluing import (
    Assembly,
    AssemblyResult,
    Ext,
    GluingEdge,
    MonodromyWord,
    Rot,
    Twist,
    assemble,
    boundary_slope,
    compatible_pairs,
    glue,
    self_glue,
)
from .openbook import (
    BoundaryOrbit,
    OpenBookDescriptor,
    SurgeryDescription,
    UnsupportedResolution,
    Veering,
    fractional_dehn_twist,
    integral_resolution,
    page_descriptor,
    surgery_description,
    veering,
)
from .realization import (
    PolygonPresentation,
    RealizationReport,
    draw_polygon_svg,
    polygon_realization,
    verify_realization,
)

__all__ = [
    "ActionClass",
    "Assembly",
    "AssemblyResult",
    "BoundaryOrbit",
    "CensusQuery",
    "CensusRecord",
    "ConditionReport",
    "ConePair",
    "DataSet",
    "Ext",
    "FillabilityVerdict",
    "GluingEdge",
    "MarkedDataSet",
    "MonodromyWord",
    "OpenBookDescriptor",
    "ParseError",
    "PolygonPresentation",
    "ProfilePair",
    "RealizationReport",
    "Rot",
    "SurgeryDescription",
    "Twist",
    "UnsupportedResolution",
    "ValidationReport",
    "Veering",
    "assemble",
    "boundary_slope",
    "build_profile",
    "canonicalize",
    "canonicalize_marked",
    "census",
    "classify",
    "classify_assembly",
    "classify_irreducible",
    "classify_marked",
    "classify_positive_word",
    "compatible_pairs",
    "data_set_from_json",
    "data_set_to_json",
    "degree_cap",
    "draw_polygon_svg",
    "enumerate_data_sets",
    "enumerate_irreducible",
    "enumerate_oracle",
    "format_data_set",
    "fractional_dehn_twist",
    "genus",
    "glue",
    "integral_resolution",
    "mod_inverse",
    "page_descriptor",
    "parse_data_set",
    "polygon_realization",
    "read_census",
    "search_profiles",
    "self_glue",
    "surgery_description",
    "validate",
    "veering",
    "verify_profile",
    "verify_realization",
    "write_census",
]

__version__ = "0.1.0"
