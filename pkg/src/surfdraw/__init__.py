"""Drawing maps on oriented surfaces: planarcode in, tikz out."""

from .codec import CombinatorialMap, MapStream, PlanarCodeError, parse_ascii, parse_binary, validate, write_planarcode
from .cycles import (
    Center,
    CutMap,
    CutPlan,
    NcCycle,
    connected_after_cut,
    cut_along,
    enumerate_start_configs,
    find_disjoint_system,
    find_fundamental_system,
    find_nc_cycle,
    is_contractible,
    verify_cut_roundtrip,
)
from .mapcore import MapTopology, genus, trace_faces
from .options import DrawSpec

__all__ = [
    "Center",
    "CombinatorialMap",
    "CutMap",
    "CutPlan",
    "DrawSpec",
    "MapStream",
    "MapTopology",
    "NcCycle",
    "PlanarCodeError",
    "connected_after_cut",
    "cut_along",
    "enumerate_start_configs",
    "find_disjoint_system",
    "find_fundamental_system",
    "find_nc_cycle",
    "genus",
    "is_contractible",
    "parse_ascii",
    "parse_binary",
    "trace_faces",
    "validate",
    "verify_cut_roundtrip",
    "write_planarcode",
]
