"""The resolved option set governing one drawing run."""

from __future__ import annotations

from dataclasses import dataclass, field

FUNDAMENTAL = "fundamental_polygon"
DISJOINT = "disjoint"
PLANE = "plane_auto"

FACE_DEFAULT = "face_default"
FACE_FIXED = "face_fixed"
EDGE = "edge"
EDGE_FIXED = "edge_fixed"
VERTEX = "vertex"
VERTEX_FIXED = "vertex_fixed"


@dataclass
class DrawSpec:
    mode: str = FUNDAMENTAL
    center_policy: str = FACE_DEFAULT
    center_args: tuple[int, ...] = ()
    vertex_cutting: bool = False
    forbidden_edges: list[tuple[int, int]] = field(default_factory=list)
    forbidden_vertices: list[int] = field(default_factory=list)
    letter_labels: bool = False
    degree_colors: list[tuple[int, str]] = field(default_factory=list)
    info: bool = False
    straight_sides: bool = False
    curved_outer: bool = False
    vertex_at_infinity: bool = False
    maximize_interior_faces: bool = False
    quality_threshold: float | None = None
    force_ascii: bool = False
    spring_iterations: int = 200
    spring_step: float = 0.1
    sagitta: float = 0.15
    max_candidates: int = 2000

    @property
    def fixed_center(self) -> bool:
        return self.center_policy in (FACE_FIXED, EDGE_FIXED, VERTEX_FIXED)

    def forbidden_pairs(self) -> set[frozenset[int]]:
        return {frozenset(p) for p in self.forbidden_edges}
