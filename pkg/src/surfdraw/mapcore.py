"""Faces, genus and dual structure of a combinatorial map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .codec import CombinatorialMap, PlanarCodeError
from .darts import DartMap


class InvalidMapError(ValueError):
    pass


class OrientedEdge(NamedTuple):
    """The ``pos``-th entry of the rotation of ``tail``, pointing to ``head``."""

    tail: int
    head: int
    pos: int


@dataclass(frozen=True)
class Face:
    boundary: tuple[OrientedEdge, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(e.tail for e in self.boundary)


@dataclass(frozen=True)
class GenusInfo:
    v: int
    e: int
    f: int
    genus: int


@dataclass(frozen=True)
class DualEdge:
    edge: int  # index of the undirected edge (dart pair) in the dart map
    primal: OrientedEdge
    left: int  # face on the left of ``primal``
    right: int

    @property
    def is_loop(self) -> bool:
        return self.left == self.right


class MapTopology:
    """Face structure of one map, computed once.

    Face ids are assigned in order of the smallest dart in each face, which
    in turn follows the vertex order of the input code.
    """

    def __init__(self, cmap: CombinatorialMap):
        self.cmap = cmap
        self.darts, self.index = DartMap.from_cmap(cmap)
        self.occurrence = {d: vi for vi, d in self.index.items()}
        self.face_darts, self.face_of = self.darts.faces()

    def oriented(self, d: int) -> OrientedEdge:
        v, i = self.occurrence[d]
        return OrientedEdge(v, self.cmap.rotations[v - 1][i], i)

    def dart(self, tail: int, head: int, occurrence: int = 0) -> int:
        """Dart of the ``occurrence``-th edge ``[tail, head]`` in the rotation of ``tail``."""
        seen = 0
        for i, w in enumerate(self.cmap.neighbours(tail)):
            if w == head:
                if seen == occurrence:
                    return self.index[(tail, i)]
                seen += 1
        raise KeyError(f"no oriented edge [{tail},{head}]")

    @property
    def faces(self) -> list[Face]:
        return [Face(tuple(self.oriented(d) for d in cyc)) for cyc in self.face_darts]

    def face_left_of(self, tail: int, head: int) -> int:
        return self.face_of[self.dart(tail, head)]


def trace_faces(cmap: CombinatorialMap) -> list[Face]:
    """Orbits of the angle relation, as cyclic lists of oriented edges."""
    return MapTopology(cmap).faces


def genus(cmap: CombinatorialMap) -> GenusInfo:
    try:
        topo = MapTopology(cmap)
    except PlanarCodeError as exc:
        raise InvalidMapError(str(exc)) from exc
    v, e = cmap.vertex_count, cmap.edge_count
    f = len(topo.face_darts)
    if e == 0:
        f = 1
    chi = v - e + f
    if chi % 2 or chi > 2:
        raise InvalidMapError(f"Euler characteristic {chi} does not give a non-negative integral genus")
    return GenusInfo(v, e, f, (2 - chi) // 2)


def dual_adjacency(cmap: CombinatorialMap) -> list[DualEdge]:
    """For every undirected edge the faces on its two sides."""
    topo = MapTopology(cmap)
    out = []
    for k in range(topo.darts.num_edges):
        d = 2 * k
        out.append(DualEdge(k, topo.oriented(d), topo.face_of[d], topo.face_of[d + 1]))
    return out


@dataclass(frozen=True)
class DegreeSummary:
    max_face_size: int
    degrees: dict[int, int]
    faces_at_vertex: dict[int, tuple[int, ...]]
    faces_at_edge: dict[int, tuple[int, int]]


def face_degree_queries(cmap: CombinatorialMap) -> DegreeSummary:
    topo = MapTopology(cmap)
    degrees = {v: cmap.degree(v) for v in range(1, cmap.vertex_count + 1)}
    at_vertex: dict[int, list[int]] = {v: [] for v in degrees}
    for fid, cyc in enumerate(topo.face_darts):
        for d in cyc:
            v = topo.darts.tail[d]
            if fid not in at_vertex[v]:
                at_vertex[v].append(fid)
    at_edge = {k: (topo.face_of[2 * k], topo.face_of[2 * k + 1]) for k in range(topo.darts.num_edges)}
    return DegreeSummary(
        max((len(c) for c in topo.face_darts), default=0),
        degrees,
        {v: tuple(fs) for v, fs in at_vertex.items()},
        at_edge,
    )
