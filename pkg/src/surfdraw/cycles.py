"""Systems of non-contractible cycles and cutting a map open along them.

The working object is :class:`CutState`: a refinement of the input map in
which every curve chosen so far is present as real structure.  Each point
where a curve crosses an edge is a new vertex subdividing that edge, the
common point of the curves (if any) is a vertex, and the pieces of curve
running through faces are *chords*, i.e. edges of the refined map that are
marked as cut.  Because curves are edges of a map, two curves can never
cross: a new curve is a walk through the faces of the refined map and each
of its chords must join two angles of one face.

Opening the refined map along all chords (:func:`open_surface`) gives the
surface with boundary; its faces made of chord copies are the holes.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

from .codec import CombinatorialMap
from .darts import DartMap
from .mapcore import MapTopology
from .options import (
    DISJOINT,
    EDGE,
    EDGE_FIXED,
    FACE_DEFAULT,
    FACE_FIXED,
    FUNDAMENTAL,
    VERTEX,
    VERTEX_FIXED,
    DrawSpec,
)

ORIGINAL = "original"
CROSSING = "crossing"
CENTER = "center"

FACE_CENTER = "face"
EDGE_CENTER = "edge_midpoint"
VERTEX_CENTER = "vertex"


class CutError(ValueError):
    pass


@dataclass(frozen=True)
class Center:
    kind: str
    anchor: int  # face id, original edge index, or vertex id


@dataclass(frozen=True)
class Crossing:
    """One crossing event: the curve crosses original dart ``dart`` from the
    face on its left to the face on its right, or passes through ``vertex``.

    ``slots`` pins down the two angles used at a passed vertex (see
    :func:`angle_slot`)."""

    dart: int | None = None
    vertex: int | None = None
    slots: tuple = ()


@dataclass(frozen=True)
class NcCycle:
    center: Center | None
    crossings: tuple[Crossing, ...]
    ends: tuple = ()  # angle slots at the center where the curve leaves and returns

    @property
    def length(self) -> int:
        return len(self.crossings)

    def crossed_edges(self) -> list[int]:
        return [c.dart >> 1 for c in self.crossings if c.dart is not None]


class StartConfig(NamedTuple):
    face: int
    dart: int  # an original dart on the boundary of ``face``


@dataclass
class CutPlan:
    mode: str
    cycles: list[NcCycle]
    start_config: StartConfig | None
    state: "CutState | None" = field(default=None, repr=False, compare=False)


@dataclass
class SearchOptions:
    forbidden_edges: frozenset[int] = frozenset()
    forbidden_vertices: frozenset[int] = frozenset()
    vertex_cutting: bool = False
    max_candidates: int = 2000


class Candidate(NamedTuple):
    start: tuple | None
    steps: tuple
    end: tuple | None
    closed: bool


# -- the refined map -------------------------------------------------------


class CutState:
    def __init__(self, topo: MapTopology):
        self.topo = topo
        self.m = topo.darts.copy()
        self.orig_dart: list[int] = list(range(self.m.num_darts))
        self.kind: dict[int, str] = {v: ORIGINAL for v in self.m.first}
        self.cut_edges: dict[int, int] = {}
        self.cycles: list[NcCycle] = []
        self.center: Center | None = None
        self.c: int | None = None
        self.center_face_dart: int | None = None
        self.cut_vertices: set[int] = set()
        self.next_vertex = max(self.m.first) + 1
        self._faces = None

    def copy(self) -> "CutState":
        s = CutState.__new__(CutState)
        s.topo = self.topo
        s.m = self.m.copy()
        s.orig_dart = self.orig_dart.copy()
        s.kind = self.kind.copy()
        s.cut_edges = self.cut_edges.copy()
        s.cycles = list(self.cycles)
        s.center = self.center
        s.c = self.c
        s.center_face_dart = self.center_face_dart
        s.cut_vertices = set(self.cut_vertices)
        s.next_vertex = self.next_vertex
        s._faces = None
        return s

    @property
    def faces(self) -> tuple[list[list[int]], list[int]]:
        if self._faces is None:
            self._faces = self.m.faces()
        return self._faces

    # setup

    def place_center(self, center: Center) -> None:
        if self.cycles:
            raise CutError("center must be placed before any cycle")
        self.center = center
        if center.kind == FACE_CENTER:
            if not 0 <= center.anchor < len(self.topo.face_darts):
                raise CutError(f"no face {center.anchor}")
            self.c = self._new_vertex(CENTER)
            self.center_face_dart = self.topo.face_darts[center.anchor][0]
        elif center.kind == EDGE_CENTER:
            if not 0 <= center.anchor < self.topo.darts.num_edges:
                raise CutError(f"no edge {center.anchor}")
            x, _ = self._subdivide(2 * center.anchor)
            self.kind[x] = CENTER
            self.c = x
        elif center.kind == VERTEX_CENTER:
            if center.anchor not in self.kind:
                raise CutError(f"no vertex {center.anchor}")
            self.c = center.anchor
        else:
            raise CutError(f"unknown center kind {center.kind!r}")
        self._faces = None

    def _new_vertex(self, kind: str) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        self.m.add_vertex(v)
        self.kind[v] = kind
        return v

    def _subdivide(self, y: int) -> tuple[int, int]:
        v = self.next_vertex
        self.next_vertex += 1
        x, z = self.m.subdivide(y, v)
        self.kind[x] = CROSSING
        self.orig_dart.extend((self.orig_dart[y], self.orig_dart[y ^ 1]))
        return x, z

    # angles at the center

    def center_angles(self) -> list[tuple[int, int | None]]:
        if self.c is None:
            return []
        rot = self.m.rotation(self.c)
        if not rot:
            return [(self.c, None)]
        return [(self.c, d) for d in rot]

    def angle_face(self, angle) -> int:
        _, face_of = self.faces
        d = angle[1]
        if d is None:
            return face_of[self.center_face_dart]
        return face_of[d ^ 1]

    # topology of the cut surface

    def is_connected(self) -> bool:
        faces, face_of = self.faces
        parent = list(range(len(faces)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        tail = self.m.tail
        for k in range(self.m.num_edges):
            if k in self.cut_edges or tail[2 * k] < 0:
                continue
            a, b = find(face_of[2 * k]), find(face_of[2 * k + 1])
            if a != b:
                parent[a] = b
        return len({find(f) for f in range(len(faces))}) <= 1

    def crossing_counts(self) -> dict[int, int]:
        """Original edge index -> number of times it is crossed."""
        counts: dict[int, int] = defaultdict(int)
        for cyc in self.cycles:
            for e in cyc.crossed_edges():
                counts[e] += 1
        return dict(counts)


# -- inserting a curve ------------------------------------------------------


def _same_face(m: DartMap, a, b) -> bool:
    if a[1] is None or b[1] is None:
        return True
    target = b[1] ^ 1
    d0 = a[1] ^ 1
    d = d0
    nxt = m.nxt
    while True:
        if d == target:
            return True
        d = nxt[d ^ 1]
        if d == d0:
            return False


def angle_slot(s: CutState, angle) -> tuple:
    """Position of an angle that survives replaying the same insertions.

    The angle after dart ``d`` is described by the nearest original dart at
    or before ``d`` in the rotation and the number of curve darts between
    them.  Around a face center there is no original dart; the first curve
    dart placed there is the reference instead.
    """
    v, d = angle
    if d is None:
        return (None, 0)
    m = s.m
    rot = m.rotation(v)
    anchors = [e for e in rot if s.orig_dart[e] >= 0]
    ref = None if anchors else min(rot)
    count = 0
    while True:
        if (ref is None and s.orig_dart[d] >= 0) or d == ref:
            return (s.orig_dart[d] if ref is None else None, count)
        count += 1
        d = m.prv[d]


def _candidate_slots(s: CutState, cand: Candidate) -> tuple:
    ends = () if cand.closed else (angle_slot(s, cand.start), angle_slot(s, cand.end))
    passes = tuple(
        (angle_slot(s, (st[1], st[2])), angle_slot(s, (st[1], st[3]))) for st in cand.steps if st[0] == "v"
    )
    return ends, passes


def realize(state: CutState, cand: Candidate) -> CutState | None:
    """Insert ``cand`` into a copy of ``state``; ``None`` if it would cross itself."""
    ends, passes = _candidate_slots(state, cand)
    passes = iter(passes)
    s = state.copy()
    m = s.m
    idx = len(s.cycles)
    first_chord_at_center: list[int] = []
    crossings = []

    def link(a, b) -> bool:
        if not _same_face(m, a, b):
            return False
        k = m.add_edge(a[0], a[1], b[0], b[1])
        s.orig_dart.extend((-1, -1))
        s.cut_edges[k] = idx
        if a[0] == s.c and not first_chord_at_center:
            first_chord_at_center.append(2 * k)
        return True

    moved: dict[tuple, tuple] = {}

    def fix(angle):
        while angle in moved:
            angle = moved[angle]
        return angle

    cur = cand.start
    end = cand.end
    first_in = None
    used = set()
    for step in cand.steps:
        if step[0] == "e":
            y = step[1]
            if (y >> 1) in used:
                return None
            used.add(y >> 1)
            crossings.append(Crossing(dart=s.orig_dart[y]))
            w = m.tail[y ^ 1]
            x, z = s._subdivide(y)
            a_in, a_out = (x, y ^ 1), (x, z)
            # z ^ 1 takes the place of y ^ 1 around the old head
            moved[(w, y ^ 1)] = (w, z ^ 1)
            cur, end = fix(cur), fix(end)
        else:
            _, v, da, db = step
            crossings.append(Crossing(vertex=v, slots=next(passes)))
            s.cut_vertices.add(v)
            a_in, a_out = fix((v, da)), fix((v, db))
        if cur is None:
            first_in = a_in
        elif not link(cur, a_in):
            return None
        cur = a_out
    if cand.closed:
        if first_in is None or not link(cur, first_in):
            return None
    else:
        if cand.end == cand.start or end[1] is None:
            options = ([end[1]] if end[1] is not None else []) + first_chord_at_center
        else:
            options = [end[1]]
        for d in options:
            if _same_face(m, cur, (end[0], d)):
                if not link(cur, (end[0], d)):
                    return None
                break
        else:
            return None
    s.cycles.append(NcCycle(s.center if not cand.closed else None, tuple(crossings), ends))
    s._faces = None
    return s


# -- walks through the faces -------------------------------------------------


class _Arena:
    """Face adjacency of one state, cached for a single search."""

    def __init__(self, s: CutState, opts: SearchOptions):
        self.s = s
        self.opts = opts
        self.faces, self.face_of = s.faces
        self._moves: dict[int, list] = {}
        self.nedges = s.topo.darts.num_edges

    def moves(self, F: int):
        got = self._moves.get(F)
        if got is not None:
            return got
        s, m, opts = self.s, self.s.m, self.opts
        out = []
        for y in self.faces[F]:
            k = y >> 1
            if k in s.cut_edges:
                continue
            od = s.orig_dart[y]
            if (od >> 1) in opts.forbidden_edges:
                continue
            out.append((self.face_of[y ^ 1], od >> 1, y, ("e", y)))
        if opts.vertex_cutting:
            for y in self.faces[F]:
                v = m.tail[y ^ 1]
                if (
                    s.kind.get(v) != ORIGINAL
                    or v == s.c
                    or v in s.cut_vertices
                    or v in opts.forbidden_vertices
                ):
                    continue
                for d in m.rotation(v):
                    G = self.face_of[d ^ 1]
                    if d == (y ^ 1) or G == F:
                        continue
                    out.append((G, self.nedges + v, y, ("v", v, y ^ 1, d)))
        out.sort(key=lambda t: (t[0], t[1], t[2]))
        self._moves[F] = out
        return out

    def distances(self, sources) -> dict[int, int]:
        dist = {f: 0 for f in sources}
        todo = deque(sources)
        while todo:
            f = todo.popleft()
            for g, *_ in self.moves(f):
                if g not in dist:
                    dist[g] = dist[f] + 1
                    todo.append(g)
        return dist

    def walks(self, start: int, length: int, is_target, dist, first_filter=None, pattern=None):
        path: list = []
        visited = {start}
        used_edges: set[int] = set()
        used_vertices: set[int] = set()
        inf = math.inf

        def rec(F, depth):
            if depth == length:
                if is_target(F):
                    yield tuple(path), F
                return
            rem = length - depth - 1
            for G, key, y, step in self.moves(F):
                if dist.get(G, inf) > rem:
                    continue
                if G in visited and not (rem == 0 and G == start):
                    continue
                if depth == 0 and first_filter is not None and not first_filter(step):
                    continue
                if pattern is not None and not _matches(self.s, step, pattern[depth]):
                    continue
                if step[0] == "e":
                    if (y >> 1) in used_edges:
                        continue
                    used_edges.add(y >> 1)
                else:
                    if step[1] in used_vertices:
                        continue
                    used_vertices.add(step[1])
                fresh = G not in visited
                visited.add(G)
                path.append(step)
                yield from rec(G, depth + 1)
                path.pop()
                if fresh:
                    visited.discard(G)
                if step[0] == "e":
                    used_edges.discard(y >> 1)
                else:
                    used_vertices.discard(step[1])

        yield from rec(start, 0)


def _matches(s: CutState, step, crossing: Crossing) -> bool:
    if step[0] == "e":
        return crossing.dart is not None and s.orig_dart[step[1]] == crossing.dart
    return crossing.vertex is not None and step[1] == crossing.vertex


def iter_arc_candidates(
    s: CutState, length: int, opts: SearchOptions, start_angles=None, first_filter=None, pattern=None, arena=None
) -> Iterator[Candidate]:
    """Curves from an angle of the center to an angle of the center."""
    arena = arena or _Arena(s, opts)
    angles = s.center_angles()
    by_face: dict[int, list] = defaultdict(list)
    for a in angles:
        by_face[s.angle_face(a)].append(a)
    dist = arena.distances(list(by_face))
    for alpha in start_angles if start_angles is not None else angles:
        F0 = s.angle_face(alpha)
        for steps, Fend in arena.walks(F0, length, by_face.__contains__, dist, first_filter, pattern):
            for beta in by_face[Fend]:
                yield Candidate(alpha, steps, beta, False)


def iter_closed_candidates(
    s: CutState, length: int, opts: SearchOptions, base_faces=None, first_filter=None, pattern=None, arena=None
) -> Iterator[Candidate]:
    """Closed curves avoiding all earlier cuts."""
    arena = arena or _Arena(s, opts)
    bases = base_faces if base_faces is not None else range(len(arena.faces))
    for F0 in bases:
        dist = arena.distances([F0])
        for steps, _ in arena.walks(F0, length, F0.__eq__, dist, first_filter, pattern):
            yield Candidate(None, steps, None, True)


def _search(s: CutState, generate: Callable[[int], Iterator[Candidate]], accept, min_len, max_len, budget):
    tried = 0
    # a walk visits distinct faces, so it cannot be longer than the face count
    max_len = min(max_len, len(s.faces[0]))
    for L in range(max(min_len, 1), max_len + 1):
        for cand in generate(L):
            tried += 1
            if tried > budget:
                return None
            ns = realize(s, cand)
            if ns is None:
                continue
            if accept(ns):
                return ns, cand
    return None


# -- opening the surface ------------------------------------------------------


@dataclass
class OpenSurface:
    plane: DartMap
    key: list[tuple[int, str | None]]  # plane dart -> (refined dart, tag)
    vertex_origin: dict[int, int]  # plane vertex -> refined vertex
    holes: list[int]  # face ids (in plane.faces()) that are holes
    faces: list[list[int]]
    face_of: list[int]


def open_surface(s: CutState) -> OpenSurface:
    """Cut the refined map open along all chords.

    A chord edge ``k`` becomes two edges: ``(2k,'a')-(2k+1,'b')`` and
    ``(2k,'b')-(2k+1,'a')``.  Around a refined vertex with cut darts the
    rotation splits into arcs from one cut dart (its ``'a'`` copy) to the
    next (its ``'b'`` copy).  Copies tagged ``'a'`` run along a hole.
    """
    m = s.m
    cut = s.cut_edges
    P = DartMap()
    key: list[tuple[int, str | None]] = []
    pid: dict[tuple[int, str | None], int] = {}
    for k in range(m.num_edges):
        if m.tail[2 * k] < 0:
            continue
        if k in cut:
            pairs = [((2 * k, "a"), (2 * k + 1, "b")), ((2 * k, "b"), (2 * k + 1, "a"))]
        else:
            pairs = [((2 * k, None), (2 * k + 1, None))]
        for ka, kb in pairs:
            pid[ka] = len(key)
            key.append(ka)
            pid[kb] = len(key)
            key.append(kb)
    n = len(key)
    P.tail = [0] * n
    P.nxt = [0] * n
    P.prv = [0] * n
    origin: dict[int, int] = {}
    nv = 0

    def emit(seq):
        nonlocal nv
        nv += 1
        P.first[nv] = pid[seq[0]] if seq else None
        origin[nv] = v
        ids = [pid[x] for x in seq]
        for i, d in enumerate(ids):
            P.tail[d] = nv
            P.nxt[d] = ids[(i + 1) % len(ids)]
            P.prv[d] = ids[i - 1]

    for v in m.first:
        rot = m.rotation(v)
        cpos = [i for i, d in enumerate(rot) if (d >> 1) in cut]
        if not cpos:
            emit([(d, None) for d in rot])
            continue
        r = len(rot)
        for j, p in enumerate(cpos):
            q = cpos[(j + 1) % len(cpos)]
            seq = [(rot[p], "a")]
            i = (p + 1) % r
            while i != q:
                seq.append((rot[i], None))
                i = (i + 1) % r
            seq.append((rot[q], "b"))
            emit(seq)
    faces, face_of = P.faces()
    holes = []
    for fid, cyc in enumerate(faces):
        tags = {key[d][1] == "a" for d in cyc}
        if tags == {True}:
            holes.append(fid)
        elif len(tags) > 1:
            raise CutError("inconsistent hole structure while opening")
    return OpenSurface(P, key, origin, holes, faces, face_of)


def surface_components(op: OpenSurface) -> list[dict]:
    """Per connected component: vertex set, Euler characteristic and hole count."""
    P = op.plane
    comps = P.components()
    out = []
    hole_set = set(op.holes)
    for comp in comps:
        darts = [d for d in range(P.num_darts) if P.tail[d] in comp]
        faces = {op.face_of[d] for d in darts}
        nholes = len(faces & hole_set)
        chi = len(comp) - len(darts) // 2 + (len(faces) - nholes)
        out.append({"vertices": comp, "chi": chi, "holes": nholes})
    return out


def _contractible_state(s: CutState) -> bool:
    comps = surface_components(open_surface(s))
    if len(comps) < 2:
        return False
    return any(c["chi"] == 1 and c["holes"] == 1 for c in comps)


# -- public search API -------------------------------------------------------


def _topology(cmap) -> MapTopology:
    return cmap if isinstance(cmap, MapTopology) else MapTopology(cmap)


def _options(spec: DrawSpec | None, topo: MapTopology) -> SearchOptions:
    if spec is None:
        return SearchOptions()
    pairs = spec.forbidden_pairs()
    forbidden = frozenset(
        k
        for k in range(topo.darts.num_edges)
        if frozenset((topo.darts.tail[2 * k], topo.darts.tail[2 * k + 1])) in pairs
    )
    return SearchOptions(
        forbidden_edges=forbidden,
        forbidden_vertices=frozenset(spec.forbidden_vertices),
        vertex_cutting=spec.vertex_cutting,
        max_candidates=spec.max_candidates,
    )


def _genus(topo: MapTopology) -> int:
    v, e = topo.cmap.vertex_count, topo.cmap.edge_count
    f = max(len(topo.face_darts), 1)
    return (2 - (v - e + f)) // 2


def fresh_state(cmap, center: Center | None = None) -> CutState:
    s = CutState(_topology(cmap))
    if center is not None:
        s.place_center(center)
    return s


def find_nc_cycle(
    cmap,
    center: Center,
    min_length: int = 1,
    forbidden_edges: Sequence[int] = (),
    forbidden_vertices: Sequence[int] = (),
    already_cut: CutState | None = None,
    vertex_cutting: bool = False,
    max_candidates: int = 2000,
) -> NcCycle | None:
    """Shortest curve through ``center`` that is non-contractible.

    With ``already_cut`` the curve avoids the curves present there and must
    keep the cut surface connected.  Returns ``None`` when exhausted.
    """
    topo = _topology(cmap)
    if _genus(topo) == 0:
        return None
    s = already_cut if already_cut is not None else fresh_state(topo, center)
    opts = SearchOptions(frozenset(forbidden_edges), frozenset(forbidden_vertices), vertex_cutting, max_candidates)
    arena = _Arena(s, opts)
    accept = (lambda ns: ns.is_connected()) if s.cycles else (lambda ns: not _contractible_state(ns))
    found = _search(
        s,
        lambda L: iter_arc_candidates(s, L, opts, arena=arena),
        accept,
        min_length,
        2 * topo.cmap.edge_count,
        max_candidates,
    )
    return None if found is None else found[0].cycles[-1]


def _embed(topo: MapTopology, cycles: Sequence[NcCycle]) -> Iterator[CutState]:
    """All ways to realise ``cycles`` (in order) as non-crossing curves."""
    centers = {c.center for c in cycles if c.center is not None}
    if len(centers) > 1:
        raise CutError("cycles through different centers cannot be combined")
    s0 = fresh_state(topo, next(iter(centers)) if centers else None)
    opts = SearchOptions(vertex_cutting=any(x.vertex is not None for c in cycles for x in c.crossings))

    def rec(s, i):
        if i == len(cycles):
            yield s
            return
        cyc = cycles[i]
        L = cyc.length
        if cyc.center is None:
            gen = iter_closed_candidates(s, L, opts, pattern=cyc.crossings)
        else:
            gen = iter_arc_candidates(s, L, opts, pattern=cyc.crossings)
        for cand in gen:
            if cyc.ends or any(x.slots for x in cyc.crossings):
                ends, passes = _candidate_slots(s, cand)
                if cyc.ends and ends != cyc.ends:
                    continue
                if passes != tuple(x.slots for x in cyc.crossings if x.vertex is not None):
                    continue
            ns = realize(s, cand)
            if ns is not None:
                yield from rec(ns, i + 1)

    yield from rec(s0, 0)


def embed_cycles(cmap, cycles: Sequence[NcCycle]) -> CutState:
    for s in _embed(_topology(cmap), cycles):
        return s
    raise CutError("cycles cannot be realised as non-crossing closed curves on this map")


def is_contractible(cmap, cycle: NcCycle) -> bool:
    topo = _topology(cmap)
    if cycle.length == 0:
        return True
    if _genus(topo) == 0:
        embed_cycles(topo, [cycle])
        return True
    return _contractible_state(embed_cycles(topo, [cycle]))


def connected_after_cut(cmap, cycles: Sequence[NcCycle]) -> bool:
    if not cycles:
        return True
    return embed_cycles(_topology(cmap), cycles).is_connected()


def enumerate_start_configs(cmap) -> list[StartConfig]:
    """Every (face, boundary dart) pair, larger faces first.

    An edge with the same face on both sides gives two configurations, one
    per crossing direction, so the count equals the sum of the face sizes.
    """
    topo = _topology(cmap)
    order = sorted(range(len(topo.face_darts)), key=lambda f: (-len(topo.face_darts[f]), f))
    return [StartConfig(f, d) for f in order for d in topo.face_darts[f]]


def fixed_start_config(cmap, spec: DrawSpec) -> StartConfig:
    """The single start configuration implied by ``cf``, ``ce`` or ``cv``."""
    topo = _topology(cmap)
    args = spec.center_args
    try:
        if spec.center_policy in (FACE_FIXED, EDGE_FIXED):
            d = topo.dart(args[0], args[1])
        elif spec.center_policy == VERTEX_FIXED:
            if not 1 <= args[0] <= topo.cmap.vertex_count or topo.cmap.degree(args[0]) == 0:
                raise KeyError(args[0])
            d = topo.darts.first[args[0]]
        else:
            raise CutError(f"center policy {spec.center_policy!r} has no fixed configuration")
    except (KeyError, IndexError):
        raise CutError(f"center argument {args} does not exist in this map") from None
    return StartConfig(topo.face_of[d], d)


def _center_for(topo: MapTopology, spec: DrawSpec, config: StartConfig) -> tuple[Center, str]:
    policy = spec.center_policy
    if policy in (FACE_DEFAULT, FACE_FIXED):
        return Center(FACE_CENTER, config.face), FACE_CENTER
    if policy in (EDGE, EDGE_FIXED):
        return Center(EDGE_CENTER, config.dart >> 1), EDGE_CENTER
    if policy in (VERTEX, VERTEX_FIXED):
        return Center(VERTEX_CENTER, topo.darts.tail[config.dart]), VERTEX_CENTER
    raise CutError(f"unknown center policy {policy!r}")


def _first_angle(s: CutState, config: StartConfig):
    """The angle of the center lying in the start face."""
    if s.center.kind == FACE_CENTER:
        return (s.c, None)
    if s.center.kind == VERTEX_CENTER:
        return (s.c, s.m.prv[config.dart])
    for a in s.center_angles():
        if s.angle_face(a) == s.faces[1][config.dart]:
            return a
    return s.center_angles()[0]


def find_fundamental_system(cmap, spec: DrawSpec | None, start_config: StartConfig) -> CutPlan | None:
    """2g curves through one common point, cut surface connected after each."""
    topo = _topology(cmap)
    spec = spec or DrawSpec()
    g = _genus(topo)
    if g == 0:
        raise CutError("genus 0 map: use the plane drawing path")
    opts = _options(spec, topo)
    center, kind = _center_for(topo, spec, start_config)
    s = fresh_state(topo, center)
    max_len = 2 * topo.cmap.edge_count
    prev = 1
    budget = opts.max_candidates
    for i in range(2 * g):
        arena = _Arena(s, opts)
        if i == 0:
            starts = [_first_angle(s, start_config)]
            first = start_config.dart
            ffilter = (lambda st: st[0] == "e" and s.orig_dart[st[1]] == first) if kind == FACE_CENTER else None
        else:
            starts, ffilter = None, None
        cur = s
        found = _search(
            cur,
            lambda L: iter_arc_candidates(cur, L, opts, starts, ffilter, arena=arena),
            CutState.is_connected,
            prev,
            max_len,
            budget,
        )
        if found is None:
            return None
        s, cand = found
        prev = len(cand.steps)
    return CutPlan(FUNDAMENTAL, list(s.cycles), start_config, s)


def find_disjoint_system(cmap, spec: DrawSpec | None, start_config: StartConfig) -> CutPlan | None:
    """g pairwise disjoint closed curves, cut surface connected after each."""
    topo = _topology(cmap)
    spec = spec or DrawSpec()
    g = _genus(topo)
    if g == 0:
        raise CutError("genus 0 map: use the plane drawing path")
    opts = _options(spec, topo)
    s = fresh_state(topo)
    max_len = 2 * topo.cmap.edge_count
    prev = 1
    for i in range(g):
        arena = _Arena(s, opts)
        if i == 0:
            first = start_config.dart
            bases = [start_config.face]
            ffilter = lambda st: st[0] == "e" and s.orig_dart[st[1]] == first  # noqa: E731
        else:
            bases, ffilter = None, None
        cur = s
        found = _search(
            cur,
            lambda L: iter_closed_candidates(cur, L, opts, bases, ffilter, arena=arena),
            CutState.is_connected,
            prev,
            max_len,
            opts.max_candidates,
        )
        if found is None:
            return None
        s, cand = found
        prev = len(cand.steps)
    return CutPlan(DISJOINT, list(s.cycles), start_config, s)


# -- the cut map ----------------------------------------------------------------


@dataclass
class BoundarySide:
    """One side of the fundamental polygon, from corner to corner along the outer walk."""

    cycle: int
    forward: bool  # True if the outer walk follows the cycle's own direction
    darts: tuple[int, ...]  # plane darts along the outer face

    @property
    def label(self) -> int:
        return self.cycle


@dataclass
class CutMap:
    mode: str
    plane: DartMap
    outer_face: tuple[int, ...]  # plane darts of the designated outer face; () if undecided
    sides: list[BoundarySide]
    cut_faces: list[tuple[tuple[int, ...], tuple[int, ...]]]
    holes: list[tuple[int, ...]]
    hole_cycle: list[int]
    vertex_origin: dict[int, int]  # plane vertex -> refined vertex
    refined_kind: dict[int, str]
    refined_orig_dart: list[int]
    original_tail: list[int]  # original dart -> original vertex
    dart_key: list[tuple[int, str | None]]
    edge_cycle: dict[int, int]  # refined chord edge -> cycle index
    labels: dict[int, int]  # plane vertex -> destination vertex number
    center_vertex: int | None
    untouched_faces: int
    genus: int
    plan: CutPlan | None = field(default=None, repr=False)

    @property
    def plane_map(self) -> CombinatorialMap:
        return self.plane.to_cmap()[0]

    def vertex_label(self, pv: int) -> int | None:
        """Original vertex number drawn for plane vertex ``pv``, if it is one."""
        rv = self.vertex_origin[pv]
        if self.refined_kind[rv] == ORIGINAL:
            return rv
        return None

    def role(self, pv: int) -> str:
        rv = self.vertex_origin[pv]
        k = self.refined_kind[rv]
        # with a vertex center the copies of that vertex are the corners
        if k == CENTER or (rv == self.center_vertex and self.mode == FUNDAMENTAL):
            return "polygon_corner"
        if k == ORIGINAL:
            return "original_vertex"
        return "crossing_point"


def _destination(cm_key, refined_orig_dart, original_tail, plane: DartMap, pv: int) -> int | None:
    segs = [d for d in plane.rotation(pv) if cm_key[d][1] is None]
    if len(segs) != 1:
        return None
    od = refined_orig_dart[cm_key[segs[0]][0]]
    if od < 0:
        return None
    # the segment heads towards head(od); the edge finally leads to tail(od)
    return original_tail[od]


def cut_along(cmap, plan: CutPlan) -> CutMap:
    topo = _topology(cmap)
    if plan.state is not None and plan.state.topo.cmap == topo.cmap:
        s = plan.state
    else:
        s = embed_cycles(topo, plan.cycles)
    if len(s.cycles) != len(plan.cycles):
        raise CutError("plan does not match its recorded state")
    op = open_surface(s)
    P = op.plane
    comps = P.components()
    if len(comps) != 1:
        raise CutError("cut surface is disconnected")
    original_tail = topo.darts.tail
    labels = {}
    for pv in P.first:
        rv = op.vertex_origin[pv]
        if s.kind[rv] == ORIGINAL:
            continue
        lab = _destination(op.key, s.orig_dart, original_tail, P, pv)
        if lab is not None:
            labels[pv] = lab
    holes = [tuple(op.faces[h]) for h in op.holes]
    hole_cycle = []
    for h in holes:
        cyc = {s.cut_edges[op.key[d][0] >> 1] for d in h}
        if len(cyc) != 1 and plan.mode == DISJOINT:
            raise CutError("hole mixes several cycles")
        hole_cycle.append(min(cyc))
    sides: list[BoundarySide] = []
    cut_faces = []
    outer: tuple[int, ...] = ()
    if plan.mode == FUNDAMENTAL:
        if len(holes) != 1:
            raise CutError(f"fundamental cut produced {len(holes)} holes")
        outer = holes[0]
        corners = [i for i, d in enumerate(outer) if op.vertex_origin[P.tail[d]] == s.c]
        if not corners:
            raise CutError("no polygon corner on the boundary")
        start = corners[0]
        walk = outer[start:] + outer[:start]
        cur: list[int] = []
        for d in walk:
            if cur and op.vertex_origin[P.tail[d]] == s.c:
                sides.append(_side(cur, op, s))
                cur = []
            cur.append(d)
        sides.append(_side(cur, op, s))
        outer = tuple(walk)
    else:
        by_cycle: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for h, c in zip(holes, hole_cycle):
            by_cycle[c].append(h)
        for c in sorted(by_cycle):
            pair = by_cycle[c]
            if len(pair) != 2:
                raise CutError(f"cycle {c} produced {len(pair)} cut faces")
            cut_faces.append((pair[0], pair[1]))
    touched = set()
    for cyc in s.cycles:
        for x in cyc.crossings:
            if x.dart is not None:
                touched.add(topo.face_of[x.dart])
                touched.add(topo.face_of[x.dart ^ 1])
            else:
                touched.update(topo.face_of[d ^ 1] for d in topo.darts.rotation(x.vertex))
    if s.center is not None:
        if s.center.kind == FACE_CENTER:
            touched.add(s.center.anchor)
        elif s.center.kind == EDGE_CENTER:
            touched.update((topo.face_of[2 * s.center.anchor], topo.face_of[2 * s.center.anchor + 1]))
        else:
            touched.update(topo.face_of[d ^ 1] for d in topo.darts.rotation(s.center.anchor))
    return CutMap(
        mode=plan.mode,
        plane=P,
        outer_face=outer,
        sides=sides,
        cut_faces=cut_faces,
        holes=holes,
        hole_cycle=hole_cycle,
        vertex_origin=op.vertex_origin,
        refined_kind=dict(s.kind),
        refined_orig_dart=list(s.orig_dart),
        original_tail=list(original_tail),
        dart_key=op.key,
        edge_cycle=dict(s.cut_edges),
        labels=labels,
        center_vertex=s.c,
        untouched_faces=len(topo.face_darts) - len(touched),
        genus=_genus(topo),
        plan=plan,
    )


def _side(darts: list[int], op: OpenSurface, s: CutState) -> BoundarySide:
    keys = [op.key[d][0] for d in darts]
    cyc = {s.cut_edges[k >> 1] for k in keys}
    fwd = {k % 2 == 0 for k in keys}
    if len(cyc) != 1 or len(fwd) != 1:
        raise CutError("polygon side mixes cycles or directions")
    return BoundarySide(cyc.pop(), fwd.pop(), tuple(darts))


def check_identification(cm: CutMap) -> bool:
    """Fundamental mode: every cycle labels exactly two sides, once in each direction.
    Disjoint mode: cut faces pair up with equal sizes."""
    if cm.mode == FUNDAMENTAL:
        seen: dict[int, list[bool]] = defaultdict(list)
        for side in cm.sides:
            seen[side.cycle].append(side.forward)
        return len(cm.sides) == 4 * cm.genus and all(sorted(v) == [False, True] for v in seen.values())
    return len(cm.cut_faces) == cm.genus and all(len(a) == len(b) for a, b in cm.cut_faces)


def check_label_bijection(cm: CutMap) -> bool:
    """Crossing labels on the two sides of each cut agree with provenance.

    For every crossing vertex the two plane copies carry the two endpoints
    of the crossed edge, each copy naming the endpoint reached through the
    identification.
    """
    P = cm.plane
    copies: dict[int, list[int]] = defaultdict(list)
    for pv, rv in cm.vertex_origin.items():
        if cm.refined_kind[rv] == CROSSING:
            copies[rv].append(pv)
    for rv, pvs in copies.items():
        if len(pvs) != 2:
            return False
        a, b = pvs
        ends = []
        for pv in (a, b):
            segs = [d for d in P.rotation(pv) if cm.dart_key[d][1] is None]
            if len(segs) != 1:
                return False
            od = cm.refined_orig_dart[cm.dart_key[segs[0]][0]]
            ends.append((cm.original_tail[od ^ 1], cm.original_tail[od]))  # (towards, label)
        if cm.labels.get(a) != ends[1][0] or cm.labels.get(b) != ends[0][0]:
            return False
        if cm.mode == DISJOINT:
            ha = [i for i, h in enumerate(cm.holes) if any(P.tail[d] == a for d in h)]
            hb = [i for i, h in enumerate(cm.holes) if any(P.tail[d] == b for d in h)]
            if len(ha) != 1 or len(hb) != 1 or ha == hb:
                return False
            if cm.hole_cycle[ha[0]] != cm.hole_cycle[hb[0]]:
                return False
    return True


def verify_cut_roundtrip(cmap, cm: CutMap) -> bool:
    """Glue the cut map back together from its provenance and compare."""
    try:
        return _roundtrip(_topology(cmap), cm)
    except (KeyError, IndexError, ValueError):
        return False


def _roundtrip(topo: MapTopology, cm: CutMap) -> bool:
    P = cm.plane
    key = cm.dart_key
    # edges of the plane map pair up refined darts consistently
    for d in range(0, P.num_darts, 2):
        (a, ta), (b, tb) = key[d], key[d + 1]
        if a ^ 1 != b:
            return False
        if (ta, tb) not in ((None, None), ("a", "b"), ("b", "a")):
            return False
        if (ta is None) != ((a >> 1) not in cm.edge_cycle):
            return False
    # sides and holes must agree with the chords they are made of
    for side in cm.sides:
        for d in side.darts:
            k = key[d][0]
            if cm.edge_cycle[k >> 1] != side.cycle or (k % 2 == 0) != side.forward:
                return False
    for pv, lab in cm.labels.items():
        if _destination(key, cm.refined_orig_dart, cm.original_tail, P, pv) != lab:
            return False
    # rebuild refined rotations by chaining vertex copies
    copies: dict[int, list[list[tuple[int, str | None]]]] = defaultdict(list)
    for pv in P.first:
        copies[cm.vertex_origin[pv]].append([key[d] for d in P.rotation(pv)])
    rot: dict[int, list[int]] = {}
    for rv, arcs in copies.items():
        if len(arcs) == 1 and all(t is None for _, t in arcs[0]):
            rot[rv] = [d for d, _ in arcs[0]]
            continue
        by_start = {}
        for arc in arcs:
            if arc[0][1] != "a" or arc[-1][1] != "b" or any(t is not None for _, t in arc[1:-1]):
                return False
            by_start[arc[0][0]] = arc
        if len(by_start) != len(arcs):
            return False
        seq: list[int] = []
        arc = arcs[0]
        for _ in range(len(arcs)):
            seq.extend(d for d, _ in arc[:-1])
            arc = by_start.get(arc[-1][0])
            if arc is None:
                return False
        if arc is not arcs[0]:
            return False
        rot[rv] = seq
    # drop chords, then follow edges through crossing and center vertices
    chords = set(cm.edge_cycle)
    live = {rv: [d for d in r if (d >> 1) not in chords] for rv, r in rot.items()}
    at = {}
    for rv, r in live.items():
        for d in r:
            at[d] = rv
    n = topo.cmap.vertex_count
    orig_rot = {v: topo.darts.rotation(v) for v in range(1, n + 1)}
    for v in range(1, n + 1):
        if cm.refined_kind.get(v) != "original":
            return False
        got = [cm.refined_orig_dart[d] for d in live.get(v, [])]
        want = orig_rot[v]
        if len(got) != len(want):
            return False
        if want and not _cyclic_equal(got, want):
            return False
        for d in live.get(v, []):
            cur = d
            for _ in range(len(at) + 1):
                w = at[cur ^ 1]
                if w <= n and cm.refined_kind[w] == "original":
                    break
                nxt = [x for x in live[w] if x != cur ^ 1]
                if len(nxt) != 1:
                    return False
                cur = nxt[0]
            else:
                return False
            if cm.refined_orig_dart[cur ^ 1] != cm.refined_orig_dart[d] ^ 1:
                return False
    extra = [rv for rv in live if rv > n and cm.refined_kind[rv] == "original"]
    return not extra


def _cyclic_equal(a: list[int], b: list[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = a.index(b[0])
    except ValueError:
        return False
    return a[i:] + a[:i] == b
