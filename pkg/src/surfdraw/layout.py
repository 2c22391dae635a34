"""Straight-line coordinates for cut maps and plane maps.

The pipeline is: make the graph simple by putting bend points on loops and
parallel edges, choose and fix the outer boundary on a convex curve,
triangulate the remaining faces with removable extra vertices until the
graph is 3-connected, place every inner vertex at the centroid of its
neighbours (one sparse linear solve), and finally nudge vertices towards
equal face areas while the drawing stays valid.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .codec import CombinatorialMap
from .darts import DartMap
from .options import DrawSpec

ORIGINAL_VERTEX = "original_vertex"
CROSSING_POINT = "crossing_point"
POLYGON_CORNER = "polygon_corner"
AUGMENTATION_VERTEX = "augmentation_vertex"
BEND_POINT = "bend_point"

REAL_ROLES = (ORIGINAL_VERTEX, CROSSING_POINT)


class LayoutError(RuntimeError):
    pass


@dataclass(frozen=True)
class DrawingQuality:
    min_vertex_vertex: float
    min_vertex_edge: float
    score: float


@dataclass
class SideGeometry:
    """A side of the fundamental polygon: corner to corner with an optional
    quadratic control point (``None`` for a straight side)."""

    start: tuple[float, float]
    end: tuple[float, float]
    control: tuple[float, float] | None
    points: list[int]  # drawn point ids along the side, corners included


@dataclass
class Ray:
    start: int
    direction: tuple[float, float]
    label: int


@dataclass
class Layout:
    positions: dict[int, tuple[float, float]]
    outer_polygon: list[tuple[float, float]]
    point_roles: dict[int, str]
    graph: DartMap
    outer: list[int]
    edge_paths: dict[int, list[int]]
    augmentation: set[int] = field(default_factory=set)
    base_faces: list[list[int]] = field(default_factory=list)
    sides: list[SideGeometry] = field(default_factory=list)
    rays: list[Ray] = field(default_factory=list)
    radius: float = 1.0
    quality: DrawingQuality | None = None

    def array(self, ids) -> np.ndarray:
        return np.array([self.positions[i] for i in ids], dtype=float).reshape(-1, 2)

    def segments(self) -> list[tuple[int, int, int]]:
        """``(edge, a, b)`` for every straight piece of every drawn edge."""
        out = []
        for k, path in self.edge_paths.items():
            for a, b in zip(path, path[1:]):
                out.append((k, a, b))
        return out

    def real_points(self) -> list[int]:
        return [v for v, r in self.point_roles.items() if r in REAL_ROLES]


# -- graph preparation --------------------------------------------------------


def _simplify(P: DartMap, roles: dict[int, str]):
    """Copy of ``P`` with bend points: two on each loop, one on each extra parallel edge."""
    W = P.copy()
    roles = dict(roles)
    nextv = max(W.first, default=0) + 1
    paths: dict[int, list[int]] = {}
    seen: dict[frozenset, int] = {}
    for k in range(P.num_edges):
        a, b = P.tail[2 * k], P.tail[2 * k + 1]
        if a < 0:
            continue
        if a == b:
            x1, _ = W.subdivide(2 * k, nextv)
            x2, _ = W.subdivide(2 * k, nextv + 1)
            roles[x1] = roles[x2] = BEND_POINT
            nextv += 2
            paths[k] = [a, x2, x1, b]
            continue
        pair = frozenset((a, b))
        if pair in seen:
            x, _ = W.subdivide(2 * k, nextv)
            roles[x] = BEND_POINT
            nextv += 1
            paths[k] = [a, x, b]
        else:
            seen[pair] = k
            paths[k] = [a, b]
    return W, roles, paths


def _walk_vertices(W: DartMap, face: list[int]) -> list[int]:
    return [W.tail[d] for d in face]


def _is_simple_face(W: DartMap, face: list[int]) -> bool:
    vs = _walk_vertices(W, face)
    return len(set(vs)) == len(vs)


def is_polyhedral(W: DartMap) -> bool:
    """Faces are simple cycles and any two meet in nothing, a vertex or an edge.

    For a simple plane graph with at least four vertices this is equivalent
    to 3-connectivity.
    """
    if len(W.first) < 4:
        return False
    faces, _ = W.faces()
    vsets, esets = [], []
    for f in faces:
        vs = _walk_vertices(W, f)
        if len(set(vs)) != len(vs) or len(vs) < 3:
            return False
        vsets.append(set(vs))
        esets.append({frozenset((W.tail[d], W.tail[d ^ 1])) for d in f})
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            common = vsets[i] & vsets[j]
            if len(common) <= 1:
                continue
            if len(common) == 2 and frozenset(common) in esets[i] and frozenset(common) in esets[j]:
                continue
            return False
    return True


def _face_angle(W: DartMap, face_dart: int, v: int) -> int:
    for d in W.face_darts(face_dart):
        if W.tail[d] == v:
            return W.prv[d]
    raise LayoutError(f"vertex {v} not on face")


def _connect_in_face(W: DartMap, u: int, v: int, face_dart: int) -> int:
    return W.add_edge(u, _face_angle(W, face_dart, u), v, _face_angle(W, face_dart, v))


def _star(W: DartMap, face: list[int], s: int) -> None:
    W.add_vertex(s)
    prev = None
    for d in reversed(face):
        k = W.add_edge(s, prev, W.tail[d], W.prv[d])
        prev = 2 * k


def _ring(W: DartMap, face: list[int], first_id: int) -> tuple[list[int], int]:
    """Put a cycle of new vertices inside ``face``, one per angle, and
    triangulate the annulus.  Returns the ring vertices and a dart of the
    face bounded by the ring alone."""
    ring = list(range(first_id, first_id + len(face)))
    for d, r in zip(face, ring):
        W.add_vertex(r)
        W.add_edge(W.tail[d], W.prv[d], r, None)
    k = len(face)
    ring_edges = []
    for i in range(k):
        ring_edges.append(_connect_in_face(W, ring[i], ring[(i + 1) % k], face[i]))
    for i in range(k):
        _connect_in_face(W, ring[i], W.tail[face[(i + 1) % k]], face[i])
    _, face_of = W.faces()
    e = ring_edges[0]
    inner = 2 * e if face_of[2 * e] != face_of[face[0]] else 2 * e + 1
    return ring, inner


@dataclass
class Augmentation:
    graph: DartMap
    added: set[int]
    outer_dart: int


def augment_to_3connected(W: DartMap, outer_dart: int, first_id: int | None = None) -> Augmentation:
    """Triangulate every inner face that needs it with removable vertices.

    Nothing is added when the graph is already polyhedral.  Otherwise simple
    faces of size at least 4 (and triangles with a degree 2 corner) get a
    star and non-simple faces get a ring plus a star, which leaves a
    triangulated disk whose boundary is the outer face.
    """
    G = W.copy()
    if is_polyhedral(G):
        return Augmentation(G, set(), outer_dart)
    nextv = first_id if first_id is not None else max(G.first) + 1
    added: set[int] = set()
    faces, face_of = G.faces()
    outer = face_of[outer_dart]
    todo = [f for i, f in enumerate(faces) if i != outer]
    for f in todo:
        if _is_simple_face(G, f):
            # a degree 2 corner of a triangle would land on the opposite side
            if len(f) <= 3 and all(G.degree(G.tail[d]) >= 3 for d in f):
                continue
            _star(G, f, nextv)
            added.add(nextv)
            nextv += 1
        else:
            ring, inner = _ring(G, f, nextv)
            added.update(ring)
            nextv += len(ring)
            _star(G, G.face_darts(inner), nextv)
            added.add(nextv)
            nextv += 1
    return Augmentation(G, added, outer_dart)


# -- coordinates ----------------------------------------------------------------


def tutte_layout(graph: DartMap, outer_face: list[int], corner_positions: dict[int, tuple[float, float]]):
    """Barycentric positions for all vertices not in ``outer_face``.

    Returns ``(positions, residual)`` where ``residual`` is the largest
    distance between an inner vertex and the centroid of its neighbours.
    """
    fixed = set(outer_face)
    inner = [v for v in graph.first if v not in fixed]
    pos = {v: tuple(map(float, corner_positions[v])) for v in outer_face}
    if not inner:
        return pos, 0.0
    idx = {v: i for i, v in enumerate(inner)}
    rows, cols, vals = [], [], []
    rhs = np.zeros((len(inner), 2))
    for v in inner:
        i = idx[v]
        nbrs = [graph.tail[d ^ 1] for d in graph.rotation(v)]
        if not nbrs:
            raise LayoutError(f"isolated inner vertex {v}")
        rows.append(i)
        cols.append(i)
        vals.append(float(len(nbrs)))
        for w in nbrs:
            if w in idx:
                rows.append(i)
                cols.append(idx[w])
                vals.append(-1.0)
            else:
                rhs[i] += pos[w]
    A = sp.csr_matrix((vals, (rows, cols)), shape=(len(inner), len(inner)))
    sol = spsolve(A.tocsc(), rhs)
    sol = np.asarray(sol).reshape(len(inner), 2)
    if not np.all(np.isfinite(sol)):
        raise LayoutError("singular barycentric system")
    for v in inner:
        pos[v] = (float(sol[idx[v], 0]), float(sol[idx[v], 1]))
    return pos, barycentric_residual(graph, pos, fixed)


def barycentric_residual(graph: DartMap, pos, fixed) -> float:
    worst = 0.0
    for v in graph.first:
        if v in fixed:
            continue
        nbrs = [graph.tail[d ^ 1] for d in graph.rotation(v)]
        cx = sum(pos[w][0] for w in nbrs) / len(nbrs)
        cy = sum(pos[w][1] for w in nbrs) / len(nbrs)
        worst = max(worst, math.hypot(pos[v][0] - cx, pos[v][1] - cy))
    return worst


def _signed_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _inner_faces(G: DartMap, outer_dart: int) -> list[list[int]]:
    faces, face_of = G.faces()
    out = face_of[outer_dart]
    return [_walk_vertices(G, f) for i, f in enumerate(faces) if i != out]


def is_valid(G: DartMap, outer_dart: int, pos, eps: float = 0.0) -> bool:
    """Every inner face, fan-triangulated, consists of positively oriented triangles."""
    for vs in _inner_faces(G, outer_dart):
        p0 = pos[vs[0]]
        for a, b in zip(vs[1:], vs[2:]):
            pa, pb = pos[a], pos[b]
            cross = (pa[0] - p0[0]) * (pb[1] - p0[1]) - (pa[1] - p0[1]) * (pb[0] - p0[0])
            if cross <= eps:
                return False
    return True


def face_areas(faces: list[list[int]], pos) -> np.ndarray:
    fx = _FaceIndex(faces)
    return fx.areas(fx.coords(pos))


class _FaceIndex:
    """Flat corner arrays for a list of vertex cycles."""

    def __init__(self, faces: list[list[int]]):
        self.verts = sorted({v for f in faces for v in f})
        where = {v: i for i, v in enumerate(self.verts)}
        self.corner = np.array([where[v] for f in faces for v in f], dtype=int)
        self.after = np.array([where[f[(i + 1) % len(f)]] for f in faces for i in range(len(f))], dtype=int)
        self.face = np.repeat(np.arange(len(faces)), [len(f) for f in faces])
        self.size = np.array([len(f) for f in faces], dtype=float)
        self.n = len(faces)

    def coords(self, pos) -> np.ndarray:
        return np.array([pos[v] for v in self.verts], dtype=float).reshape(-1, 2)

    def areas(self, X: np.ndarray) -> np.ndarray:
        a, b = X[self.corner], X[self.after]
        cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
        return 0.5 * np.bincount(self.face, weights=cross, minlength=self.n)

    def centroids(self, X: np.ndarray) -> np.ndarray:
        pts = X[self.corner]
        cx = np.bincount(self.face, weights=pts[:, 0], minlength=self.n)
        cy = np.bincount(self.face, weights=pts[:, 1], minlength=self.n)
        return np.stack([cx, cy], axis=1) / self.size[:, None]


def _relax(G: DartMap, pos, movable: list[int]) -> dict:
    """Barycentric re-solve for ``movable`` with everything else fixed."""
    if not movable:
        return pos
    fixed_pos = dict(pos)
    keep = [v for v in G.first if v not in set(movable)]
    new, _ = tutte_layout(G, keep, fixed_pos)
    return new


def spring_refine(
    layout: Layout, iterations: int, step: float, outer_dart: int | None = None, trace: list | None = None
) -> Layout:
    """Move inner real points towards equal face areas.

    Each face pushes its corners away from (or pulls them towards) its
    centroid in proportion to how far its area is below (or above) the
    average.  A step is kept only if the drawing stays valid, the area
    variance does not grow and the quality score does not drop; otherwise
    the step size is halved.  ``trace`` collects the variance after every
    accepted step.
    """
    if iterations <= 0 or not layout.base_faces:
        return layout
    G = layout.graph
    od = outer_dart if outer_dart is not None else _outer_dart(layout)
    fixed = set(layout.outer)
    movable = [v for v in G.first if v not in fixed and v not in layout.augmentation]
    if not movable:
        return layout
    faces = layout.base_faces
    pos = dict(layout.positions)
    total = abs(_signed_area(layout.array(layout.outer)))
    target = total / len(faces)
    fx = _FaceIndex(faces)
    free = np.array([v not in fixed and v not in layout.augmentation for v in fx.verts])
    X = fx.coords(pos)
    var = float(np.var(fx.areas(X)))
    if trace is not None:
        trace.append(var)
    h = step
    aug = sorted(layout.augmentation)
    measure = _QualityFrame(layout)
    score = measure(pos).score
    for _ in range(iterations):
        if h < 1e-6:
            break
        force = np.clip((target - fx.areas(X)) / target, -1.0, 1.0)
        cent = fx.centroids(X)
        disp = np.zeros_like(X)
        np.add.at(disp, fx.corner, force[fx.face, None] * (X[fx.corner] - cent[fx.face]))
        disp[~free] = 0.0
        trial = dict(pos)
        for i in np.flatnonzero(free):
            v = fx.verts[i]
            trial[v] = (X[i, 0] + h * disp[i, 0], X[i, 1] + h * disp[i, 1])
        trial = _relax(G, trial, aug)
        if not is_valid(G, od, trial):
            h /= 2
            continue
        TX = fx.coords(trial)
        nvar = float(np.var(fx.areas(TX)))
        if nvar > var:
            h /= 2
            continue
        nscore = measure(trial).score
        if nscore < score:
            h /= 2
            continue
        pos, X, var, score = trial, TX, nvar, nscore
        if trace is not None:
            trace.append(var)
    out = Layout(**{**layout.__dict__, "positions": pos})
    return out


def _outer_dart(layout: Layout) -> int:
    G = layout.graph
    a, b = layout.outer[0], layout.outer[1]
    for d in G.rotation(a):
        if G.tail[d ^ 1] == b:
            return d
    raise LayoutError("outer boundary is not a walk")


# -- quality ----------------------------------------------------------------------


def _distance_matrix(P: np.ndarray, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Distances from every point in ``P`` to every segment ``A[j]B[j]``."""
    ab = B - A
    den = np.einsum("ij,ij->i", ab, ab)
    safe = np.where(den > 0, den, 1.0)
    ap = P[:, None, :] - A[None, :, :]
    t = np.clip(np.einsum("ijk,jk->ij", ap, ab) / safe, 0.0, 1.0)
    t = np.where(den > 0, t, 0.0)
    proj = A[None, :, :] + t[:, :, None] * ab[None, :, :]
    return np.hypot(P[:, None, 0] - proj[:, :, 0], P[:, None, 1] - proj[:, :, 1])


class _QualityFrame:
    """Index arrays for repeated quality evaluations of one drawing."""

    def __init__(self, layout: Layout):
        self.pts = layout.real_points()
        segs = layout.segments()
        self.seg_a = [a for _, a, _ in segs]
        self.seg_b = [b for _, _, b in segs]
        ends = [(layout.edge_paths[k][0], layout.edge_paths[k][-1]) for k, _, _ in segs]
        self.foreign = np.array([[v not in e for e in ends] for v in self.pts], dtype=bool).reshape(len(self.pts), len(segs))
        self.radius = layout.radius

    def __call__(self, pos) -> DrawingQuality:
        P = np.array([pos[v] for v in self.pts], dtype=float).reshape(-1, 2)
        vv = math.inf
        if len(self.pts) >= 2:
            d = np.hypot(P[:, None, 0] - P[None, :, 0], P[:, None, 1] - P[None, :, 1])
            np.fill_diagonal(d, np.inf)
            vv = float(d.min())
        ve = math.inf
        if self.foreign.any():
            A = np.array([pos[v] for v in self.seg_a], dtype=float)
            B = np.array([pos[v] for v in self.seg_b], dtype=float)
            D = _distance_matrix(P, A, B)
            ve = float(D[self.foreign].min())
        return DrawingQuality(vv, ve, min(vv, ve) / self.radius)


def quality(layout: Layout, plane_map=None) -> DrawingQuality:
    """Smallest distance between drawn points and from points to foreign edges.

    Points are the original vertices and crossing points; an edge is foreign
    to a point unless the point is one of its two end points.  The score is
    the smaller of both minima divided by the radius of the outer curve.
    """
    return _QualityFrame(layout)(layout.positions)


def quality_threshold(layout: Layout, spec: DrawSpec | None = None) -> float:
    if spec is not None and spec.quality_threshold is not None:
        return spec.quality_threshold
    n = max(len(layout.real_points()), 1)
    return 0.3 / math.sqrt(n)


# -- boundary placement ------------------------------------------------------------


def _circle_positions(outer: list[int], start: float = math.pi / 2) -> dict[int, tuple[float, float]]:
    n = len(outer)
    # outer faces run clockwise
    return {v: (math.cos(start - 2 * math.pi * i / n), math.sin(start - 2 * math.pi * i / n)) for i, v in enumerate(outer)}


def sagitta_for(n_sides: int, requested: float) -> float:
    """Largest bulge (as a fraction of the side length) keeping the region convex."""
    return min(requested, 0.9 * math.tan(math.pi / n_sides) / 4)


def quad_point(a, c, b, t: float) -> tuple[float, float]:
    s = 1 - t
    return (s * s * a[0] + 2 * s * t * c[0] + t * t * b[0], s * s * a[1] + 2 * s * t * c[1] + t * t * b[1])


def _spaced_on_side(a, b, control, m: int) -> list[tuple[float, float]]:
    """``m - 1`` interior points at equal arc length between ``a`` and ``b``."""
    if m <= 1:
        return []
    if control is None:
        return [(a[0] + (b[0] - a[0]) * j / m, a[1] + (b[1] - a[1]) * j / m) for j in range(1, m)]
    ts = np.linspace(0.0, 1.0, 2001)
    curve = np.array([quad_point(a, control, b, t) for t in ts])
    seg = np.hypot(*np.diff(curve, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    targets = cum[-1] * np.arange(1, m) / m
    tt = np.interp(targets, cum, ts)
    return [quad_point(a, control, b, t) for t in tt]


def _polygon_positions(outer: list[int], corners: list[int], straight: bool, sagitta: float):
    n = len(corners)
    start = math.pi / 2 + math.pi / n
    corner_pos = {c: (math.cos(start - 2 * math.pi * i / n), math.sin(start - 2 * math.pi * i / n)) for i, c in enumerate(corners)}
    sag = sagitta_for(n, sagitta)
    i0 = outer.index(corners[0])
    walk = outer[i0:] + outer[:i0]
    cset = set(corners)
    pos = dict(corner_pos)
    sides = []
    cur = [walk[0]]
    for v in walk[1:] + [walk[0]]:
        cur.append(v)
        if v in cset:
            a, b = corner_pos[cur[0]], corner_pos[cur[-1]]
            control = None
            if not straight:
                mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
                norm = math.hypot(mx, my)
                L = math.hypot(b[0] - a[0], b[1] - a[1])
                h = 2 * sag * L
                control = (mx + h * mx / norm, my + h * my / norm)
            for w, p in zip(cur[1:-1], _spaced_on_side(a, b, control, len(cur) - 1)):
                pos[w] = p
            sides.append(SideGeometry(a, b, control, list(cur)))
            cur = [v]
    return pos, sides, [corner_pos[c] for c in corners]


# -- pipeline -----------------------------------------------------------------------


def _choose_outer(W: DartMap, exclude_darts: set[int], min_size: int = 3) -> int | None:
    faces, _ = W.faces()
    best = None
    for f in faces:
        if any(d in exclude_darts for d in f):
            continue
        if len(f) < 3 or len(f) < min_size or not _is_simple_face(W, f):
            continue
        if best is None or len(f) > len(best):
            best = f
    return None if best is None else best[0]


def _tiny_layout(P: DartMap, roles) -> Layout:
    vs = list(P.first)
    pos = {}
    if len(vs) == 1:
        pos[vs[0]] = (0.0, 0.0)
    else:
        for i, v in enumerate(vs):
            ang = math.pi - 2 * math.pi * i / len(vs)
            pos[v] = (0.5 * math.cos(ang), 0.5 * math.sin(ang))
    W, roles2, paths = _simplify(P, roles)
    if set(W.first) != set(vs):
        raise LayoutError("unexpected bends in a tiny map")
    return Layout(pos, [], roles2, W, [], paths)


def _finish(W, roles, paths, od, outer_pos, spec: DrawSpec, sides=(), polygon=None, hole_darts=()) -> Layout:
    outer = _walk_vertices(W, W.face_darts(od))
    base_faces = _inner_faces(W, od)
    aug = augment_to_3connected(W, od)
    for v in aug.added:
        roles[v] = AUGMENTATION_VERTEX
    G = aug.graph
    pos, _ = tutte_layout(G, outer, outer_pos)
    if not is_valid(G, od, pos):
        raise LayoutError("barycentric drawing is degenerate")
    lay = Layout(
        positions=pos,
        outer_polygon=polygon if polygon is not None else [outer_pos[v] for v in outer],
        point_roles=roles,
        graph=G,
        outer=outer,
        edge_paths=paths,
        augmentation=aug.added,
        base_faces=base_faces,
        sides=list(sides),
    )
    lay = spring_refine(lay, spec.spring_iterations, spec.spring_step, od)
    lay.quality = quality(lay)
    return lay


def layout_cutmap(cm, spec: DrawSpec | None = None) -> Layout:
    """Coordinates for a :class:`~surfdraw.cycles.CutMap`."""
    from .cycles import FUNDAMENTAL

    spec = spec or DrawSpec()
    P = cm.plane
    roles = {pv: cm.role(pv) for pv in P.first}
    if len(P.first) <= 2 and P.num_edges <= 1:
        return _tiny_layout(P, roles)
    W, roles, paths = _simplify(P, roles)
    if cm.mode == FUNDAMENTAL:
        od = cm.outer_face[0]
        outer = _walk_vertices(W, W.face_darts(od))
        corners = [v for v in outer if roles[v] == POLYGON_CORNER]
        outer_pos, sides, polygon = _polygon_positions(outer, corners, spec.straight_sides, spec.sagitta)
        return _finish(W, roles, paths, od, outer_pos, spec, sides, polygon)
    hole_darts = {d for h in cm.holes for d in h}
    od, W, roles = _outer_or_frame(W, roles, hole_darts, cm)
    outer = _walk_vertices(W, W.face_darts(od))
    return _finish(W, roles, paths, od, _circle_positions(outer), spec)


def _outer_or_frame(W: DartMap, roles, exclude: set[int], cm=None):
    min_size = 3
    if cm is not None:
        sizes = [len(f) for f in cm.plane.faces()[0]]
        biggest = max((len(f) for f in cm.plane.faces()[0] if not any(d in exclude for d in f)), default=3)
        min_size = max(3, biggest - 1) if sizes else 3
    od = _choose_outer(W, exclude, min_size)
    if od is None:
        od = _choose_outer(W, exclude)
    if od is None:
        od = _choose_outer(W, set())
    if od is None:
        faces, _ = W.faces()
        cand = [f for f in faces if not any(d in exclude for d in f)] or faces
        big = max(cand, key=len)
        ring, inner = _ring(W, big, max(W.first) + 1)
        for r in ring:
            roles[r] = AUGMENTATION_VERTEX
        od = inner
    return od, W, roles


def layout_plane(cmap: CombinatorialMap, spec: DrawSpec | None = None, outer_hint: int | None = None) -> Layout:
    """Plain drawing of a genus 0 map."""
    spec = spec or DrawSpec()
    P, _ = DartMap.from_cmap(cmap)
    roles = {v: ORIGINAL_VERTEX for v in P.first}
    if len(P.first) <= 2 and P.num_edges <= 1:
        return _tiny_layout(P, roles)
    W, roles, paths = _simplify(P, roles)
    if outer_hint is not None and _is_simple_face(W, W.face_darts(outer_hint)) and len(W.face_darts(outer_hint)) >= 3:
        od = outer_hint
    else:
        od, W, roles = _outer_or_frame(W, roles, set())
    outer = _walk_vertices(W, W.face_darts(od))
    return _finish(W, roles, paths, od, _circle_positions(outer), spec)


def pick_infinite_vertex(cmap: CombinatorialMap) -> int:
    degs = [cmap.degree(v) for v in range(1, cmap.vertex_count + 1)]
    return degs.index(max(degs)) + 1


def layout_vertex_at_infinity(cmap: CombinatorialMap, infinite_vertex: int | None = None, spec: DrawSpec | None = None) -> Layout:
    """Drop one vertex; its neighbours bound the outer face and get rays."""
    from .mapcore import genus

    if genus(cmap).genus != 0:
        raise LayoutError("a vertex at infinity is only possible for plane maps")
    v = infinite_vertex if infinite_vertex is not None else pick_infinite_vertex(cmap)
    if not 1 <= v <= cmap.vertex_count:
        raise LayoutError(f"no vertex {v}")
    if cmap.vertex_count < 2:
        raise LayoutError("nothing left after removing the only vertex")
    spec = spec or DrawSpec()
    P, _ = DartMap.from_cmap(cmap)
    vdarts = P.rotation(v)
    for k in sorted({d >> 1 for d in vdarts}):
        P.remove_edge(k)
    del P.first[v]
    if len(P.components()) != 1:
        raise LayoutError(f"removing vertex {v} disconnects the map")
    roles = {w: ORIGINAL_VERTEX for w in P.first}
    if len(P.first) <= 2 and sum(1 for d in range(0, P.num_darts, 2) if P.tail[d] >= 0) <= 1:
        lay = _tiny_layout(P, roles)
    else:
        W, roles, paths = _simplify(P, roles)
        od = _merged_face(W, {w for w in cmap.rotations[v - 1] if w != v})
        if od is None or not _is_simple_face(W, W.face_darts(od)) or len(W.face_darts(od)) < 3:
            od, W, roles = _outer_or_frame(W, roles, set())
        outer = _walk_vertices(W, W.face_darts(od))
        lay = _finish(W, roles, paths, od, _circle_positions(outer), spec)
    rays = []
    counts: dict[int, int] = defaultdict(int)
    for w in [cmap.rotations[v - 1][i] for i in range(cmap.degree(v))]:
        if w == v:
            continue
        counts[w] += 1
    for w, c in sorted(counts.items()):
        x, y = lay.positions[w]
        base = math.atan2(y, x) if (x, y) != (0.0, 0.0) else math.pi / 2
        for j in range(c):
            ang = base + (j - (c - 1) / 2) * 0.25
            rays.append(Ray(w, (math.cos(ang), math.sin(ang)), v))
    lay.rays = rays
    return lay


def _merged_face(W: DartMap, nbrs: set[int]) -> int | None:
    """Face of ``W`` containing every former neighbour of the removed vertex."""
    faces, _ = W.faces()
    best = None
    for f in faces:
        vs = set(_walk_vertices(W, f))
        if nbrs <= vs and (best is None or len(f) > len(best)):
            best = f
    return None if best is None else best[0]
