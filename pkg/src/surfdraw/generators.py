"""Small map families used by the tests and demos."""

from __future__ import annotations

import itertools
import random

from .codec import CombinatorialMap, validate
from .darts import DartMap
from .mapcore import genus

# the K_{3,3} code used throughout the original description of the format
K33_CODE = "6 4 5 6 0 4 6 5 0 4 5 6 0 1 3 2 0 1 2 3 0 1 3 2 0"


def k33_torus() -> CombinatorialMap:
    return CombinatorialMap.from_lists(_lists_from_code(K33_CODE))


def _lists_from_code(code: str) -> list[list[int]]:
    vals = [int(x) for x in code.split()]
    n, pos, out = vals[0], 1, []
    for _ in range(n):
        rot = []
        while vals[pos]:
            rot.append(vals[pos])
            pos += 1
        pos += 1
        out.append(rot)
    return out


def _embed_with_genus(adj: dict[int, list[int]], target: int) -> CombinatorialMap:
    """First rotation system (in lexicographic search order) of the given genus."""
    verts = sorted(adj)
    choices = []
    for v in verts:
        first, *rest = adj[v]
        choices.append([[first, *p] for p in itertools.permutations(rest)])
    for combo in itertools.product(*choices):
        cmap = CombinatorialMap.from_lists(combo)
        if genus(cmap).genus == target:
            return cmap
    raise ValueError(f"no embedding of genus {target}")


def k4_torus() -> CombinatorialMap:
    adj = {v: [w for w in range(1, 5) if w != v] for v in range(1, 5)}
    return _embed_with_genus(adj, 1)


def k34_torus() -> CombinatorialMap:
    """K_{3,4} on the torus; vertices 1-3 form one side, 4-7 the other."""
    adj = {v: [4, 5, 6, 7] for v in (1, 2, 3)}
    adj.update({v: [1, 2, 3] for v in (4, 5, 6, 7)})
    return _embed_with_genus(adj, 1)


def torus_grid(m: int, n: int) -> CombinatorialMap:
    """The m x n grid with wrap-around, rotation right, down, left, up."""
    if m < 3 or n < 3:
        raise ValueError("torus grids need m, n >= 3")

    def vid(i, j):
        return (i % m) * n + (j % n) + 1

    rots = [[vid(i, j + 1), vid(i + 1, j), vid(i, j - 1), vid(i - 1, j)] for i in range(m) for j in range(n)]
    return CombinatorialMap.from_lists(rots)


def torus_triangulation(m: int, n: int) -> CombinatorialMap:
    """Torus grid with one diagonal per square, a 6-regular triangulation."""
    if m < 3 or n < 3:
        raise ValueError("torus triangulations need m, n >= 3")

    def vid(i, j):
        return (i % m) * n + (j % n) + 1

    rots = [
        [vid(i, j + 1), vid(i + 1, j + 1), vid(i + 1, j), vid(i, j - 1), vid(i - 1, j - 1), vid(i - 1, j)]
        for i in range(m)
        for j in range(n)
    ]
    return CombinatorialMap.from_lists(rots)


def random_torus_triangulation(rng: random.Random, extra: int, m: int = 3, n: int = 3) -> CombinatorialMap:
    """A torus grid triangulation with ``extra`` vertices stacked into random faces."""
    dm, _ = DartMap.from_cmap(torus_triangulation(m, n))
    for v in range(m * n + 1, m * n + extra + 1):
        faces, _ = dm.faces()
        cyc = faces[rng.randrange(len(faces))]
        _stack(dm, cyc, v)
    cmap, _ = dm.to_cmap()
    return CombinatorialMap(cmap.rotations)


def _stack(dm: DartMap, cyc: list[int], v: int) -> None:
    dm.add_vertex(v)
    prev = None
    for d in reversed(cyc):
        k = dm.add_edge(v, prev, dm.tail[d], dm.prv[d])
        prev = 2 * k


def plane_triangulation(n: int, rng: random.Random) -> CombinatorialMap:
    """Triangle repeatedly subdivided by a new vertex in a random inner face."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    dm = DartMap()
    for v in (1, 2, 3):
        dm.add_vertex(v)
    e12 = dm.add_edge(1, None, 2, None)
    e23 = dm.add_edge(2, 2 * e12 + 1, 3, None)
    dm.add_edge(3, 2 * e23 + 1, 1, 2 * e12)
    outer = 1  # dart 2 -> 1 stays on the untouched outer triangle
    for v in range(4, n + 1):
        faces, face_of = dm.faces()
        inner = [f for f in range(len(faces)) if face_of[outer] != f]
        cyc = faces[rng.choice(inner)]
        _stack(dm, cyc, v)
    cmap, _ = dm.to_cmap()
    return CombinatorialMap(cmap.rotations)


def random_map(rng: random.Random, n: int, extra: int) -> CombinatorialMap:
    """Random spanning tree plus ``extra`` edges, with random rotations."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for v in range(2, n + 1):
        w = rng.randint(1, v - 1)
        adj[v].append(w)
        adj[w].append(v)
    for _ in range(extra):
        a, b = rng.randint(1, n), rng.randint(1, n)
        if a == b:
            continue
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        rng.shuffle(adj[v])
    cmap = CombinatorialMap.from_lists(adj[v] for v in range(1, n + 1))
    if not validate(cmap).ok:
        raise AssertionError("generator produced an invalid map")
    return cmap


def random_map_of_genus(rng: random.Random, g: int, n_max: int = 40, tries: int = 10000) -> CombinatorialMap:
    """Rejection sampling on :func:`random_map` until the genus is ``g``."""
    for _ in range(tries):
        n = rng.randint(max(3, g + 2), n_max)
        extra = rng.randint(2 * g, 2 * g + n // 2 + 2)
        cmap = random_map(rng, n, extra)
        if genus(cmap).genus == g:
            return cmap
    raise RuntimeError(f"could not sample a genus {g} map")


def cubic_genus3(rng: random.Random | None = None) -> CombinatorialMap:
    """A cubic map with 26 vertices and 9 faces, hence genus 3.

    The graph is a random cubic multigraph-free graph; rotations are flipped
    one vertex at a time until the face count reaches 9.
    """
    rng = rng or random.Random(3)
    while True:
        adj = _random_cubic(rng, 26)
        if adj is None:
            continue
        rots = {v: list(ws) for v, ws in adj.items()}
        best = _face_count(rots)
        for _ in range(4000):
            if best == 9:
                return CombinatorialMap.from_lists(rots[v] for v in range(1, 27))
            v = rng.randint(1, 26)
            rots[v][1], rots[v][2] = rots[v][2], rots[v][1]
            f = _face_count(rots)
            if abs(f - 9) <= abs(best - 9):
                best = f
            else:
                rots[v][1], rots[v][2] = rots[v][2], rots[v][1]


def _face_count(rots) -> int:
    cmap = CombinatorialMap.from_lists(rots[v] for v in range(1, len(rots) + 1))
    return genus(cmap).f


def _random_cubic(rng: random.Random, n: int):
    points = [v for v in range(1, n + 1) for _ in range(3)]
    rng.shuffle(points)
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for a, b in zip(points[0::2], points[1::2]):
        if a == b or b in adj[a]:
            return None
        adj[a].append(b)
        adj[b].append(a)
    cmap = CombinatorialMap.from_lists(adj[v] for v in range(1, n + 1))
    return adj if validate(cmap).ok else None


def high_genus_map(g_min: int = 4, seed: int = 7) -> CombinatorialMap:
    """A K_7 embedding of genus at least ``g_min`` (K_7 admits genus 1..10)."""
    rng = random.Random(seed)
    for _ in range(10000):
        rots = []
        for v in range(1, 8):
            ws = [w for w in range(1, 8) if w != v]
            rng.shuffle(ws)
            rots.append(ws)
        cmap = CombinatorialMap.from_lists(rots)
        if genus(cmap).genus >= g_min:
            return cmap
    raise RuntimeError("no high genus K_7 rotation found")


def double_wheel(k: int) -> CombinatorialMap:
    """Cycle 1..k with two apexes k+1 (top) and k+2 (bottom)."""
    top, bot = k + 1, k + 2
    rots = []
    for i in range(1, k + 1):
        nxt = i % k + 1
        prv = (i - 2) % k + 1
        rots.append([nxt, bot, prv, top])
    rots.append(list(range(k, 0, -1)))
    rots.append(list(range(1, k + 1)))
    cmap = CombinatorialMap.from_lists(rots)
    if genus(cmap).genus != 0:
        raise AssertionError("double wheel is not plane")
    return cmap


def wheel(k: int) -> CombinatorialMap:
    """Cycle 1..k and hub k+1."""
    hub = k + 1
    rots = [[i % k + 1, (i - 2) % k + 1, hub] for i in range(1, k + 1)]
    rots.append(list(range(k, 0, -1)))
    cmap = CombinatorialMap.from_lists(rots)
    if genus(cmap).genus != 0:
        raise AssertionError("wheel is not plane")
    return cmap


def prism(k: int) -> CombinatorialMap:
    """Two k-cycles 1..k and k+1..2k joined by a matching."""
    rots = []
    for i in range(1, k + 1):
        rots.append([i % k + 1, i + k, (i - 2) % k + 1])
    for i in range(1, k + 1):
        rots.append([(i - 2) % k + 1 + k, i, i % k + 1 + k])
    cmap = CombinatorialMap.from_lists(rots)
    if genus(cmap).genus != 0:
        raise AssertionError("prism is not plane")
    return cmap


def triangle() -> CombinatorialMap:
    return CombinatorialMap.from_lists([[2, 3], [3, 1], [1, 2]])


def k4_plane() -> CombinatorialMap:
    return CombinatorialMap.from_lists([[2, 3, 4], [1, 4, 3], [1, 2, 4], [1, 3, 2]])


def cube() -> CombinatorialMap:
    rots = [[2, 4, 5], [1, 6, 3], [2, 7, 4], [3, 8, 1], [1, 8, 6], [2, 5, 7], [3, 6, 8], [4, 7, 5]]
    return CombinatorialMap.from_lists(rots)
