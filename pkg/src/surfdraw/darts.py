"""Mutable dart-level rotation systems.

Edge ``k`` owns the darts ``2k`` and ``2k + 1`` (so the reverse of dart
``d`` is ``d ^ 1``).  Around every vertex the darts form a cyclic
doubly linked list in clockwise order.  The face successor of a dart
``[v, x]`` is the clockwise successor of ``[x, v]`` around ``x``; every
face therefore lies on the left of its darts, interior faces of a plane
drawing run counter-clockwise and the outer face runs clockwise.

An *angle* is a pair ``(v, d)`` naming the gap between dart ``d`` and its
clockwise successor around ``v``.  It belongs to the face of ``d ^ 1``.
``(v, None)`` is the unique angle of an isolated vertex.
"""

from __future__ import annotations

from .codec import CombinatorialMap


class DartMap:
    __slots__ = ("tail", "nxt", "prv", "first")

    def __init__(self):
        self.tail: list[int] = []
        self.nxt: list[int] = []
        self.prv: list[int] = []
        self.first: dict[int, int | None] = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_cmap(cls, cmap: CombinatorialMap) -> tuple["DartMap", dict[tuple[int, int], int]]:
        """Build from a planarcode-level map.

        Returns the dart map and the mapping ``(v, i) -> dart`` for the
        ``i``-th rotation entry of vertex ``v``.  Darts are numbered by first
        occurrence in vertex order, so the result is deterministic.
        """
        pairs = cmap.pairing()
        dm = cls()
        index: dict[tuple[int, int], int] = {}
        ndarts = 2 * cmap.edge_count
        dm.tail = [0] * ndarts
        nxt_dart = 0
        for v, rot in enumerate(cmap.rotations, start=1):
            for i in range(len(rot)):
                if (v, i) in index:
                    continue
                w, j = pairs[(v, i)]
                index[(v, i)] = nxt_dart
                index[(w, j)] = nxt_dart + 1
                nxt_dart += 2
        dm.nxt = [0] * ndarts
        dm.prv = [0] * ndarts
        for v, rot in enumerate(cmap.rotations, start=1):
            ds = [index[(v, i)] for i in range(len(rot))]
            for d in ds:
                dm.tail[d] = v
            dm.first[v] = ds[0] if ds else None
            k = len(ds)
            for a in range(k):
                dm.nxt[ds[a]] = ds[(a + 1) % k]
                dm.prv[ds[a]] = ds[a - 1]
        return dm, index

    def copy(self) -> "DartMap":
        dm = DartMap.__new__(DartMap)
        dm.tail = self.tail.copy()
        dm.nxt = self.nxt.copy()
        dm.prv = self.prv.copy()
        dm.first = self.first.copy()
        return dm

    # -- queries ------------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return len(self.tail)

    @property
    def num_edges(self) -> int:
        return len(self.tail) // 2

    @property
    def vertices(self) -> list[int]:
        return list(self.first)

    def head(self, d: int) -> int:
        return self.tail[d ^ 1]

    def rotation(self, v: int) -> list[int]:
        d0 = self.first[v]
        if d0 is None:
            return []
        out = [d0]
        d = self.nxt[d0]
        while d != d0:
            out.append(d)
            d = self.nxt[d]
        return out

    def degree(self, v: int) -> int:
        return len(self.rotation(v))

    def succ(self, d: int) -> int:
        """Face successor."""
        return self.nxt[d ^ 1]

    def face_of_angle(self, angle: tuple[int, int | None]) -> int | None:
        v, d = angle
        return None if d is None else d ^ 1

    def faces(self) -> tuple[list[list[int]], list[int]]:
        """All faces as dart cycles plus the dart -> face index array."""
        n = len(self.tail)
        face_of = [-1] * n
        faces: list[list[int]] = []
        nxt = self.nxt
        tail = self.tail
        for d0 in range(n):
            if face_of[d0] >= 0 or tail[d0] < 0:
                continue
            fid = len(faces)
            cyc = []
            d = d0
            while face_of[d] < 0:
                face_of[d] = fid
                cyc.append(d)
                d = nxt[d ^ 1]
            faces.append(cyc)
        return faces, face_of

    def face_darts(self, d0: int) -> list[int]:
        out = [d0]
        d = self.nxt[d0 ^ 1]
        while d != d0:
            out.append(d)
            d = self.nxt[d ^ 1]
        return out

    def euler(self) -> tuple[int, int, int]:
        faces, _ = self.faces()
        nf = len(faces) + sum(1 for v, d in self.first.items() if d is None)
        ne = sum(1 for d in range(0, len(self.tail), 2) if self.tail[d] >= 0)
        return len(self.first), ne, nf

    def components(self) -> list[set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.first}
        for d in range(0, len(self.tail), 2):
            a, b = self.tail[d], self.tail[d + 1]
            if a < 0:
                continue
            adj[a].add(b)
            adj[b].add(a)
        seen: set[int] = set()
        comps = []
        for v in self.first:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def genus(self) -> int:
        v, e, f = self.euler()
        chi = v - e + f
        ncomp = len(self.components())
        if (2 * ncomp - chi) % 2:
            raise ValueError("odd Euler characteristic")
        return (2 * ncomp - chi) // 2

    # -- mutation -----------------------------------------------------------

    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = max(self.first, default=0) + 1
        if v in self.first:
            raise ValueError(f"vertex {v} exists")
        self.first[v] = None
        return v

    def _insert_after(self, d: int, v: int, after: int | None) -> None:
        self.tail[d] = v
        if after is None:
            if self.first[v] is not None:
                raise ValueError(f"vertex {v} is not isolated; an angle dart is required")
            self.first[v] = d
            self.nxt[d] = d
            self.prv[d] = d
            return
        if self.tail[after] != v:
            raise ValueError(f"dart {after} does not start at vertex {v}")
        n = self.nxt[after]
        self.nxt[after] = d
        self.prv[d] = after
        self.nxt[d] = n
        self.prv[n] = d

    def add_edge(self, u: int, after_u: int | None, v: int, after_v: int | None) -> int:
        """Insert an edge from angle ``(u, after_u)`` to angle ``(v, after_v)``.

        Returns the edge id; dart ``2k`` leaves ``u``.
        """
        k = len(self.tail) // 2
        self.tail.extend((u, v))
        self.nxt.extend((0, 0))
        self.prv.extend((0, 0))
        self._insert_after(2 * k, u, after_u)
        if u == v and after_v is None:
            after_v = 2 * k
        self._insert_after(2 * k + 1, v, after_v)
        return k

    def subdivide(self, y: int, x: int | None = None) -> tuple[int, int]:
        """Put a new vertex ``x`` on the edge of dart ``y``.

        Afterwards ``y`` runs from its old tail to ``x``, ``y ^ 1`` leaves
        ``x`` back towards that tail, and the new dart ``z`` continues from
        ``x`` to the old head; ``z ^ 1`` replaces ``y ^ 1`` around the old
        head.  Returns ``(x, z)``.  The face of ``y`` passes ``x`` at angle
        ``(x, y ^ 1)``, the other face at angle ``(x, z)``.
        """
        x = self.add_vertex(x)
        w = self.tail[y ^ 1]
        k = len(self.tail) // 2
        z, zr = 2 * k, 2 * k + 1
        self.tail.extend((x, w))
        self.nxt.extend((0, 0))
        self.prv.extend((0, 0))
        old = y ^ 1
        # zr takes the place of old around w
        if self.nxt[old] == old:
            self.nxt[zr] = zr
            self.prv[zr] = zr
        else:
            p, n = self.prv[old], self.nxt[old]
            self.nxt[p] = zr
            self.prv[zr] = p
            self.nxt[zr] = n
            self.prv[n] = zr
        if self.first[w] == old:
            self.first[w] = zr
        # x has rotation [old, z]
        self.tail[old] = x
        self.nxt[old] = z
        self.prv[old] = z
        self.nxt[z] = old
        self.prv[z] = old
        self.first[x] = old
        return x, z

    def remove_edge(self, k: int) -> None:
        """Detach edge ``k`` from the rotations (dart ids are not reused)."""
        for d in (2 * k, 2 * k + 1):
            v = self.tail[d]
            if self.nxt[d] == d:
                self.first[v] = None
            else:
                p, n = self.prv[d], self.nxt[d]
                self.nxt[p] = n
                self.prv[n] = p
                if self.first[v] == d:
                    self.first[v] = n
            self.nxt[d] = self.prv[d] = -1
            self.tail[d] = -1

    def live_darts(self) -> list[int]:
        return [d for d in range(len(self.tail)) if self.tail[d] >= 0]

    # -- conversion --------------------------------------------------------

    def to_cmap(self) -> tuple[CombinatorialMap, dict[int, int]]:
        """Planarcode-level copy with vertices renumbered 1..n in vertex order.

        The explicit occurrence pairing is kept in ``mates``.  Returns the
        map and the old -> new vertex numbering.
        """
        verts = list(self.first)
        num = {v: i + 1 for i, v in enumerate(verts)}
        pos: dict[int, tuple[int, int]] = {}
        rotations = []
        for v in verts:
            rot = self.rotation(v)
            for i, d in enumerate(rot):
                pos[d] = (num[v], i)
            rotations.append(tuple(num[self.tail[d ^ 1]] for d in rot))
        mates = tuple((pos[d], pos[d ^ 1]) for d in sorted(pos))
        return CombinatorialMap(tuple(rotations), mates), num
