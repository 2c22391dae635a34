"""Reading and writing maps in planarcode.

A map with ``n`` vertices is coded as ``n`` followed by, for every vertex
``1..n``, its neighbours in clockwise rotational order, each list closed by
a ``0``.  The binary flavour stores every value as one unsigned byte; for
``n > 255`` the record starts with a ``0`` byte and all values (including
``n``) are 2-byte little-endian words.  The ASCII flavour is the same record
structure written as whitespace separated decimals.
"""

from __future__ import annotations

import struct
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

HEADER = b">>planar_code<<"

BINARY = "binary"
ASCII = "ascii"


class PlanarCodeError(ValueError):
    """Raised for streams that cannot be decoded into valid maps."""


@dataclass(frozen=True)
class CombinatorialMap:
    """A connected graph with a clockwise rotation system.

    ``rotations[v - 1]`` lists the neighbours of vertex ``v`` in clockwise
    order.  Parallel edges and loops are allowed; a loop at ``v`` contributes
    two entries to ``rotations[v - 1]``.

    ``mates`` optionally fixes which occurrence of ``w`` in the rotation of
    ``v`` is the reverse of which occurrence of ``v`` in the rotation of
    ``w``.  It maps ``(v, i)`` (1-based vertex, 0-based position) to
    ``(w, j)``.  When it is ``None`` the pairing follows the rule of
    :func:`occurrence_pairing`.
    """

    rotations: tuple[tuple[int, ...], ...]
    mates: tuple[tuple[tuple[int, int], tuple[int, int]], ...] | None = field(
        default=None, compare=False, repr=False
    )

    @classmethod
    def from_lists(cls, rotations: Iterable[Iterable[int]]) -> "CombinatorialMap":
        return cls(tuple(tuple(int(x) for x in r) for r in rotations))

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.rotations[v - 1]

    def degree(self, v: int) -> int:
        return len(self.rotations[v - 1])

    def pairing(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Reverse-occurrence matching; raises :class:`PlanarCodeError` if impossible."""
        if self.mates is not None:
            return dict(self.mates)
        pairs, problems = occurrence_pairing(self.rotations)
        if problems:
            raise PlanarCodeError(problems[0].message)
        return pairs

    def __eq__(self, other):
        if not isinstance(other, CombinatorialMap):
            return NotImplemented
        if self.rotations != other.rotations:
            return False
        if self.mates is None and other.mates is None:
            return True
        try:
            return self.pairing() == other.pairing()
        except PlanarCodeError:
            return False

    def __hash__(self):
        return hash(self.rotations)


@dataclass
class MapStream:
    maps: list[CombinatorialMap]
    source_format: str = BINARY

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __getitem__(self, k):
        return self.maps[k]


@dataclass(frozen=True)
class Violation:
    kind: str  # "range", "pairing", "disconnected", "empty"
    vertex: int | None
    position: int | None
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __len__(self):
        return len(self.violations)

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def occurrence_pairing(rotations):
    """Match every rotation entry with its reverse occurrence.

    Loop ends at ``v`` are paired in rotation order (1st with 2nd, 3rd with
    4th, ...).  For ``k`` parallel edges between ``v < w`` the ``i``-th
    occurrence of ``w`` around ``v`` is matched with the ``(k-1-i)``-th
    occurrence of ``v`` around ``w``, which is what a plane bundle of
    parallel edges looks like.
    """
    n = len(rotations)
    pairs: dict[tuple[int, int], tuple[int, int]] = {}
    problems: list[Violation] = []
    occ: dict[tuple[int, int], list[int]] = {}
    for v, rot in enumerate(rotations, start=1):
        for i, w in enumerate(rot):
            if not 1 <= w <= n:
                problems.append(Violation("range", v, i, f"vertex {v} lists neighbour {w} outside 1..{n}"))
                continue
            occ.setdefault((v, w), []).append(i)
    for (v, w), mine in occ.items():
        if v == w:
            if len(mine) % 2:
                problems.append(Violation("pairing", v, mine[-1], f"vertex {v} has an odd number of loop entries"))
                continue
            for a, b in zip(mine[0::2], mine[1::2]):
                pairs[(v, a)] = (v, b)
                pairs[(v, b)] = (v, a)
            continue
        if v > w:
            continue
        theirs = occ.get((w, v), [])
        if len(theirs) != len(mine):
            problems.append(
                Violation(
                    "pairing",
                    v,
                    mine[0],
                    f"vertex {v} lists {w} {len(mine)} time(s) but vertex {w} lists {v} {len(theirs)} time(s)",
                )
            )
            continue
        k = len(mine)
        for i, a in enumerate(mine):
            b = theirs[k - 1 - i]
            pairs[(v, a)] = (w, b)
            pairs[(w, b)] = (v, a)
    for (w, v), theirs in occ.items():
        if w > v and (v, w) not in occ and v != w:
            problems.append(
                Violation("pairing", w, theirs[0], f"vertex {w} lists {v} but vertex {v} does not list {w}")
            )
    return pairs, problems


def validate(cmap: CombinatorialMap) -> ValidationReport:
    """Collect every invariant violation of ``cmap``; an empty report means valid."""
    report = ValidationReport()
    if cmap.vertex_count == 0:
        report.violations.append(Violation("empty", None, None, "map has no vertices"))
        return report
    if cmap.mates is None:
        _, problems = occurrence_pairing(cmap.rotations)
        report.violations.extend(problems)
    if report.violations:
        return report
    # connectivity
    seen = {1}
    todo = deque([1])
    while todo:
        v = todo.popleft()
        for w in cmap.rotations[v - 1]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) != cmap.vertex_count:
        missing = min(set(range(1, cmap.vertex_count + 1)) - seen)
        report.violations.append(
            Violation("disconnected", missing, None, f"vertex {missing} is not reachable from vertex 1")
        )
    return report


def _check_structure(cmap: CombinatorialMap, ordinal: int) -> None:
    _, problems = occurrence_pairing(cmap.rotations)
    if problems:
        raise PlanarCodeError(f"map {ordinal}: {problems[0].message}")


# -- decoding ---------------------------------------------------------------


def iter_binary(data: bytes) -> Iterator[CombinatorialMap]:
    """Decode binary planarcode lazily, one map at a time."""
    pos = len(HEADER) if data.startswith(HEADER) else 0
    ordinal = 0
    size = len(data)
    while pos < size:
        ordinal += 1
        wide = data[pos] == 0
        if wide:
            pos += 1

        def read() -> int:
            nonlocal pos
            if wide:
                if pos + 2 > size:
                    raise PlanarCodeError(f"map {ordinal}: truncated stream")
                (val,) = struct.unpack_from("<H", data, pos)
                pos += 2
            else:
                if pos >= size:
                    raise PlanarCodeError(f"map {ordinal}: truncated stream")
                val = data[pos]
                pos += 1
            return val

        n = read()
        if n == 0:
            raise PlanarCodeError(f"map {ordinal}: zero vertex count")
        rotations = []
        for v in range(1, n + 1):
            rot = []
            while True:
                w = read()
                if w == 0:
                    break
                if w > n:
                    raise PlanarCodeError(f"map {ordinal}: vertex {v} lists neighbour {w} outside 1..{n}")
                rot.append(w)
            rotations.append(tuple(rot))
        cmap = CombinatorialMap(tuple(rotations))
        _check_structure(cmap, ordinal)
        yield cmap


def iter_ascii(text: str | bytes) -> Iterator[CombinatorialMap]:
    """Decode ASCII planarcode lazily."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    tokens = text.split()
    pos = 0
    ordinal = 0

    def read() -> int:
        nonlocal pos
        if pos >= len(tokens):
            raise PlanarCodeError(f"map {ordinal}: truncated stream")
        tok = tokens[pos]
        pos += 1
        try:
            val = int(tok)
        except ValueError:
            raise PlanarCodeError(f"map {ordinal}: non-integer token {tok!r}") from None
        if val < 0:
            raise PlanarCodeError(f"map {ordinal}: negative value {val}")
        return val

    while pos < len(tokens):
        ordinal += 1
        n = read()
        if n == 0:
            raise PlanarCodeError(f"map {ordinal}: zero vertex count")
        rotations = []
        for v in range(1, n + 1):
            rot = []
            while True:
                w = read()
                if w == 0:
                    break
                if w > n:
                    raise PlanarCodeError(f"map {ordinal}: vertex {v} lists neighbour {w} outside 1..{n}")
                rot.append(w)
            rotations.append(tuple(rot))
        cmap = CombinatorialMap(tuple(rotations))
        _check_structure(cmap, ordinal)
        yield cmap


def parse_binary(data: bytes) -> MapStream:
    return MapStream(list(iter_binary(data)), BINARY)


def parse_ascii(text: str | bytes) -> MapStream:
    return MapStream(list(iter_ascii(text)), ASCII)


def looks_ascii(data: bytes) -> bool:
    """Heuristic used when the input format is not forced."""
    if data.startswith(HEADER):
        return False
    return all(c in b"0123456789 \t\r\n" for c in data[:4096])


# -- encoding ---------------------------------------------------------------


def _record_values(cmap: CombinatorialMap) -> list[int]:
    values = [cmap.vertex_count]
    for rot in cmap.rotations:
        values.extend(rot)
        values.append(0)
    return values


def write_planarcode(stream: MapStream | Iterable[CombinatorialMap], format: str = BINARY) -> bytes:
    maps = stream.maps if isinstance(stream, MapStream) else list(stream)
    if format == ASCII:
        lines = [" ".join(str(x) for x in _record_values(m)) for m in maps]
        return ("\n".join(lines) + ("\n" if lines else "")).encode("ascii")
    if format != BINARY:
        raise ValueError(f"unknown planarcode format {format!r}")
    out = bytearray(HEADER)
    for m in maps:
        values = _record_values(m)
        if m.vertex_count > 255:
            out.append(0)
            for val in values:
                out += struct.pack("<H", val)
        else:
            out += bytes(values)
    return bytes(out)
