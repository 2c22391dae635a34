"""Writing finished layouts as tikz pictures."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .layout import (
    CROSSING_POINT,
    ORIGINAL_VERTEX,
    POLYGON_CORNER,
    Layout,
    quad_point,
)
from .options import DrawSpec

PALETTE = ("red", "blue", "green!60!black", "orange", "violet", "cyan")
SCALE = 4.0

STYLES = r"""\tikzset{
  vertex/.style={circle,draw,fill=white,inner sep=0pt,minimum size=4mm*\vertexscale},
  crossing/.style={circle,fill=black,inner sep=0pt,minimum size=1.2mm*\vertexscale},
  endlabel/.style={font=\scriptsize,inner sep=1pt},
  edge/.style={thin},
  side/.style={very thick},
  cut/.style={thick,dashed}
}"""


class EmitError(ValueError):
    pass


@dataclass
class TikzDoc:
    macros: dict[str, float] = field(default_factory=lambda: {"vertexscale": 1.0, "labelscale": 1.0})
    body: list[str] = field(default_factory=list)

    @property
    def header(self) -> list[str]:
        lines = [f"\\begin{{tikzpicture}}[scale={SCALE:g}]"]
        for name, val in self.macros.items():
            lines.append(f"\\def\\{name}{{{val:.1f}}}")
        lines.append(STYLES)
        return lines

    @property
    def text(self) -> str:
        return "\n".join(self.header + self.body + ["\\end{tikzpicture}"]) + "\n"

    def __str__(self) -> str:
        return self.text


def fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def pt(p) -> str:
    return f"({fmt(p[0])},{fmt(p[1])})"


def letters(i: int) -> str:
    out = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        out = chr(65 + r) + out
    return out


def _text(s) -> str:
    return f"\\scalebox{{\\labelscale}}{{${s}$}}"


def _use_letters(spec: DrawSpec, pairs: int) -> bool:
    return spec.letter_labels or pairs > len(PALETTE)


def _degree_styles(spec: DrawSpec) -> dict[int, str]:
    return {deg: col for deg, col in spec.degree_colors}


class _Names:
    """Node names: ``v<n>`` for vertex n, ``x<id>`` for crossings, ``c<id>`` for corners."""

    def __init__(self, layout: Layout, vertex_number):
        self.layout = layout
        self.names: dict[int, str] = {}
        used: Counter = Counter()
        for v in sorted(layout.positions):
            role = layout.point_roles[v]
            if role == ORIGINAL_VERTEX:
                n = vertex_number(v)
                used[n] += 1
                self.names[v] = f"v{n}" if used[n] == 1 else f"v{n}c{used[n]}"
            elif role == CROSSING_POINT:
                self.names[v] = f"x{v}"
            elif role == POLYGON_CORNER:
                self.names[v] = f"c{v}"

    def ref(self, v: int) -> str:
        name = self.names.get(v)
        return f"({name})" if name else pt(self.layout.positions[v])


def _outward_angle(p) -> float:
    if abs(p[0]) < 1e-12 and abs(p[1]) < 1e-12:
        return 90.0
    return math.degrees(math.atan2(p[1], p[0]))


def _vertex_nodes(doc: TikzDoc, layout: Layout, names: _Names, vertex_number, degree_of, spec: DrawSpec) -> None:
    colours = _degree_styles(spec)
    for v in sorted(layout.positions):
        if layout.point_roles[v] != ORIGINAL_VERTEX:
            continue
        n = vertex_number(v)
        style = "vertex"
        col = colours.get(degree_of(n))
        if col:
            style += f",fill={col}"
        doc.body.append(f"\\node[{style}] ({names.names[v]}) at {pt(layout.positions[v])} {{{_text(n)}}};")


def _edge_line(layout: Layout, names: _Names, path: list[int], curved: bool = False) -> str:
    if curved and len(path) == 2:
        return f"\\draw[edge] {names.ref(path[0])} to[bend left={180 / max(len(layout.outer), 3):.1f}] {names.ref(path[1])};"
    return "\\draw[edge] " + " -- ".join(names.ref(v) for v in path) + ";"


def _outer_pairs(layout: Layout) -> set[tuple[int, int]]:
    o = layout.outer
    return {(o[i], o[(i + 1) % len(o)]) for i in range(len(o))}


def _info(doc: TikzDoc, v: int, e: int, f: int, g: int) -> None:
    doc.body.append(
        f"\\node[anchor=north west,font=\\small] at (-1.25,1.25) "
        f"{{$|E|={e}$, $|V|={v}$, $|F|={f}$, genus $={g}$}};"
    )


def _split_quadratic(a, c, b):
    """First half of the quadratic curve as a cubic: control points and midpoint."""
    m = quad_point(a, c, b, 0.5)
    q = ((a[0] + c[0]) / 2, (a[1] + c[1]) / 2)
    return _cubic(a, q, m), m


def _cubic(a, c, b):
    c1 = (a[0] + 2 * (c[0] - a[0]) / 3, a[1] + 2 * (c[1] - a[1]) / 3)
    c2 = (b[0] + 2 * (c[0] - b[0]) / 3, b[1] + 2 * (c[1] - b[1]) / 3)
    return c1, c2


def emit_fundamental(layout: Layout, cutmap, spec: DrawSpec | None = None) -> TikzDoc:
    from .cycles import FUNDAMENTAL

    spec = spec or DrawSpec()
    if cutmap.mode != FUNDAMENTAL:
        raise EmitError("cut map is not a fundamental polygon cut")
    if len(layout.sides) != len(cutmap.sides):
        raise EmitError("layout and cut map disagree on the polygon sides")
    doc = TikzDoc()
    degrees = Counter(cutmap.original_tail)

    def number(pv):
        return cutmap.vertex_origin[pv]

    names = _Names(layout, number)
    ncycles = 2 * cutmap.genus
    use_letters = _use_letters(spec, ncycles)
    for v in sorted(layout.positions):
        if layout.point_roles[v] == POLYGON_CORNER:
            doc.body.append(f"\\coordinate ({names.names[v]}) at {pt(layout.positions[v])};")
    doc.body.append("% polygon sides")
    for geo, side in zip(layout.sides, cutmap.sides):
        colour = "black" if use_letters else PALETTE[side.cycle % len(PALETTE)]
        a, b = geo.start, geo.end
        if geo.control is None:
            doc.body.append(f"\\draw[side,{colour}] {pt(a)} -- {pt(b)};")
            m = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        else:
            c1, c2 = _cubic(a, geo.control, b)
            doc.body.append(f"\\draw[side,{colour}] {pt(a)} .. controls {pt(c1)} and {pt(c2)} .. {pt(b)};")
            m = quad_point(a, geo.control, b, 0.5)
        # arrow head at the middle of the side, pointing along the cycle
        if geo.control is None:
            src, dst = (a, m) if side.forward else (b, m)
            doc.body.append(f"\\draw[side,{colour},->] {pt(src)} -- {pt(dst)};")
        elif side.forward:
            (c1, c2), mid = _split_quadratic(a, geo.control, b)
            doc.body.append(f"\\draw[side,{colour},->] {pt(a)} .. controls {pt(c1)} and {pt(c2)} .. {pt(mid)};")
        else:
            (c1, c2), mid = _split_quadratic(b, geo.control, a)
            doc.body.append(f"\\draw[side,{colour},->] {pt(b)} .. controls {pt(c1)} and {pt(c2)} .. {pt(mid)};")
        if use_letters:
            doc.body.append(
                f"\\node[endlabel,font=\\small] at ({fmt(m[0] * 1.12)},{fmt(m[1] * 1.12)}) {{{_text(letters(side.cycle))}}};"
            )
    doc.body.append("% edges")
    for k in sorted(layout.edge_paths):
        if cutmap.dart_key[2 * k][1] is not None:
            continue
        doc.body.append(_edge_line(layout, names, layout.edge_paths[k]))
    doc.body.append("% crossing points")
    for v in sorted(layout.positions):
        if layout.point_roles[v] != CROSSING_POINT:
            continue
        lab = cutmap.labels.get(v)
        ang = _outward_angle(layout.positions[v])
        text = "" if lab is None else f",label={{[endlabel]{ang:.0f}:{_text(lab)}}}"
        doc.body.append(f"\\node[crossing{text}] ({names.names[v]}) at {pt(layout.positions[v])} {{}};")
    doc.body.append("% vertices")
    _vertex_nodes(doc, layout, names, number, lambda n: degrees[n], spec)
    if cutmap.vertex_label(_any_corner(layout)) is not None:
        # the common point is an original vertex, drawn at every corner
        n = cutmap.center_vertex
        col = _degree_styles(spec).get(degrees[n])
        style = "vertex" + (f",fill={col}" if col else "")
        for v in sorted(layout.positions):
            if layout.point_roles[v] == POLYGON_CORNER:
                doc.body.append(f"\\node[{style}] at ({names.names[v]}) {{{_text(n)}}};")
    if spec.info:
        nv = len(set(cutmap.original_tail))
        ne = len(cutmap.original_tail) // 2
        _info(doc, nv, ne, 2 - 2 * cutmap.genus - nv + ne, cutmap.genus)
    return doc


def _any_corner(layout: Layout) -> int:
    return next(v for v in sorted(layout.positions) if layout.point_roles[v] == POLYGON_CORNER)


def emit_disjoint(layout: Layout, cutmap, spec: DrawSpec | None = None) -> TikzDoc:
    from .cycles import DISJOINT

    spec = spec or DrawSpec()
    if cutmap.mode != DISJOINT:
        raise EmitError("cut map is not a disjoint-cycle cut")
    doc = TikzDoc()
    degrees = Counter(cutmap.original_tail)

    def number(pv):
        return cutmap.vertex_origin[pv]

    names = _Names(layout, number)
    P = cutmap.plane
    use_letters = _use_letters(spec, cutmap.genus)
    hole_of_edge: dict[int, int] = {}
    for i, h in enumerate(cutmap.holes):
        for d in h:
            hole_of_edge[d >> 1] = i
    colour_of_vertex: dict[int, str] = {}
    loop_holes = set()
    for i, h in enumerate(cutmap.holes):
        c = cutmap.hole_cycle[i]
        colour = "black" if use_letters else PALETTE[c % len(PALETTE)]
        for d in h:
            colour_of_vertex[P.tail[d]] = colour
        if len(h) == 1:
            loop_holes.add(i)
    outer_pairs = _outer_pairs(layout)
    doc.body.append("% edges")
    for k in sorted(layout.edge_paths):
        path = layout.edge_paths[k]
        if k in hole_of_edge:
            i = hole_of_edge[k]
            colour = "black" if use_letters else PALETTE[cutmap.hole_cycle[i] % len(PALETTE)]
            doc.body.append(f"\\draw[cut,{colour}] " + " -- ".join(names.ref(v) for v in path) + ";")
            continue
        curved = spec.curved_outer and ((path[0], path[-1]) in outer_pairs or (path[-1], path[0]) in outer_pairs)
        doc.body.append(_edge_line(layout, names, path, curved))
    if use_letters:
        for i, h in enumerate(cutmap.holes):
            vs = [P.tail[d] for d in h]
            cx = sum(layout.positions[v][0] for v in vs) / len(vs)
            cy = sum(layout.positions[v][1] for v in vs) / len(vs)
            doc.body.append(f"\\node[endlabel] at ({fmt(cx)},{fmt(cy)}) {{{_text(letters(cutmap.hole_cycle[i]))}}};")
    doc.body.append("% crossing points")
    for v in sorted(layout.positions):
        if layout.point_roles[v] != CROSSING_POINT:
            continue
        colour = colour_of_vertex.get(v, "black")
        lab = cutmap.labels.get(v)
        loop = [i for i in loop_holes if P.tail[cutmap.holes[i][0]] == v]
        if lab is not None and loop:
            # a loop holds the number of the vertex reached through it
            path = layout.edge_paths[cutmap.holes[loop[0]][0] >> 1]
            cx = sum(layout.positions[w][0] for w in path[:-1]) / (len(path) - 1)
            cy = sum(layout.positions[w][1] for w in path[:-1]) / (len(path) - 1)
            doc.body.append(f"\\node[crossing,fill={colour}] ({names.names[v]}) at {pt(layout.positions[v])} {{}};")
            doc.body.append(f"\\node[endlabel,{colour}] at ({fmt(cx)},{fmt(cy)}) {{{_text(lab)}}};")
        else:
            text = "" if lab is None else f",label={{[endlabel,{colour}]above:{_text(lab)}}}"
            doc.body.append(f"\\node[crossing,fill={colour}{text}] ({names.names[v]}) at {pt(layout.positions[v])} {{}};")
    doc.body.append("% vertices")
    _vertex_nodes(doc, layout, names, number, lambda n: degrees[n], spec)
    if spec.info:
        nv = len(set(cutmap.original_tail))
        ne = len(cutmap.original_tail) // 2
        _info(doc, nv, ne, 2 - 2 * cutmap.genus - nv + ne, cutmap.genus)
    return doc


def emit_plane(layout: Layout, spec: DrawSpec | None = None, cmap=None) -> TikzDoc:
    spec = spec or DrawSpec()
    doc = TikzDoc()
    if cmap is not None:
        degrees = {v: cmap.degree(v) for v in range(1, cmap.vertex_count + 1)}
    else:
        degrees = {v: layout.graph.degree(v) for v in layout.positions}
    names = _Names(layout, lambda v: v)
    outer_pairs = _outer_pairs(layout) if layout.outer else set()
    doc.body.append("% edges")
    for k in sorted(layout.edge_paths):
        path = layout.edge_paths[k]
        curved = spec.curved_outer and ((path[0], path[-1]) in outer_pairs or (path[-1], path[0]) in outer_pairs)
        doc.body.append(_edge_line(layout, names, path, curved))
    if layout.rays:
        doc.body.append("% edges to the vertex at infinity")
        for ray in layout.rays:
            dx, dy = ray.direction
            doc.body.append(
                f"\\draw[edge,->] {names.ref(ray.start)} -- ++({fmt(0.3 * dx)},{fmt(0.3 * dy)}) "
                f"node[endlabel,anchor={_anchor(dx, dy)}] {{{_text(ray.label)}}};"
            )
    doc.body.append("% vertices")
    _vertex_nodes(doc, layout, names, lambda v: v, lambda n: degrees.get(n, 0), spec)
    if spec.info and cmap is not None:
        nv, ne = cmap.vertex_count, cmap.edge_count
        _info(doc, nv, ne, 2 - nv + ne, 0)
    return doc


def _anchor(dx: float, dy: float) -> str:
    ang = math.degrees(math.atan2(dy, dx)) % 360
    names = ["west", "south west", "south", "south east", "east", "north east", "north", "north west"]
    return names[int(((ang + 22.5) % 360) // 45)]

