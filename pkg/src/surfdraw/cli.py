"""Command line front end: planarcode on stdin, tikz on stdout."""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Any

from .codec import PlanarCodeError, iter_ascii, iter_binary, looks_ascii, validate
from .cycles import (
    CutError,
    cut_along,
    enumerate_start_configs,
    find_disjoint_system,
    find_fundamental_system,
    fixed_start_config,
)
from .emit import TikzDoc, emit_disjoint, emit_fundamental, emit_plane
from .layout import LayoutError, layout_cutmap, layout_plane, layout_vertex_at_infinity, quality_threshold
from .mapcore import InvalidMapError, MapTopology, genus
from .options import (
    DISJOINT,
    EDGE,
    EDGE_FIXED,
    FACE_DEFAULT,
    FACE_FIXED,
    PLANE,
    VERTEX,
    VERTEX_FIXED,
    DrawSpec,
)

__all__ = ["DrawSpec", "AttemptBuffer", "parse_options", "draw_one_map", "run", "main"]

USAGE = """usage: surfdraw [options] < maps.pc > drawing.tikz

  if          prefer drawings with more faces untouched by cut cycles
  cf x y      common point inside the face left of the oriented edge [x,y]
  e           common point on an edge midpoint
  ce x y      common point on the midpoint of edge {x,y}
  v           common point on a vertex
  cv x        common point on vertex x
  V           allow cycles to pass through vertices
  NE x y      never cross edge {x,y} (repeatable)
  NV x        never pass through vertex x (repeatable)
  b           label polygon sides with letters instead of colours
  d x colour  colour vertices of degree x (repeatable)
  i           print edge, vertex and face numbers and the genus
  s           straight polygon sides
  C           curved outer edges
  O           plane maps: put the vertex of maximum degree at infinity
  -T          draw with g disjoint cut cycles instead of a fundamental polygon
  --ascii     input is ASCII planarcode
  --threshold q   quality accepted as sufficiently good
"""


class OptionError(ValueError):
    pass


class MapDrawError(RuntimeError):
    pass


_FAMILY = {FACE_FIXED: "face", EDGE: "edge", EDGE_FIXED: "edge", VERTEX: "vertex", VERTEX_FIXED: "vertex"}


def _set_center(spec: DrawSpec, policy: str, args: tuple[int, ...]) -> None:
    cur = spec.center_policy
    if cur != FACE_DEFAULT and _FAMILY[cur] != _FAMILY[policy]:
        raise OptionError(f"conflicting center options ({cur} and {policy})")
    if cur in (FACE_FIXED, EDGE_FIXED, VERTEX_FIXED) and policy in (FACE_FIXED, EDGE_FIXED, VERTEX_FIXED):
        if (cur, spec.center_args) != (policy, args):
            raise OptionError("the common point is fixed twice")
    if policy in (EDGE, VERTEX) and cur in (EDGE_FIXED, VERTEX_FIXED):
        return
    spec.center_policy = policy
    spec.center_args = args


def parse_options(argv: list[str]) -> DrawSpec:
    spec = DrawSpec()
    args = list(argv)
    pos = 0

    def take(n: int, what: str) -> list[str]:
        nonlocal pos
        vals = args[pos + 1 : pos + 1 + n]
        if len(vals) < n:
            raise OptionError(f"option {what} needs {n} argument(s)")
        pos += n
        return vals

    def ints(vals: list[str], what: str) -> tuple[int, ...]:
        try:
            out = tuple(int(v) for v in vals)
        except ValueError:
            raise OptionError(f"option {what}: expected integers, got {' '.join(vals)}") from None
        if any(v < 1 for v in out):
            raise OptionError(f"option {what}: vertex numbers start at 1")
        return out

    while pos < len(args):
        a = args[pos]
        if a == "if":
            spec.maximize_interior_faces = True
        elif a == "cf":
            _set_center(spec, FACE_FIXED, ints(take(2, a), a))
        elif a == "ce":
            _set_center(spec, EDGE_FIXED, ints(take(2, a), a))
        elif a == "cv":
            _set_center(spec, VERTEX_FIXED, ints(take(1, a), a))
        elif a == "e":
            _set_center(spec, EDGE, ())
        elif a == "v":
            _set_center(spec, VERTEX, ())
        elif a == "V":
            spec.vertex_cutting = True
        elif a == "NE":
            x, y = ints(take(2, a), a)
            spec.forbidden_edges.append((x, y))
        elif a == "NV":
            (x,) = ints(take(1, a), a)
            spec.forbidden_vertices.append(x)
        elif a == "b":
            spec.letter_labels = True
        elif a == "d":
            deg, colour = take(2, a)
            (deg_i,) = ints([deg], a)
            if not colour or colour.startswith("-"):
                raise OptionError("option d needs a colour name")
            spec.degree_colors.append((deg_i, colour))
        elif a == "i":
            spec.info = True
        elif a == "s":
            spec.straight_sides = True
        elif a == "C":
            spec.curved_outer = True
        elif a == "O":
            spec.vertex_at_infinity = True
        elif a == "-T":
            spec.mode = DISJOINT
        elif a == "--ascii":
            spec.force_ascii = True
        elif a == "--threshold":
            (val,) = take(1, a)
            try:
                spec.quality_threshold = float(val)
            except ValueError:
                raise OptionError(f"--threshold expects a number, got {val!r}") from None
        else:
            raise OptionError(f"unknown option {a!r}")
        pos += 1
    if spec.mode == DISJOINT and spec.center_policy != FACE_DEFAULT:
        raise OptionError("disjoint cycles have no common point; drop e, v, cf, ce and cv")
    return spec


@dataclass
class AttemptBuffer:
    """Best drawing so far; replaced only by a strictly better one."""

    best_layout: Any = None
    best_cutmap: Any = None
    best_score: Any = None
    best_quality: float | None = None

    def offer(self, score, layout, cutmap) -> bool:
        if self.best_score is not None and not score > self.best_score:
            return False
        self.best_score = score
        self.best_layout = layout
        self.best_cutmap = cutmap
        self.best_quality = layout.quality.score
        return True


@dataclass
class DrawResult:
    doc: TikzDoc
    layout: Any
    cutmap: Any = None
    attempts: int = 0
    systems: int = 0
    score: float = 0.0
    configs: list = field(default_factory=list)


def _start_configs(cmap, spec: DrawSpec):
    if spec.fixed_center:
        try:
            return [fixed_start_config(cmap, spec)]
        except CutError as exc:
            raise MapDrawError(str(exc)) from None
    return enumerate_start_configs(cmap)


def draw_one_map(cmap, spec: DrawSpec) -> DrawResult:
    report = validate(cmap)
    if not report.ok:
        raise MapDrawError(report.violations[0].message)
    g = genus(cmap).genus
    if g == 0 or spec.mode == PLANE:
        if g != 0:
            raise MapDrawError("plane drawing requested for a map of positive genus")
        lay = layout_vertex_at_infinity(cmap, None, spec) if spec.vertex_at_infinity else layout_plane(cmap, spec)
        score = lay.quality.score if lay.quality else 0.0
        return DrawResult(emit_plane(lay, spec, cmap), lay, None, 1, 0, score)
    if spec.vertex_at_infinity:
        raise MapDrawError("option O is only available for plane maps")
    topo = MapTopology(cmap)
    configs = _start_configs(topo, spec)
    finder = find_disjoint_system if spec.mode == DISJOINT else find_fundamental_system
    buffer = AttemptBuffer()
    attempts = systems = 0
    tried = []
    for cfg in configs:
        attempts += 1
        tried.append(cfg)
        plan = finder(topo, spec, cfg)
        if plan is None:
            continue
        systems += 1
        cm = cut_along(topo, plan)
        try:
            lay = layout_cutmap(cm, spec)
        except LayoutError:
            continue
        q = lay.quality.score
        key = (cm.untouched_faces, q) if spec.maximize_interior_faces else q
        buffer.offer(key, lay, cm)
        if not spec.maximize_interior_faces and q >= quality_threshold(lay, spec):
            break
    if buffer.best_layout is None:
        if systems:
            raise MapDrawError("cut systems were found but none could be laid out")
        raise MapDrawError("no system of cut cycles found for any starting configuration")
    emit = emit_disjoint if spec.mode == DISJOINT else emit_fundamental
    doc = emit(buffer.best_layout, buffer.best_cutmap, spec)
    return DrawResult(doc, buffer.best_layout, buffer.best_cutmap, attempts, systems, buffer.best_quality, tried)


def _open_stream(data: bytes, spec: DrawSpec):
    if spec.force_ascii or looks_ascii(data):
        return iter_ascii(data)
    return iter_binary(data)


def run(stdin, argv: list[str], stdout, stderr) -> int:
    try:
        spec = parse_options(argv)
    except OptionError as exc:
        stderr.write(f"surfdraw: {exc}\n{USAGE}")
        return 2
    data = stdin.read()
    if isinstance(data, str):
        data = data.encode("latin-1")
    status = 0
    k = 0
    maps = _open_stream(data, spec)
    while True:
        try:
            cmap = next(maps)
        except StopIteration:
            break
        except PlanarCodeError as exc:
            stderr.write(f"surfdraw: unreadable input: {exc}\n")
            return 1
        k += 1
        t0 = time.perf_counter()
        try:
            res = draw_one_map(cmap, spec)
        except (MapDrawError, CutError, LayoutError, InvalidMapError) as exc:
            stderr.write(f"map {k}: error: {exc}\n")
            status = 1
            continue
        stdout.write(f"% map {k}\n")
        stdout.write(res.doc.text)
        stderr.write(
            f"map {k}: attempts={res.attempts} systems={res.systems} "
            f"score={res.score:.4f} time={time.perf_counter() - t0:.3f}\n"
        )
    return status


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(sys.stdin.buffer, sys.argv[1:] if argv is None else argv, sys.stdout, sys.stderr))


if __name__ == "__main__":
    main()
