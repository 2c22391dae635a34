"""Plane maps: an ordinary drawing and one with a vertex sent to infinity.

    python demos/plane_vertex_at_infinity.py > plane.tikz
"""

import random
import sys

from surfdraw.emit import emit_plane
from surfdraw.generators import double_wheel, plane_triangulation
from surfdraw.layout import layout_plane, layout_vertex_at_infinity, pick_infinite_vertex
from surfdraw.options import DrawSpec

spec = DrawSpec()

tri = plane_triangulation(12, random.Random(4))
lay = layout_plane(tri, spec)
print(f"% triangulation: {len(lay.augmentation)} helper vertices, quality {lay.quality.score:.3f}", file=sys.stderr)
sys.stdout.write("% plain\n" + emit_plane(lay, spec, tri).text)

# both apexes of a double wheel have degree 8; the lower number goes to infinity
dw = double_wheel(8)
v = pick_infinite_vertex(dw)
lay = layout_vertex_at_infinity(dw, v, spec)
print(f"% vertex {v} at infinity, {len(lay.rays)} rays", file=sys.stderr)
sys.stdout.write("% vertex at infinity\n" + emit_plane(lay, spec, dw).text)
