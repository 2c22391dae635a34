"""K_{3,3} on the torus, from planarcode to a fundamental polygon.

Run from the repository root:  python demos/torus_k33.py > k33.tikz
"""

import sys

from surfdraw import MapTopology, genus, parse_ascii
from surfdraw.cli import draw_one_map, parse_options
from surfdraw.generators import K33_CODE

# the map as it appears in ASCII planarcode: 6 vertices, neighbours clockwise
cmap = parse_ascii(K33_CODE)[0]
info = genus(cmap)
print(f"% V={info.v} E={info.e} F={info.f} genus={info.genus}", file=sys.stderr)

topo = MapTopology(cmap)
for i, face in enumerate(topo.faces):
    print(f"% face {i}: size {face.size}, vertices {face.vertices}", file=sys.stderr)

# one polygon corner in the big face, letters on the sides
res = draw_one_map(cmap, parse_options(["b"]))
plan = res.cutmap.plan
for k, cyc in enumerate(plan.cycles):
    print(f"% cycle {k}: crosses edges {cyc.crossed_edges()}", file=sys.stderr)
print(f"% {res.attempts} start configuration(s) tried, quality {res.score:.3f}", file=sys.stderr)

sys.stdout.write(res.doc.text)
