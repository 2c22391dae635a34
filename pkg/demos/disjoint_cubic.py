"""A cubic genus 3 map cut along three disjoint cycles.

The picture is a plane drawing with six special faces; faces with the same
colour are glued together, and the number at each crossing point says where
the cut edge continues.

    python demos/disjoint_cubic.py > cubic.tikz
"""

import sys

from surfdraw import cut_along, enumerate_start_configs, find_disjoint_system, genus
from surfdraw.cycles import check_label_bijection
from surfdraw.emit import emit_disjoint
from surfdraw.generators import cubic_genus3
from surfdraw.layout import layout_cutmap
from surfdraw.options import DISJOINT, DrawSpec

cmap = cubic_genus3()
print(f"% genus {genus(cmap).genus}", file=sys.stderr)

spec = DrawSpec(mode=DISJOINT, vertex_cutting=True)
plan = None
for cfg in enumerate_start_configs(cmap):
    plan = find_disjoint_system(cmap, spec, cfg)
    if plan is not None:
        break

cm = cut_along(cmap, plan)
print(f"% {len(cm.cut_faces)} pairs of cut faces, sizes {[len(a) for a, _ in cm.cut_faces]}", file=sys.stderr)
print(f"% labels consistent: {check_label_bijection(cm)}", file=sys.stderr)

lay = layout_cutmap(cm, spec)
print(f"% quality {lay.quality.score:.4f}", file=sys.stderr)
sys.stdout.write(emit_disjoint(lay, cm, spec).text)
