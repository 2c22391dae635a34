"""The eleven acceptance criteria, one test each.

Every test is named ``test_criterion_NN_*``; conftest.py turns their
outcomes into one PASS/FAIL line per criterion at the end of the run.
Running this file directly does the same without pytest.
"""

from __future__ import annotations

import io
import math
import random
import re
import subprocess
import sys
import time
from collections import defaultdict

import pytest

from surfdraw import (
    DrawSpec,
    connected_after_cut,
    cut_along,
    enumerate_start_configs,
    find_disjoint_system,
    find_fundamental_system,
    genus,
    parse_ascii,
    parse_binary,
    validate,
    verify_cut_roundtrip,
    write_planarcode,
)
from surfdraw.cli import draw_one_map, parse_options, run
from surfdraw.codec import ASCII, BINARY, CombinatorialMap
from surfdraw.cycles import (
    Center,
    CutError,
    SearchOptions,
    fresh_state,
    iter_arc_candidates,
    open_surface,
    realize,
    surface_components,
)
from surfdraw.generators import (
    K33_CODE,
    high_genus_map,
    k4_torus,
    k33_torus,
    k34_torus,
    plane_triangulation,
    random_torus_triangulation,
    torus_grid,
)
from surfdraw.layout import Layout, layout_cutmap, layout_plane, quality, spring_refine
from surfdraw.mapcore import MapTopology

from corpus import plane_corpus, surface_corpus
from oracles import (
    barycentric_residuals,
    brute_quality,
    euler_genus,
    inside_convex,
    proper_crossings,
)


def _first_plan(topo, finder, spec=None):
    for cfg in enumerate_start_configs(topo):
        plan = finder(topo, spec or DrawSpec(), cfg)
        if plan is not None:
            return plan
    return None


def _segments(layout: Layout):
    return [(layout.positions[a], layout.positions[b]) for _, a, b in layout.segments()]


# 1 -------------------------------------------------------------------------


def _random_valid_map(rng: random.Random) -> CombinatorialMap | None:
    n = rng.randint(1, 50)
    adj = {v: [] for v in range(1, n + 1)}
    for v in range(2, n + 1):
        w = rng.randint(1, v - 1)
        adj[v].append(w)
        adj[w].append(v)
    for _ in range(rng.randint(0, min(12, 151 - n))):
        a, b = rng.randint(1, n), rng.randint(1, n)
        if a != b:
            adj[a].append(b)
            adj[b].append(a)
    for v in adj:
        rng.shuffle(adj[v])
    cmap = CombinatorialMap.from_lists(adj[v] for v in range(1, n + 1))
    if not validate(cmap).ok or cmap.edge_count > 150 or genus(cmap).genus > 5:
        return None
    return cmap


def test_criterion_01_codec_roundtrip():
    rng = random.Random(1)
    maps = []
    while len(maps) < 1000:
        m = _random_valid_map(rng)
        if m is not None:
            maps.append(m)
    assert {genus(m).genus for m in maps} == set(range(6))
    t0 = time.perf_counter()
    for fmt, parse in ((BINARY, parse_binary), (ASCII, parse_ascii)):
        data = write_planarcode(maps, fmt)
        back = parse(data)
        assert list(back) == maps
        assert write_planarcode(back, fmt) == data
        for m in maps[:200]:
            one = write_planarcode([m], fmt)
            assert write_planarcode(parse(one), fmt) == one
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"round trip took {elapsed:.2f}s"


# 2 -------------------------------------------------------------------------


def test_criterion_02_genus_oracle():
    k33 = parse_ascii(K33_CODE)[0]
    assert genus(k33).genus == 1
    for m in range(3, 7):
        for n in range(3, 7):
            g = torus_grid(m, n)
            assert euler_genus([list(r) for r in g.rotations]) == 1
            assert genus(g).genus == 1
    rng = random.Random(2)
    for n in range(3, 40):
        t = plane_triangulation(n, rng)
        assert genus(t).genus == 0
        assert t.edge_count == 3 * n - 6


# 3 -------------------------------------------------------------------------


def _only_cycle(state, i):
    """The same curves, but only cycle ``i`` is cut open; the rest are ordinary edges."""
    t = state.copy()
    t.cut_edges = {k: c for k, c in state.cut_edges.items() if c == i}
    return t


def _splits_off_a_disk(state) -> bool:
    comps = surface_components(open_surface(state))
    return len(comps) > 1 and any(c["chi"] == 1 and c["holes"] == 1 for c in comps)


def test_criterion_03_shared_center_pairs():
    topo = MapTopology(k4_torus())
    opts = SearchOptions()
    outcome = defaultdict(int)
    for f in range(len(topo.face_darts)):
        s0 = fresh_state(topo, Center("face", f))
        for L1 in range(1, 5):
            for c1 in iter_arc_candidates(s0, L1, opts):
                s1 = realize(s0, c1)
                if s1 is None or _splits_off_a_disk(s1):
                    continue
                for L2 in range(1, 5):
                    for c2 in iter_arc_candidates(s1, L2, opts):
                        s2 = realize(s1, c2)
                        if s2 is None or _splits_off_a_disk(_only_cycle(s2, 1)):
                            continue
                        pieces = len(surface_components(open_surface(s2)))
                        connected = connected_after_cut(topo, s2.cycles)
                        assert connected == (pieces == 1)
                        outcome[connected] += 1
    assert outcome[True] > 0 and outcome[False] > 0, dict(outcome)
    # the pipeline only keeps systems that leave the surface in one piece
    kept = 0
    for cfg in enumerate_start_configs(topo):
        plan = find_fundamental_system(topo, DrawSpec(), cfg)
        if plan is None:
            continue
        kept += 1
        assert connected_after_cut(topo, plan.cycles)
        assert connected_after_cut(topo, plan.cycles[:1])
        assert len(surface_components(open_surface(plan.state))) == 1
    assert kept > 0
    drawn = draw_one_map(k4_torus(), DrawSpec()).cutmap.plan
    assert connected_after_cut(topo, drawn.cycles)


# 4 -------------------------------------------------------------------------


def test_criterion_04_cut_correctness():
    maps = surface_corpus()
    assert len(maps) == 500
    t0 = time.perf_counter()
    for m in maps:
        topo = MapTopology(m)
        g = genus(m).genus
        assert 1 <= g <= 3 and m.vertex_count <= 40
        plan = _first_plan(topo, find_fundamental_system)
        assert plan is not None
        cm = cut_along(topo, plan)
        assert len(cm.sides) == 4 * g
        assert genus(cm.plane_map).genus == 0
        assert verify_cut_roundtrip(topo, cm)
    elapsed = time.perf_counter() - t0
    for m in maps[::5]:
        topo = MapTopology(m)
        g = genus(m).genus
        plan = _first_plan(topo, find_disjoint_system)
        assert plan is not None
        cm = cut_along(topo, plan)
        assert len(plan.cycles) == g
        assert len(cm.cut_faces) == g and len(cm.holes) == 2 * g
        assert genus(cm.plane_map).genus == 0
        assert verify_cut_roundtrip(topo, cm)
    assert elapsed < 60.0, f"fundamental mode took {elapsed:.1f}s for 500 maps"


# 5 -------------------------------------------------------------------------


def _max_crossings(plan) -> int:
    count = defaultdict(int)
    for cyc in plan.cycles:
        for e in cyc.crossed_edges():
            count[e] += 1
    return max(count.values())


def test_criterion_05_triangulation_bound():
    rng = random.Random(5)
    bound = math.ceil(4 * 1 / 3)
    maps = [random_torus_triangulation(rng, rng.randint(0, 12)) for _ in range(50)]
    for i, m in enumerate(maps):
        info = genus(m)
        assert info.genus == 1 and 3 * info.f == 2 * info.e
        topo = MapTopology(m)
        # every system the pipeline could accept, not only the one it draws
        plans = [find_fundamental_system(topo, DrawSpec(), cfg) for cfg in enumerate_start_configs(topo)]
        plans = [p for p in plans if p is not None]
        assert plans
        assert min(_max_crossings(p) for p in plans) >= bound
        if i < 5:
            res = draw_one_map(m, DrawSpec())
            assert _max_crossings(res.cutmap.plan) >= bound


# 6 -------------------------------------------------------------------------


def test_criterion_06_tutte_layout():
    corpus = plane_corpus()
    assert len(corpus) >= 30
    for m in corpus:
        lay = layout_plane(m, DrawSpec(spring_iterations=0))
        assert not lay.augmentation
        adjacency = {v: list(m.rotations[v - 1]) for v in range(1, m.vertex_count + 1)}
        assert barycentric_residuals(adjacency, lay.positions, set(lay.outer)) <= 1e-9
        assert proper_crossings(_segments(lay)) == []


# 7 -------------------------------------------------------------------------


def _check_refinement(lay: Layout, iterations=200, step=0.1):
    trace: list[float] = []
    out = spring_refine(lay, iterations, step, trace=trace)
    assert all(b <= a for a, b in zip(trace, trace[1:]))
    assert proper_crossings(_segments(out)) == []
    polygon = [out.positions[v] for v in out.outer]
    for v in out.positions:
        if v not in set(out.outer):
            assert inside_convex(out.positions[v], polygon)
    return trace


def test_criterion_07_spring_safety():
    moved = 0
    for m in plane_corpus():
        trace = _check_refinement(layout_plane(m, DrawSpec(spring_iterations=0)))
        moved += len(trace) > 1
    assert moved > 0
    for m in surface_corpus()[:40]:
        topo = MapTopology(m)
        cm = cut_along(topo, _first_plan(topo, find_fundamental_system))
        _check_refinement(layout_cutmap(cm, DrawSpec(spring_iterations=0)), iterations=60)


# 8 -------------------------------------------------------------------------


def test_criterion_08_quality_oracle():
    rng = random.Random(8)
    bases = [layout_plane(m, DrawSpec(spring_iterations=0)) for m in plane_corpus()[:10]]
    for m in surface_corpus()[:10]:
        topo = MapTopology(m)
        bases.append(layout_cutmap(cut_along(topo, _first_plan(topo, find_fundamental_system)), DrawSpec(spring_iterations=0)))
    for i in range(100):
        base = bases[i % len(bases)]
        pos = {v: (rng.uniform(-1, 1), rng.uniform(-1, 1)) for v in base.positions}
        lay = Layout(**{**base.__dict__, "positions": pos})
        got = quality(lay)
        real = {v: pos[v] for v in lay.real_points()}
        vv, ve = brute_quality(real, lay.edge_paths, pos, lay.radius)
        assert abs(got.min_vertex_vertex - vv) <= 1e-12
        assert abs(got.min_vertex_edge - ve) <= 1e-12
        assert abs(got.score - min(vv, ve)) <= 1e-12


# 9 -------------------------------------------------------------------------


def _walk_to_vertex(cm, pv, partner, limit=10000):
    """Follow the edge segment leaving a crossing copy until an original vertex."""
    P = cm.plane
    for _ in range(limit):
        segs = [d for d in P.rotation(pv) if cm.dart_key[d][1] is None]
        assert len(segs) == 1
        w = P.head(segs[0])
        if cm.role(w) == "original_vertex":
            return cm.vertex_label(w)
        pv = partner[w]
    raise AssertionError("segment walk does not terminate")


def _label_pairing_holds(cm) -> bool:
    copies = defaultdict(list)
    for pv, rv in cm.vertex_origin.items():
        if cm.role(pv) == "crossing_point":
            copies[rv].append(pv)
    partner = {}
    for rv, pvs in copies.items():
        if len(pvs) != 2:
            return False
        a, b = pvs
        partner[a], partner[b] = b, a
    hole_of = {}
    for i, h in enumerate(cm.holes):
        for d in h:
            hole_of.setdefault(cm.plane.tail[d], set()).add(i)
    for a, b in partner.items():
        if len(hole_of.get(a, ())) != 1 or len(hole_of.get(b, ())) != 1:
            return False
        (ha,), (hb,) = hole_of[a], hole_of[b]
        if ha == hb or cm.hole_cycle[ha] != cm.hole_cycle[hb]:
            return False
        if cm.labels[a] != _walk_to_vertex(cm, b, partner):
            return False
    return True


def test_criterion_09_disjoint_label_bijection():
    checked = 0
    for spec in (DrawSpec(mode="disjoint"), DrawSpec(mode="disjoint", vertex_cutting=True)):
        for m in surface_corpus()[:150]:
            topo = MapTopology(m)
            plan = _first_plan(topo, find_disjoint_system, spec)
            assert plan is not None
            cm = cut_along(topo, plan)
            assert _label_pairing_holds(cm)
            checked += 1
    assert checked == 300


# 10 ------------------------------------------------------------------------


def _run_cli(maps, argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(io.BytesIO(write_planarcode(maps)), argv, out, err)
    return status, out.getvalue(), err.getvalue()


def test_criterion_10_cli_behaviour():
    k34 = k34_torus()
    topo = MapTopology(k34)
    spec = parse_options("cf 7 2 d 4 red s".split())
    res = draw_one_map(k34, spec)
    want = topo.face_left_of(7, 2)
    assert res.cutmap.plan.start_config.face == want
    assert all(c.center == Center("face", want) for c in res.cutmap.plan.cycles)
    corners = [pv for pv in res.cutmap.plane.first if res.cutmap.role(pv) == "polygon_corner"]
    assert corners and {res.cutmap.vertex_origin[pv] for pv in corners} == {res.cutmap.center_vertex}

    torus = k33_torus()
    argv = []
    for v, rot in enumerate(torus.rotations, start=1):
        for w in rot:
            if v < w:
                argv += ["NE", str(v), str(w)]
    status, out, err = _run_cli([torus], argv)
    assert status != 0 and "map 1: error" in err and out == ""

    status, out, err = _run_cli([k33_torus()], ["b"])
    assert status == 0 and sorted(side_labels(out)) == ["A", "A", "B", "B"]
    assert "side,red" not in out
    big = high_genus_map(4)
    g = genus(big).genus
    assert g >= 4
    status, out, err = _run_cli([big], [])
    assert status == 0
    labels = side_labels(out)
    assert len(labels) == 4 * g and all(lab.isalpha() and lab.isupper() for lab in labels)
    assert len(set(labels)) == 2 * g


def side_labels(tikz: str) -> list[str]:
    return re.findall(r"node\[endlabel,font=\\small\] at \([^)]*\) \{\\scalebox\{\\labelscale\}\{\$(\w+)\$\}\}", tikz)


# 11 ------------------------------------------------------------------------


def test_criterion_11_determinism(tmp_path):
    rng = random.Random(11)
    maps = [k33_torus(), k4_torus(), torus_grid(3, 4), plane_triangulation(8, rng)]
    stream = tmp_path / "maps.pc"
    stream.write_bytes(write_planarcode(maps))
    outputs = []
    for _ in range(2):
        for argv in ([], ["-T"], ["e", "i"], ["b", "s"]):
            with stream.open("rb") as fh:
                proc = subprocess.run(
                    [sys.executable, "-m", "surfdraw.cli", *argv], stdin=fh, capture_output=True, check=False
                )
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.append(proc.stdout)
    half = len(outputs) // 2
    assert outputs[:half] == outputs[half:]
    assert all(o.count(b"% map") == 4 for o in outputs)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
