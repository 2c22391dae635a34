import pytest

from surfdraw.cycles import (
    Center,
    Crossing,
    CutError,
    NcCycle,
    SearchOptions,
    StartConfig,
    check_identification,
    check_label_bijection,
    connected_after_cut,
    cut_along,
    embed_cycles,
    enumerate_start_configs,
    find_disjoint_system,
    find_fundamental_system,
    find_nc_cycle,
    fixed_start_config,
    fresh_state,
    is_contractible,
    iter_arc_candidates,
    realize,
    verify_cut_roundtrip,
)
from surfdraw.generators import cubic_genus3, k4_torus, k33_torus, k34_torus, torus_grid, triangle
from surfdraw.mapcore import MapTopology, genus
from surfdraw.options import DrawSpec


@pytest.fixture(scope="module")
def k33():
    return MapTopology(k33_torus())


def test_start_configs_cover_every_face_dart(k33):
    cfgs = enumerate_start_configs(k33)
    assert len(cfgs) == 18
    sizes = [len(k33.face_darts[c.face]) for c in cfgs]
    assert sizes == sorted(sizes, reverse=True)
    assert all(k33.face_of[c.dart] == c.face for c in cfgs)


def test_nc_cycle_on_the_torus(k33):
    cyc = find_nc_cycle(k33, Center("face", 0))
    assert cyc is not None and cyc.length >= 1
    assert not is_contractible(k33, cyc)
    longer = find_nc_cycle(k33, Center("face", 0), min_length=cyc.length + 1)
    assert longer is None or longer.length > cyc.length


def test_no_nc_cycle_on_the_sphere():
    assert find_nc_cycle(triangle(), Center("face", 0)) is None


def test_forbidden_edges_are_never_crossed(k33):
    cyc = find_nc_cycle(k33, Center("face", 0))
    banned = set(cyc.crossed_edges())
    other = find_nc_cycle(k33, Center("face", 0), forbidden_edges=banned)
    if other is not None:
        assert not banned & set(other.crossed_edges())
    everything = range(k33.darts.num_edges)
    assert find_nc_cycle(k33, Center("face", 0), forbidden_edges=everything) is None


def test_curve_around_a_vertex_is_contractible():
    topo = MapTopology(torus_grid(3, 3))
    v = 5
    around = {d >> 1 for d in topo.darts.rotation(v)}
    f = topo.face_of[topo.darts.rotation(v)[0]]
    s0 = fresh_state(topo, Center("face", f))
    seen = 0
    for cand in iter_arc_candidates(s0, 4, SearchOptions()):
        s1 = realize(s0, cand)
        if s1 is None:
            continue
        cyc = s1.cycles[-1]
        if set(cyc.crossed_edges()) == around:
            seen += 1
            assert is_contractible(topo, cyc)
    assert seen > 0


def test_unrealisable_pattern():
    topo = MapTopology(k33_torus())
    bogus = NcCycle(Center("face", 0), (Crossing(dart=0), Crossing(dart=0)))
    with pytest.raises(CutError):
        embed_cycles(topo, [bogus])


@pytest.mark.parametrize("policy", ["face_default", "edge", "vertex"])
@pytest.mark.parametrize("make", [k33_torus, k4_torus, cubic_genus3], ids=["k33", "k4", "g3"])
def test_fundamental_systems(make, policy):
    cmap = make()
    topo = MapTopology(cmap)
    g = genus(cmap).genus
    spec = DrawSpec(center_policy=policy)
    found = 0
    for cfg in enumerate_start_configs(topo)[:6]:
        plan = find_fundamental_system(topo, spec, cfg)
        if plan is None:
            continue
        found += 1
        assert len(plan.cycles) == 2 * g
        assert len({c.center for c in plan.cycles}) == 1
        lengths = [c.length for c in plan.cycles]
        assert lengths == sorted(lengths)
        assert connected_after_cut(topo, plan.cycles)
        cm = cut_along(topo, plan)
        assert check_identification(cm)
        assert check_label_bijection(cm)
        assert verify_cut_roundtrip(topo, cm)
        assert genus(cm.plane_map).genus == 0
        if policy == "face_default":
            first = plan.cycles[0].crossings[0]
            assert first.dart == cfg.dart and plan.cycles[0].center == Center("face", cfg.face)
        elif policy == "vertex":
            assert plan.cycles[0].center == Center("vertex", topo.darts.tail[cfg.dart])
        else:
            assert plan.cycles[0].center == Center("edge_midpoint", cfg.dart >> 1)
    assert found > 0


def test_search_is_deterministic(k33):
    cfg = enumerate_start_configs(k33)[0]
    a = find_fundamental_system(k33, DrawSpec(), cfg)
    b = find_fundamental_system(MapTopology(k33_torus()), DrawSpec(), cfg)
    assert a.cycles == b.cycles


def test_genus_zero_is_rejected():
    topo = MapTopology(triangle())
    with pytest.raises(CutError):
        find_fundamental_system(topo, DrawSpec(), StartConfig(0, 0))
    with pytest.raises(CutError):
        find_disjoint_system(topo, DrawSpec(), StartConfig(0, 0))


def test_disjoint_systems_with_and_without_vertex_cuts():
    for cmap in (k33_torus(), cubic_genus3()):
        topo = MapTopology(cmap)
        g = genus(cmap).genus
        for spec in (DrawSpec(mode="disjoint"), DrawSpec(mode="disjoint", vertex_cutting=True)):
            plan = next(
                p for p in (find_disjoint_system(topo, spec, c) for c in enumerate_start_configs(topo)) if p
            )
            assert len(plan.cycles) == g and all(c.center is None for c in plan.cycles)
            cm = cut_along(topo, plan)
            assert len(cm.cut_faces) == g
            assert check_identification(cm) and check_label_bijection(cm)
            assert verify_cut_roundtrip(topo, cm)


def test_forbidding_every_edge_exhausts_the_search(k33):
    spec = DrawSpec(forbidden_edges=[(v, w) for v, rot in enumerate(k33.cmap.rotations, 1) for w in rot])
    assert all(find_fundamental_system(k33, spec, c) is None for c in enumerate_start_configs(k33))


def test_forbidden_vertices_are_not_cut():
    topo = MapTopology(k33_torus())
    spec = DrawSpec(mode="disjoint", vertex_cutting=True, forbidden_vertices=[1, 2, 3, 4, 5, 6])
    for cfg in enumerate_start_configs(topo):
        plan = find_disjoint_system(topo, spec, cfg)
        if plan:
            assert all(x.vertex is None for c in plan.cycles for x in c.crossings)


def test_fixed_start_config():
    topo = MapTopology(k34_torus())
    cfg = fixed_start_config(topo, DrawSpec(center_policy="face_fixed", center_args=(7, 2)))
    assert cfg.face == topo.face_left_of(7, 2)
    with pytest.raises(CutError):
        fixed_start_config(topo, DrawSpec(center_policy="face_fixed", center_args=(1, 2)))


def test_roundtrip_detects_corruption(k33):
    plan = find_fundamental_system(k33, DrawSpec(), enumerate_start_configs(k33)[0])
    cm = cut_along(k33, plan)
    assert verify_cut_roundtrip(k33, cm)

    a, b = sorted(cm.labels)[:2]
    bad = cut_along(k33, plan)
    bad.labels[a], bad.labels[b] = bad.labels[b] + 0, bad.labels[a] + 0
    if bad.labels[a] == bad.labels[b]:
        bad.labels[a] = 99
    assert not verify_cut_roundtrip(k33, bad)

    bad = cut_along(k33, plan)
    bad.sides[0].forward = not bad.sides[0].forward
    assert not verify_cut_roundtrip(k33, bad)

    bad = cut_along(k33, plan)
    d = next(iter(bad.plane.live_darts()))
    bad.dart_key[d] = (bad.dart_key[d][0] ^ 1, bad.dart_key[d][1])
    assert not verify_cut_roundtrip(k33, bad)


def test_untouched_faces_counts(k33):
    plan = find_fundamental_system(k33, DrawSpec(), enumerate_start_configs(k33)[0])
    cm = cut_along(k33, plan)
    assert 0 <= cm.untouched_faces < len(k33.face_darts)
