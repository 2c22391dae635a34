"""Deterministic map collections shared by the tests."""

from __future__ import annotations

import functools
import random

import networkx as nx

from surfdraw.generators import (
    cube,
    cubic_genus3,
    double_wheel,
    k4_plane,
    k4_torus,
    k33_torus,
    k34_torus,
    plane_triangulation,
    prism,
    random_map_of_genus,
    torus_grid,
    torus_triangulation,
    wheel,
)


def to_networkx(cmap) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(range(1, cmap.vertex_count + 1))
    for v, rot in enumerate(cmap.rotations, start=1):
        for w in rot:
            if v < w:
                G.add_edge(v, w)
    return G


def is_three_connected(cmap) -> bool:
    G = nx.Graph(to_networkx(cmap))
    return G.number_of_nodes() >= 4 and nx.node_connectivity(G) >= 3


@functools.lru_cache(maxsize=None)
def plane_corpus() -> tuple:
    """3-connected plane maps with at most 12 vertices."""
    rng = random.Random(2024)
    maps = [k4_plane(), cube()]
    maps += [wheel(k) for k in range(3, 12)]
    maps += [prism(k) for k in range(3, 7)]
    maps += [double_wheel(k) for k in range(3, 11)]
    for n in range(4, 13):
        for _ in range(3):
            maps.append(plane_triangulation(n, rng))
    out = tuple(m for m in maps if m.vertex_count <= 12 and is_three_connected(m))
    return out


@functools.lru_cache(maxsize=None)
def surface_corpus(count: int = 500, seed: int = 11) -> tuple:
    """Maps of genus 1 to 3 with at most 40 vertices."""
    rng = random.Random(seed)
    named = [k33_torus(), k4_torus(), k34_torus(), torus_grid(3, 3), torus_grid(4, 5), torus_triangulation(3, 4)]
    maps = list(named)
    while len(maps) < count - 1:
        g = 1 + len(maps) % 3
        maps.append(random_map_of_genus(rng, g, n_max=40))
    maps.append(cubic_genus3())
    return tuple(maps)
