"""Random combinatorial maps for property testing and benchmarks."""

from __future__ import annotations

import random

from .cmap import CombinatorialMap, SignedPlaneGraph

__all__ = ["random_map", "random_plane_map", "random_signed_plane_graph", "random_connected_map", "random_graph_edges"]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_map(seed, num_vertices: int, num_edges: int) -> CombinatorialMap:
    """Uniform random rotation system: arbitrary genus, possibly disconnected."""
    rng = _rng(seed)
    darts = list(range(2 * num_edges))
    rng.shuffle(darts)
    rotations: list[list[int]] = [[] for _ in range(num_vertices)]
    for d in darts:
        rotations[rng.randrange(num_vertices)].append(d)
    return CombinatorialMap(rotations, [(2 * i, 2 * i + 1) for i in range(num_edges)])


def random_connected_map(seed, num_vertices: int, num_edges: int) -> CombinatorialMap:
    """Random rotation system whose underlying graph is connected."""
    if num_edges < num_vertices - 1:
        raise ValueError("too few edges to connect the vertices")
    rng = _rng(seed)
    rotations: list[list[int]] = [[] for _ in range(num_vertices)]
    order = list(range(num_vertices))
    rng.shuffle(order)
    ends = []
    for i in range(1, num_vertices):
        ends.append((order[i], order[rng.randrange(i)]))
    for _ in range(num_edges - len(ends)):
        ends.append((rng.randrange(num_vertices), rng.randrange(num_vertices)))
    rng.shuffle(ends)
    for e, (u, v) in enumerate(ends):
        for d, w in ((2 * e, u), (2 * e + 1, v)):
            rot = rotations[w]
            rot.insert(rng.randrange(len(rot) + 1), d)
    return CombinatorialMap(rotations, [(2 * i, 2 * i + 1) for i in range(num_edges)])


def random_plane_map(seed, num_vertices: int, num_edges: int) -> CombinatorialMap:
    """Random genus-0 map, built by inserting edges across a common face
    or between different components."""
    rng = _rng(seed)
    rotations: list[list[int]] = [[] for _ in range(num_vertices)]
    edges: list[tuple[int, int]] = []
    m = CombinatorialMap(rotations, edges)
    while len(edges) < num_edges:
        # a corner is (vertex, insertion index); record the face it opens onto
        corners = []
        for v, rot in enumerate(rotations):
            if not rot:
                corners.append((v, 0, ("iso", v)))
            else:
                for j, d in enumerate(rot):
                    # corner after d lies in the face containing sigma(d)
                    corners.append((v, j + 1, ("face", m.face_of[m.sigma[d]])))
        (v1, i1, f1), (v2, i2, f2) = rng.choice(corners), rng.choice(corners)
        comp = _components(m)
        if f1 != f2 and comp[v1] == comp[v2]:
            continue
        a, b = 2 * len(edges), 2 * len(edges) + 1
        new = [list(r) for r in rotations]
        if v1 == v2 and i1 == i2:
            new[v1][i1:i1] = [a, b]
        elif v1 == v2:
            lo, hi = sorted((i1, i2))
            new[v1].insert(hi, b if i1 < i2 else a)
            new[v1].insert(lo, a if i1 < i2 else b)
        else:
            new[v1].insert(i1, a)
            new[v2].insert(i2, b)
        cand = CombinatorialMap(new, edges + [(a, b)])
        if cand.num_vertices - cand.num_edges + cand.num_faces() != 2 * _num_components(cand):
            continue
        rotations, edges, m = new, edges + [(a, b)], cand
    return m


def _components(m: CombinatorialMap) -> list[int]:
    parent = list(range(m.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(m.num_edges):
        u, v = m.edge_vertices(e)
        parent[find(u)] = find(v)
    return [find(v) for v in range(m.num_vertices)]


def _num_components(m: CombinatorialMap) -> int:
    return len(set(_components(m)))


def random_signed_plane_graph(seed, num_vertices: int, num_edges: int) -> SignedPlaneGraph:
    rng = _rng(seed)
    m = random_plane_map(rng, num_vertices, num_edges)
    return SignedPlaneGraph(m, [rng.choice((1, -1)) for _ in range(num_edges)])


def random_graph_edges(seed, num_vertices: int, num_edges: int) -> list[tuple[int, int]]:
    """Random multigraph edge list (loops allowed)."""
    rng = _rng(seed)
    return [(rng.randrange(num_vertices), rng.randrange(num_vertices)) for _ in range(num_edges)]
