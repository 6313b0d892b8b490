from conftest import seeds
from statemodels.cmap import CombinatorialMap, SignedPlaneGraph, boundary_components
from statemodels.generators import random_signed_plane_graph
from statemodels.unsign import dual_along, fatten, subgraph_correspondence, unsign


def _graphs(n, base):
    for rng in seeds(n, base):
        yield random_signed_plane_graph(rng, rng.randint(1, 5), rng.randint(0, 9))


def test_boundary_preserved_under_symmetric_difference():
    for g in _graphs(80, 10):
        r = unsign(g).map
        for A in range(1 << g.map.num_edges):
            assert boundary_components(r, subgraph_correspondence(g, A)) == boundary_components(g.map, A)


def test_all_negative_graph_is_unchanged():
    for g in _graphs(20, 11):
        neg = SignedPlaneGraph(g.map, [-1] * g.map.num_edges)
        assert unsign(neg).map == g.map


def test_dual_along_is_an_involution():
    for g in _graphs(40, 12):
        pos = g.positive_mask
        assert dual_along(dual_along(g.map, pos), pos) == g.map


def test_single_positive_edge():
    # a positive bar becomes a loop on one disc
    g = SignedPlaneGraph(CombinatorialMap([(0,), (1,)], [(0, 1)]), ["+"])
    r = unsign(g).map
    assert r.num_vertices == 1 and r.is_loop(0)
    assert boundary_components(r, 0) == 1 and boundary_components(r, 1) == 2


def test_edge_correspondence_and_fattening():
    g = next(_graphs(1, 13))
    u = unsign(g)
    assert u.correspond(g.map.full_mask) == g.map.full_mask
    f = fatten(g)
    assert f.positive_mask == g.positive_mask and f.boundary(0) == g.map.num_vertices
