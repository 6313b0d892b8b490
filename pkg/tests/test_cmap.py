import json

import pytest

from conftest import planar_loop, seeds, torus_bouquet
from statemodels.cmap import (
    CapExceededError,
    CombinatorialMap,
    SignedPlaneGraph,
    boundary_components,
    components_rank_nullity,
    dump_map,
    enumerate_subsets,
    genus,
    load_map,
)
from statemodels.generators import random_connected_map, random_map, random_plane_map


def path3():
    return CombinatorialMap([(0,), (1, 2), (3,)], [(0, 1), (2, 3)])


def test_rank_nullity_examples():
    assert components_rank_nullity(path3(), 0) == (3, 0, 0)
    assert components_rank_nullity(planar_loop(), 1) == (1, 0, 1)
    assert components_rank_nullity(path3(), 0b11) == (1, 2, 0)


def test_boundary_examples():
    iso = CombinatorialMap([()], [])
    assert boundary_components(iso, 0) == 1
    bar = CombinatorialMap([(0,), (1,)], [(0, 1)])
    assert boundary_components(bar, 1) == 1
    assert boundary_components(planar_loop(), 1) == 2
    assert boundary_components(torus_bouquet(), 0b11) == 1


def test_genus_examples():
    assert genus(torus_bouquet(), 0b11) == 1
    assert genus(torus_bouquet(), 0b01) == 0
    assert genus(planar_loop(), 1) == 0
    assert genus(path3(), 0) == 0
    assert torus_bouquet().genus() == 1


def test_rejects_malformed_maps():
    with pytest.raises(ValueError):
        CombinatorialMap([(0, 1)], [(0, 2)])
    with pytest.raises(ValueError):
        CombinatorialMap([(0, 0)], [(0, 1)])
    with pytest.raises(IndexError):
        components_rank_nullity(path3(), 0b100)


def test_plane_graph_check():
    with pytest.raises(ValueError, match="not plane"):
        SignedPlaneGraph(torus_bouquet(), "++")
    g = SignedPlaneGraph(planar_loop(), ["-"])
    assert g.positive_mask == 0 and g.negative_mask == 1


def test_enumerate_subsets():
    assert [s.mask for s in enumerate_subsets(CombinatorialMap([()], []))] == [0]
    assert [s.mask for s in enumerate_subsets(path3())] == [0, 1, 2, 3]
    big = random_map(1, 2, 6)
    with pytest.raises(CapExceededError):
        list(enumerate_subsets(big, cap=5))


def test_json_round_trip():
    for rng in seeds(20):
        m = random_map(rng, 3, 4)
        assert load_map(dump_map(m)) == m
    g = SignedPlaneGraph(path3(), [1, -1])
    back = load_map(json.dumps(g.to_json()))
    assert back.map == g.map and back.signs == g.signs


def test_euler_consistency_exhaustive():
    # |V| - |A| + bc(A) = 2k(A) - 2g(A) with g(A) a non-negative integer
    for rng in seeds(40, 1):
        m = random_map(rng, rng.randint(1, 4), rng.randint(0, 7))
        for A in range(1 << m.num_edges):
            k, _, _ = components_rank_nullity(m, A)
            g = genus(m, A)
            assert g >= 0
            assert m.num_vertices - bin(A).count("1") + boundary_components(m, A) == 2 * k - 2 * g


def test_plane_maps_have_genus_zero_everywhere():
    for rng in seeds(30, 2):
        m = random_plane_map(rng, rng.randint(1, 5), rng.randint(0, 8))
        assert all(genus(m, A) == 0 for A in range(1 << m.num_edges))


def test_full_subset_boundary_is_face_count():
    for rng in seeds(30, 3):
        m = random_connected_map(rng, 3, 5)
        assert boundary_components(m, m.full_mask) == m.num_faces()


def test_mirror_preserves_boundaries():
    for rng in seeds(20, 4):
        m = random_map(rng, 3, 5)
        w = m.mirror()
        assert all(boundary_components(m, A) == boundary_components(w, A) for A in range(1 << m.num_edges))
