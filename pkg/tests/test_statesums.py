import pytest

from conftest import planar_loop, seeds, torus_bouquet
from statemodels.cmap import CapExceededError, CombinatorialMap, components_rank_nullity, genus
from statemodels.generators import (
    random_connected_map,
    random_graph_edges,
    random_map,
    random_signed_plane_graph,
)
from statemodels.knotio import checkerboard, tait_graph
from statemodels.laurent import LaurentPolynomial, substitute
from statemodels.medial import cycle_weight_max
from statemodels.statesums import (
    bracket,
    bracket_potts,
    bracket_ribbon,
    bracket_surface,
    bracket_vertex,
    bracket_via_br,
    br_bracket_evaluation,
    br_polynomial,
    br_polynomial_rewritten,
    constrained_weights,
    ribbon_subset_sum,
    smoothing_sum,
    surface_diagram,
    tutte_check,
    tutte_polynomial,
    verify_all,
    vertex_model_sum,
    z_fk,
    z_fk_constrained,
    z_potts_coloring,
)

A = LaurentPolynomial.variable("A")


def evaluate(p, point):
    """Integer value of a polynomial with no negative exponents."""
    total = 0
    for exp, c in p.items():
        term = c
        for name, e in zip(p.vars, exp):
            term *= point[name] ** e
        total += term
    return total


def test_fk_equals_colouring_sum_symbolically():
    for rng in seeds(40, 40):
        n = rng.randint(1, 4)
        edges = random_graph_edges(rng, n, rng.randint(0, 5))
        for q in (1, 2, 3):
            assert z_fk((n, edges), q=q) == z_potts_coloring((n, edges), q=q)


def test_fk_symbolic_in_q():
    # q-polynomial of a triangle: q^3 + 3 q^2 w + 3 q w^2 + q w^3 when all weights equal w
    tri = (3, [(0, 1), (1, 2), (2, 0)])
    q, w = LaurentPolynomial.variables("q", "w")
    assert z_fk(tri, [w, w, w], q) == q ** 3 + 3 * q ** 2 * w + 3 * q * w ** 2 + q * w ** 3
    assert z_fk(tri).vars == ("q", "w0", "w1", "w2")


def test_colouring_cap():
    with pytest.raises(CapExceededError):
        z_potts_coloring((20, []), q=3)


def test_constrained_chain_on_plane_graphs():
    t, x = LaurentPolynomial.variables("t", "x")
    for rng in seeds(40, 41):
        g = random_signed_plane_graph(rng, rng.randint(1, 5), rng.randint(0, 7))
        z = z_fk_constrained(g)
        assert z == ribbon_subset_sum(g) == smoothing_sum(g)
        assert vertex_model_sum(g) == substitute(z, {"u": t + t ** -1, "x": x})


def test_constrained_weights():
    g = random_signed_plane_graph(3, 2, 3)
    u, x = LaurentPolynomial.variables("u", "x")
    for s, w in zip(g.signs, constrained_weights(g)):
        assert w == (u * x ** -1 if s > 0 else u * x)


def test_br_small_examples():
    assert str(br_polynomial(planar_loop())) == "Y + 1"
    assert str(br_polynomial(torus_bouquet())) == "Y^2*Z^2 + 2*Y + 1"
    bar = CombinatorialMap([(0,), (1,)], [(0, 1)])
    assert str(br_polynomial(bar)) == "x + 1"


def test_br_z_exponent_is_twice_genus():
    for rng in seeds(30, 42):
        m = random_map(rng, rng.randint(1, 3), rng.randint(0, 6))
        r_full = components_rank_nullity(m, m.full_mask)[1]
        seen = {}
        for S in range(1 << m.num_edges):
            _, r, n = components_rank_nullity(m, S)
            seen.setdefault((r_full - r, n), set()).add(2 * genus(m, S))
        for (a, n, z), c in br_polynomial(m).items():
            assert z % 2 == 0 and z in seen[(a, n)]


def test_br_rewritten_form_agrees():
    for rng in seeds(30, 43):
        m = random_map(rng, rng.randint(1, 4), rng.randint(0, 6))
        assert br_polynomial_rewritten(m) == br_polynomial(m)


def test_tutte_against_networkx():
    nx = pytest.importorskip("networkx")
    sympy = pytest.importorskip("sympy")
    X, Y = sympy.symbols("x y")
    for rng in seeds(25, 44):
        m = random_connected_map(rng, rng.randint(1, 4), rng.randint(3, 6))
        G = nx.MultiGraph()
        G.add_nodes_from(range(m.num_vertices))
        G.add_edges_from(m.edge_vertices(e) for e in range(m.num_edges))
        oracle = nx.tutte_polynomial(G)
        ours = tutte_check(m)
        for xv, yv in ((2, 3), (3, 2), (1, 5), (4, 4)):
            want = int(oracle.subs({X: xv, Y: yv}))
            assert evaluate(ours, {"x": xv - 1, "Y": yv}) == want


def test_tutte_known_values():
    # triangle: X^2 + X + Y
    tri = CombinatorialMap([(0, 5), (1, 2), (3, 4)], [(0, 1), (2, 3), (4, 5)])
    x, Y = LaurentPolynomial.variables("x", "Y")
    X = x + 1
    assert tutte_polynomial(tri) == X ** 2 + X + Y


def test_bracket_routes_on_tait_graphs(corpus):
    for d in corpus.values():
        direct = bracket(d)
        for outer in range(len(checkerboard(d).faces)):
            T = tait_graph(d, checkerboard(d, outer))
            assert bracket_potts(T) == direct
            assert bracket_ribbon(T) == direct
            assert bracket_via_br(T) == direct
            assert bracket_surface(surface_diagram(T)) == direct
            assert bracket_vertex(T) == direct
            assert bracket_vertex(T, cycle_weight_max) == direct


def test_br_evaluation_needs_connected_ribbon():
    two = CombinatorialMap([(), ()], [])
    with pytest.raises(ValueError, match="connected"):
        br_bracket_evaluation(two)


def test_br_evaluation_of_torus_bouquet_is_laurent():
    # genus-one all-A ribbon graph: an alternating diagram on the torus
    val = br_bracket_evaluation(torus_bouquet())
    assert val.vars == ("A",)
    sd_val = bracket_surface(surface_diagram_of(torus_bouquet()))
    assert val == sd_val


def surface_diagram_of(r):
    from statemodels.statesums import alternating_surface_diagram

    sd = alternating_surface_diagram(r)
    assert sd.genus == r.genus()
    return sd


def test_surface_bracket_equals_br_on_random_ribbon_graphs():
    for rng in seeds(25, 45):
        v = rng.randint(1, 3)
        r = random_connected_map(rng, v, rng.randint(max(v - 1, 1), 6))
        assert br_bracket_evaluation(r) == bracket_surface(surface_diagram_of(r))


def test_unknown_method(corpus):
    with pytest.raises(ValueError, match="unknown method"):
        bracket(corpus["hopf"], "magic")


def test_cap_errors(corpus):
    d = corpus["granny"]
    with pytest.raises(CapExceededError):
        bracket(d, "potts", edge_cap=3)
    with pytest.raises(CapExceededError):
        bracket(d, "direct", crossing_cap=3)
    with pytest.raises(CapExceededError):
        bracket(d, "vertex", node_cap=3)


def test_verify_report_json(corpus):
    rep = verify_all(corpus["trefoil"])
    js = rep.to_json()
    assert js["agree"] is True
    assert set(js["routes"]) == {"direct", "potts", "ribbon", "br", "smoothing", "vertex"}
    assert len(set(js["routes"].values())) == 1
    bad = verify_all(corpus["trefoil"], edge_cap=1)
    assert not bad.agree and "potts" in bad.errors
