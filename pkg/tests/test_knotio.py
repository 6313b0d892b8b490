import itertools

import pytest

from statemodels.cmap import boundary_components, genus
from statemodels.knotio import (
    bracket_direct,
    checkerboard,
    delta,
    format_pd,
    jones,
    parse_pd,
    tait_graph,
    writhe,
)
from statemodels.laurent import LaurentPolynomial

A = LaurentPolynomial.variable("A")

FROZEN = {
    "unknot_0": "1",
    "unknot_kink": "-A^3",
    "unknot_2kinks": "A^-6",
    "hopf": "-A^4 - A^-4",
    "trefoil": "-A^5 - A^-3 + A^-7",
    "trefoil_mirror": "A^7 - A^3 - A^-5",
    "figure_eight": "A^8 - A^4 + 1 - A^-4 + A^-8",
    "knot_5_2": "A^9 - A^5 + A - 2*A^-3 + A^-7 - A^-11",
    "nonalt_6": "A^8 - A^4 + 1 - A^-4 + A^-8",
    "granny": "A^10 + 2*A^2 - 2*A^-2 + A^-6 - 2*A^-10 + A^-14",
}


def state_circles(d, state):
    """Walk the circles of one state by hand; ``state[c]`` is "A" or "B"."""
    where = {}
    for c, x in enumerate(d.crossings):
        for i, a in enumerate(x):
            where.setdefault(a, []).append((c, i))
    other_end = {}
    for p, q in where.values():
        other_end[p], other_end[q] = q, p
    seen = set()
    circles = 0
    for start in other_end:
        if start in seen:
            continue
        circles += 1
        p = start
        while p not in seen:
            seen.add(p)
            c, i = p
            q = (c, i ^ 1) if state[c] == "A" else (c, 3 - i)
            seen.add(q)
            p = other_end[q]
    return circles


def traced_bracket(d):
    """Independent state sum using hand-walked circles instead of union-find."""
    if not d.crossings:
        return LaurentPolynomial.one(["A"])
    total = LaurentPolynomial.zero(["A"])
    for state in itertools.product("AB", repeat=d.num_crossings):
        a = state.count("A") - state.count("B")
        total = total + A ** a * delta() ** (state_circles(d, state) - 1)
    return total


def test_kink_by_hand():
    # states: A gives two circles, B one circle
    d = parse_pd("X 1 1 2 2")
    assert bracket_direct(d) == A * delta() + A ** -1
    assert bracket_direct(d) == -(A ** 3)


def test_hopf_by_hand():
    # AA and BB give two circles, AB and BA one
    d = parse_pd("X 4 1 3 2\nX 2 3 1 4")
    assert bracket_direct(d) == A ** 2 * delta() + 2 + A ** -2 * delta()
    assert str(bracket_direct(d)) == "-A^4 - A^-4"


def test_frozen_values(corpus):
    assert set(corpus) == set(FROZEN)
    for name, d in corpus.items():
        assert str(bracket_direct(d)) == FROZEN[name], name


def test_direct_matches_traced_oracle(corpus):
    for d in corpus.values():
        assert bracket_direct(d) == traced_bracket(d)


def test_mirror_swaps_A(corpus):
    mirror = lambda p: p.substitute({"A": A ** -1})
    assert mirror(bracket_direct(corpus["trefoil"])) == bracket_direct(corpus["trefoil_mirror"])


def test_connected_sum_multiplies(corpus):
    assert bracket_direct(corpus["granny"]) == bracket_direct(corpus["trefoil"]) ** 2


def test_jones_values(corpus):
    t = A ** -4
    assert jones(corpus["trefoil"]) == t + t ** 3 - t ** 4
    assert jones(corpus["granny"]) == (t + t ** 3 - t ** 4) ** 2
    assert writhe(corpus["hopf"]) in (2, -2)
    w = writhe(corpus["hopf"])
    assert jones(corpus["hopf"]) == (-(A ** 3)) ** (-w) * (-(A ** 4) - A ** -4)
    for name in ("unknot_0", "unknot_kink", "unknot_2kinks"):
        assert jones(corpus[name]) == 1


def test_jones_invariant_under_knot_reversal(corpus):
    d = corpus["knot_5_2"]
    # enter arc 1 from its other end
    ends = [4 * c + i for c, x in enumerate(d.crossings) for i, a in enumerate(x) if a == d.arcs[0]]
    values = {str(jones(d, {d.arcs[0]: e})) for e in ends}
    assert len(values) == 1


def test_hopf_writhe_flips_with_one_component_reversed(corpus):
    d = corpus["hopf"]
    arc = d.arcs[0]
    ends = [4 * c + i for c, x in enumerate(d.crossings) for i, a in enumerate(x) if a == arc]
    assert sorted(writhe(d, {arc: e}) for e in ends) == [-2, 2]


def test_format_round_trip(corpus):
    for d in corpus.values():
        assert parse_pd(format_pd(d)).crossings == d.crossings


@pytest.mark.parametrize("text, match", [
    ("", "empty"),
    ("X 1 2 3", "expected"),
    ("X 1 2 3 x", "integers"),
    ("X 1 2 3 4", "exactly twice"),
    ("X 1 1 2 2\nX 3 3 4 4", "not connected"),
    ("X 0 0 1 1", "positive"),
    ("X 1 2 1 2", "not planar"),
    ("O\nX 1 1 2 2", "connected"),
])
def test_parse_errors(text, match):
    with pytest.raises(ValueError, match=match):
        parse_pd(text)


def test_parse_tolerates_comments_and_brackets():
    d = parse_pd("# kink\nX[1, 1, 2, 2]  # trailing\n")
    assert d.crossings == ((1, 1, 2, 2),)


def test_checkerboard_is_proper(corpus):
    for d in corpus.values():
        if not d.crossings:
            continue
        m = d.dart_map()
        for outer in range(len(m.faces)):
            c = checkerboard(d, outer)
            assert not c.black[outer]
            for a, b in m.edges:
                assert c.black[m.face_of[a]] != c.black[m.face_of[b]]
    with pytest.raises(ValueError, match="out of range"):
        checkerboard(corpus["trefoil"], 99)


def test_tait_graph_shape(corpus):
    for d in corpus.values():
        for outer in range(len(checkerboard(d).faces)):
            c = checkerboard(d, outer)
            T = tait_graph(d, c)
            assert T.map.num_edges == d.num_crossings
            assert T.map.num_vertices == len(c.black_faces) or not d.crossings
            assert all(genus(T.map, S) == 0 for S in range(1 << min(T.map.num_edges, 8)))


def test_tait_signs_flip_with_colour_swap(corpus):
    for name, d in corpus.items():
        if not d.crossings:
            continue
        T0 = tait_graph(d, checkerboard(d, 0))
        white = next(f for f, b in enumerate(checkerboard(d, 0).black) if b)
        T1 = tait_graph(d, checkerboard(d, white))
        assert T0.signs == tuple(-s for s in T1.signs), name


def test_alternating_diagrams_have_uniform_signs(corpus):
    for name in ("trefoil", "trefoil_mirror", "figure_eight", "knot_5_2", "hopf"):
        assert len(set(tait_graph(corpus[name]).signs)) == 1, name
    assert len(set(tait_graph(corpus["nonalt_6"]).signs)) == 2


def test_state_circles_are_tait_boundaries(corpus):
    # a state's circles bound the Tait subgraph of crossings whose smoothing joins black corners
    for d in corpus.values():
        if not d.crossings:
            continue
        T = tait_graph(d)
        for state in itertools.product("AB", repeat=d.num_crossings):
            joined = sum(1 << i for i, (s, x) in enumerate(zip(T.signs, state)) if (s > 0) == (x == "A"))
            assert state_circles(d, state) == boundary_components(T.map, joined)
