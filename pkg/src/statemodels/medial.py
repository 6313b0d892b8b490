"""Medial graph of a ribbon graph, its smoothings and arrow coverings.

For a ribbon graph ``R`` the medial graph has one 4-valent node per ribbon.
Half-strands are the corners of ribbon ends: for dart ``d`` the half-strand
``2*d`` sits on the corner between ``d`` and ``sigma(d)`` and ``2*d + 1`` on
the corner between ``sigma^-1(d)`` and ``d``. Medial edge ``x`` is the arc of
disc boundary from ``2*x`` to ``2*sigma(x) + 1``; its forward direction is
that order. Discs without ribbons carry a free circle.

At the node of edge ``(d, d')``::

    pairing A (disc-following):   {2d, 2d+1}, {2d', 2d'+1}
    pairing B (ribbon-following): {2d+1, 2d'}, {2d'+1, 2d}

so B-smoothing exactly the ribbons of a subset traces that subset's boundary.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .cmap import CapExceededError, CombinatorialMap
from .laurent import LaurentPolynomial

__all__ = [
    "MedialGraph",
    "Smoothing",
    "ArrowCovering",
    "RhoSummand",
    "DEFAULT_NODE_CAP",
    "medial",
    "smooth",
    "smoothing_cycles",
    "arrow_coverings",
    "smoothing_arrow_coverings",
    "rho",
    "cycle_weight",
    "cycle_weight_max",
    "w_eval",
    "vertex_sum",
]

DEFAULT_NODE_CAP = 16

# local orientation classes at a node
A_ONLY, B_ONLY, BOTH = "A", "B", "AB"


@dataclass(frozen=True)
class MedialGraph:
    ribbon: CombinatorialMap
    # medial edge x joins half-strand ends[x][0] -> ends[x][1] (forward)
    ends: tuple[tuple[int, int], ...]
    pairing_a: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    pairing_b: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    free_loops: int

    @property
    def num_nodes(self) -> int:
        return len(self.pairing_a)

    @property
    def num_edges(self) -> int:
        return len(self.ends)

    def node_half_strands(self, node: int) -> tuple[int, int, int, int]:
        d, e = self.ribbon.edges[node]
        return 2 * d, 2 * d + 1, 2 * e, 2 * e + 1

    def edge_at(self, h: int) -> int:
        """Medial edge incident to half-strand ``h``."""
        return self._edge_of_half[h]

    @cached_property
    def _edge_of_half(self) -> tuple[int, ...]:
        out = [0] * (2 * self.num_edges)
        for x, (h0, h1) in enumerate(self.ends):
            out[h0] = x
            out[h1] = x
        return tuple(out)

    def regions(self) -> dict[str, list[list[int]]]:
        """Checkerboard regions as lists of bounding medial edges.

        Black regions are the discs of the ribbon graph (with their ribbon
        halves); white regions are its faces.
        """
        r = self.ribbon
        black = [sorted(rot) for rot in r.rotations if rot]
        white = [sorted(_pred(r, d) for d in face) for face in r.faces]
        return {"black": black, "white": white}

    def to_json(self) -> dict:
        return {
            "nodes": [
                {"ribbon": i, "half_strands": list(self.node_half_strands(i)),
                 "pairing_A": [list(p) for p in self.pairing_a[i]],
                 "pairing_B": [list(p) for p in self.pairing_b[i]]}
                for i in range(self.num_nodes)
            ],
            "strands": [list(e) for e in self.ends],
            "free_loops": self.free_loops,
            "regions": self.regions(),
        }


def _pred(r: CombinatorialMap, d: int) -> int:
    # medial edge whose disc arc ends at the corner before d
    rot = r.rotations[r.vertex_of[d]]
    return rot[rot.index(d) - 1]


def medial(r: CombinatorialMap) -> MedialGraph:
    ends = tuple((2 * x, 2 * r.sigma[x] + 1) for x in range(r.num_darts))
    pa, pb = [], []
    for d, e in r.edges:
        pa.append(((2 * d, 2 * d + 1), (2 * e, 2 * e + 1)))
        pb.append(((2 * d + 1, 2 * e), (2 * e + 1, 2 * d)))
    free = sum(1 for rot in r.rotations if not rot)
    return MedialGraph(r, ends, tuple(pa), tuple(pb), free)


@dataclass(frozen=True)
class Smoothing:
    """Bitmask of nodes resolved by pairing B; the rest use pairing A."""

    b_mask: int
    num_nodes: int

    def choice(self, node: int) -> str:
        return "B" if self.b_mask >> node & 1 else "A"

    @property
    def num_b(self) -> int:
        return bin(self.b_mask).count("1")

    @classmethod
    def from_choices(cls, choices: Sequence[str]) -> Smoothing:
        mask = 0
        for i, c in enumerate(choices):
            if c not in ("A", "B"):
                raise ValueError(f"smoothing choice must be 'A' or 'B', got {c!r}")
            if c == "B":
                mask |= 1 << i
        return cls(mask, len(choices))


@dataclass(frozen=True)
class ArrowCovering:
    """Orientation of every medial edge: ``+1`` forward, ``-1`` backward."""

    orientation: tuple[int, ...]

    def reversed(self) -> ArrowCovering:
        return ArrowCovering(tuple(-o for o in self.orientation))


@dataclass(frozen=True)
class RhoSummand:
    smoothing: Smoothing
    covering: ArrowCovering
    b_count: int = field(default=0)


def _pairs(m: MedialGraph, s: Smoothing):
    for i in range(m.num_nodes):
        yield from (m.pairing_b[i] if s.b_mask >> i & 1 else m.pairing_a[i])


def smoothing_cycles(m: MedialGraph, s: Smoothing) -> list[tuple[list[int], list[int]]]:
    """Cycles of a smoothing (free circles excluded).

    Each cycle is ``(edges, directions)`` in traversal order, where
    ``directions[j]`` is ``+1`` when ``edges[j]`` is run forward.
    """
    partner = {}
    for h1, h2 in _pairs(m, s):
        partner[h1] = h2
        partner[h2] = h1
    edge_of = m._edge_of_half
    seen = [False] * m.num_edges
    cycles = []
    for start in range(m.num_edges):
        if seen[start]:
            continue
        edges, dirs = [], []
        x, o = start, 1
        while not seen[x]:
            seen[x] = True
            edges.append(x)
            dirs.append(o)
            nh = partner[m.ends[x][1] if o == 1 else m.ends[x][0]]
            x = edge_of[nh]
            o = 1 if m.ends[x][0] == nh else -1
        cycles.append((edges, dirs))
    return cycles


def smooth(m: MedialGraph, s: Smoothing) -> tuple[int, int]:
    """``(p(s), B(s))``: number of cycles (free circles included) and B count."""
    parent = list(range(2 * m.num_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = 2 * m.num_edges
    for h1, h2 in list(m.ends) + list(_pairs(m, s)):
        r1, r2 = find(h1), find(h2)
        if r1 != r2:
            parent[r1] = r2
            comps -= 1
    return comps + m.free_loops, s.num_b


def _direction_at(m: MedialGraph, a: ArrowCovering, h: int) -> int:
    """``+1`` if the edge at ``h`` points into the node, ``-1`` if out."""
    x = m._edge_of_half[h]
    into = 1 if m.ends[x][1] == h else -1
    return into * a.orientation[x]


def arrow_coverings(m: MedialGraph, cap: int = DEFAULT_NODE_CAP) -> Iterator[ArrowCovering]:
    """All 2-in-2-out orientations, by backtracking in medial-edge order."""
    if m.num_nodes > cap:
        raise CapExceededError(f"{m.num_nodes} medial nodes exceeds arrow-covering cap {cap}")
    node_of_half = {}
    for i in range(m.num_nodes):
        for h in m.node_half_strands(i):
            node_of_half[h] = i
    # count of incident half-strands still unassigned, and net in-minus-out
    remaining = [4] * m.num_nodes
    balance = [0] * m.num_nodes
    orient = [0] * m.num_edges
    touches = [(node_of_half[h0], node_of_half[h1]) for h0, h1 in m.ends]

    def assign(x: int, o: int, sign: int):
        u, v = touches[x]
        # forward: leaves u (out), enters v (in)
        balance[u] -= o * sign
        balance[v] += o * sign
        remaining[u] -= sign
        remaining[v] -= sign

    def ok(x: int) -> bool:
        for n in touches[x]:
            if abs(balance[n]) > remaining[n]:
                return False
        return True

    def rec(x: int):
        if x == m.num_edges:
            yield ArrowCovering(tuple(orient))
            return
        for o in (1, -1):
            orient[x] = o
            assign(x, o, 1)
            if ok(x):
                yield from rec(x + 1)
            assign(x, o, -1)
        orient[x] = 0

    yield from rec(0)


def _local_class(m: MedialGraph, a: ArrowCovering, node: int) -> str:
    (p1, p2), (p3, p4) = m.pairing_a[node]
    da = [_direction_at(m, a, h) for h in (p1, p2, p3, p4)]
    if sum(da) != 0:
        raise ValueError(f"node {node} is not 2-in-2-out under this covering")
    a_ok = da[0] != da[1] and da[2] != da[3]
    (q1, q2), (q3, q4) = m.pairing_b[node]
    b_ok = _direction_at(m, a, q1) != _direction_at(m, a, q2) and _direction_at(m, a, q3) != _direction_at(m, a, q4)
    if a_ok and b_ok:
        return BOTH
    if a_ok:
        return A_ONLY
    if b_ok:
        return B_ONLY
    raise RuntimeError(f"node {node}: orientation consistent with neither pairing")


def rho(m: MedialGraph, a: ArrowCovering) -> list[RhoSummand]:
    """Expand a covering into the smoothings consistent with it.

    Each summand keeps the edge orientations; its weight is ``r`` to the
    number of B-resolutions, recorded as ``b_count``.
    """
    fixed_b = 0
    free_nodes = []
    for i in range(m.num_nodes):
        cls = _local_class(m, a, i)
        if cls == B_ONLY:
            fixed_b |= 1 << i
        elif cls == BOTH:
            free_nodes.append(i)
    out = []
    for bits in product((0, 1), repeat=len(free_nodes)):
        mask = fixed_b
        for i, b in zip(free_nodes, bits):
            if b:
                mask |= 1 << i
        s = Smoothing(mask, m.num_nodes)
        out.append(RhoSummand(s, a, s.num_b))
    return out


def smoothing_arrow_coverings(m: MedialGraph, s: Smoothing) -> Iterator[ArrowCovering]:
    """Arrow coverings of a smoothing: each cycle oriented either way."""
    cycles = smoothing_cycles(m, s)
    for signs in product((1, -1), repeat=len(cycles)):
        orient = [0] * m.num_edges
        for (edges, dirs), sg in zip(cycles, signs):
            for x, o in zip(edges, dirs):
                orient[x] = o * sg
        yield ArrowCovering(tuple(orient))


CycleWeight = Callable[[Sequence[int], Sequence[int]], int]


def cycle_weight(edges: Sequence[int], orientation: Sequence[int]) -> int:
    """``+1`` iff the cycle runs forward along its least medial edge."""
    j = min(range(len(edges)), key=edges.__getitem__)
    return orientation[j]


def cycle_weight_max(edges: Sequence[int], orientation: Sequence[int]) -> int:
    """Alternative antisymmetric weight: ``+1`` iff backward along the largest edge."""
    j = max(range(len(edges)), key=edges.__getitem__)
    return -orientation[j]


def _ring(t: str, r: str):
    return LaurentPolynomial.variables(t, r)


def w_eval(m: MedialGraph, summands: Sequence[RhoSummand], weight: CycleWeight = cycle_weight,
           t: str = "t", r: str = "r") -> LaurentPolynomial:
    """Linear extension of ``cycles -> prod t^weight(c)`` with coefficient ``r^B``."""
    T, R = _ring(t, r)
    counts: dict[tuple[int, int], int] = {}
    for sm in summands:
        exp = 0
        for edges, _ in smoothing_cycles(m, sm.smoothing):
            exp += weight(edges, [sm.covering.orientation[x] for x in edges])
        key = (exp, sm.b_count)
        counts[key] = counts.get(key, 0) + 1
    # free circles: both orientations, weights t and t^-1
    total = LaurentPolynomial(T.vars, counts)
    return total * (T + T ** -1) ** m.free_loops


def vertex_sum(m: MedialGraph, weight: CycleWeight = cycle_weight, cap: int = DEFAULT_NODE_CAP,
               t: str = "t", r: str = "r") -> LaurentPolynomial:
    """``sum over a in AC(M) of W(rho(a))`` as a polynomial in ``t`` and ``r``."""
    T, _ = _ring(t, r)
    total = LaurentPolynomial.zero(T.vars)
    for a in arrow_coverings(m, cap):
        total = total + w_eval(m, rho(m, a), weight, t, r)
    return total
