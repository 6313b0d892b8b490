"""Unsigning of signed plane graphs.

The fattening of a signed plane graph is the same rotation system read as a
ribbon graph. The unsigned ribbon graph ``R_G`` has one disc per boundary
circle of the positive spanning subgraph ``(V, E_+)``. Negative edges keep
their attachment points on those circles; each positive edge is replaced by
a ribbon joining the midpoints of its two sides. Darts and edge indices are
preserved, so the edge correspondence is the identity and only the rotation
changes.

The construction is pinned by one property, checked exhaustively in the test
suite::

    boundary_components(R_G, A ^ E_+) == boundary_components(G, A)
"""

from __future__ import annotations

from dataclasses import dataclass

from .cmap import CombinatorialMap, SignedPlaneGraph, boundary_components

__all__ = ["FattenedGraph", "UnsignedRibbonGraph", "fatten", "unsign", "subgraph_correspondence", "dual_along"]


@dataclass(frozen=True)
class FattenedGraph:
    """A signed plane graph viewed as a signed ribbon graph."""

    map: CombinatorialMap
    signs: tuple[int, ...]

    @property
    def positive_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s > 0)

    def boundary(self, A: int) -> int:
        return boundary_components(self.map, A)


@dataclass(frozen=True)
class UnsignedRibbonGraph:
    """``R_G`` together with the edge bijection ``E(G) -> E(R_G)``."""

    map: CombinatorialMap
    edge_correspondence: tuple[int, ...]
    source_positive_mask: int

    def correspond(self, A: int) -> int:
        """Image of an edge mask of ``G`` under the edge bijection."""
        out = 0
        for i, j in enumerate(self.edge_correspondence):
            if A >> i & 1:
                out |= 1 << j
        return out

    def to_json(self) -> dict:
        return self.map.to_json()


def fatten(g: SignedPlaneGraph) -> FattenedGraph:
    return FattenedGraph(g.map, g.signs)


def dual_along(m: CombinatorialMap, mask: int) -> CombinatorialMap:
    """Rotation system whose discs are the boundary circles of ``(V, mask)``.

    Walking a circle visits, in order: the side of an edge in ``mask`` (slot
    named by the dart the side leaves from), then the darts outside ``mask``
    passed on the disc before the next edge of ``mask``. Vertices meeting no
    edge of ``mask`` are kept as they are.
    """
    sigma, alpha, edge_of = m.sigma, m.alpha, m.edge_of
    inS = [mask >> edge_of[d] & 1 for d in range(m.num_darts)]
    rotations: list[tuple[int, ...]] = []
    seen = [False] * m.num_darts
    for d in range(m.num_darts):
        if not inS[d] or seen[d]:
            continue
        cycle = []
        x = d
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            y = sigma[alpha[x]]
            while not inS[y]:
                cycle.append(y)
                y = sigma[y]
            x = y
        rotations.append(tuple(cycle))
    for rot in m.rotations:
        if not any(inS[d] for d in rot):
            rotations.append(rot)
    rotations.sort(key=lambda r: (min(r) if r else m.num_darts, len(r) == 0))
    return CombinatorialMap(rotations, m.edges)


def unsign(g: SignedPlaneGraph) -> UnsignedRibbonGraph:
    pos = g.positive_mask
    r = dual_along(g.map, pos)
    return UnsignedRibbonGraph(r, tuple(range(g.map.num_edges)), pos)


def subgraph_correspondence(g: SignedPlaneGraph, A: int) -> int:
    """Edge mask ``S_A = (A & E_-) | (E_+ & ~A)`` of ``R_G``."""
    return A ^ g.positive_mask
