"""Combinatorial maps (rotation systems) on orientable surfaces.

A map has darts ``0 .. 2|E|-1``. ``alpha`` pairs the two darts of each edge
and the rotation of each vertex lists its darts counterclockwise. Vertices
may be isolated (empty rotation), which a bare permutation cannot express,
so rotations are stored per vertex.

Edge subsets are passed around as int bitmasks over edge indices.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "CombinatorialMap",
    "SignedPlaneGraph",
    "SpanningSubgraph",
    "CapExceededError",
    "DEFAULT_EDGE_CAP",
    "edge_mask",
    "components_rank_nullity",
    "boundary_components",
    "genus",
    "enumerate_subsets",
    "load_map",
    "dump_map",
]

DEFAULT_EDGE_CAP = 24


class CapExceededError(ValueError):
    """An exhaustive enumeration would exceed its configured size cap."""


class CombinatorialMap:
    """Immutable rotation system with explicit edge pairing.

    Parameters
    ----------
    rotations : sequence of sequences of int
        Counterclockwise dart order at each vertex. Empty for isolated vertices.
    edges : sequence of pairs
        ``edges[i] = (d, d')`` are the two darts of edge ``i``.
    """

    def __init__(self, rotations: Sequence[Sequence[int]], edges: Sequence[Sequence[int]]):
        self.rotations = tuple(tuple(int(d) for d in r) for r in rotations)
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        n = 2 * len(self.edges)
        darts = sorted(d for r in self.rotations for d in r)
        if darts != list(range(n)):
            raise ValueError(f"rotations must list each dart 0..{n - 1} exactly once")
        alpha = [-1] * n
        edge_of = [-1] * n
        for i, (a, b) in enumerate(self.edges):
            if a == b or not (0 <= a < n and 0 <= b < n) or alpha[a] != -1 or alpha[b] != -1:
                raise ValueError(f"edge {i} = {(a, b)} does not form a fixed-point-free involution")
            alpha[a], alpha[b] = b, a
            edge_of[a] = edge_of[b] = i
        sigma = [0] * n
        vertex_of = [0] * n
        for v, rot in enumerate(self.rotations):
            for j, d in enumerate(rot):
                sigma[d] = rot[(j + 1) % len(rot)]
                vertex_of[d] = v
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        self.vertex_of = tuple(vertex_of)
        self.edge_of = tuple(edge_of)

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_darts(self) -> int:
        return 2 * len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def edge_vertices(self, e: int) -> tuple[int, int]:
        a, b = self.edges[e]
        return self.vertex_of[a], self.vertex_of[b]

    def is_loop(self, e: int) -> bool:
        u, v = self.edge_vertices(e)
        return u == v

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of ``phi = sigma o alpha`` (faces of the full map), by least dart."""
        seen = [False] * self.num_darts
        out = []
        for d in range(self.num_darts):
            if seen[d]:
                continue
            orbit = []
            x = d
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                x = self.sigma[self.alpha[x]]
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        f = [0] * self.num_darts
        for i, orbit in enumerate(self.faces):
            for d in orbit:
                f[d] = i
        return tuple(f)

    def num_faces(self) -> int:
        """Faces of the closed surface, counting one per isolated vertex."""
        return boundary_components(self, self.full_mask)

    def genus(self) -> int:
        return genus(self, self.full_mask)

    def is_connected(self) -> bool:
        return components_rank_nullity(self, self.full_mask)[0] <= 1

    def relabel_vertices(self, order: Sequence[int]) -> CombinatorialMap:
        return CombinatorialMap([self.rotations[v] for v in order], self.edges)

    def mirror(self) -> CombinatorialMap:
        """Reverse every rotation (orientation-reversed surface)."""
        return CombinatorialMap([tuple(reversed(r)) for r in self.rotations], self.edges)

    def to_json(self) -> dict:
        return {"sigma": [list(r) for r in self.rotations], "alpha": [list(e) for e in self.edges]}

    def __eq__(self, other) -> bool:
        if not isinstance(other, CombinatorialMap):
            return NotImplemented
        return self.edges == other.edges and _canon_rot(self.rotations) == _canon_rot(other.rotations)

    def __hash__(self) -> int:
        return hash((self.edges, _canon_rot(self.rotations)))

    def __repr__(self) -> str:
        return f"CombinatorialMap(V={self.num_vertices}, E={self.num_edges}, rotations={self.rotations})"


def _canon_rot(rotations):
    # rotation lists are cyclic; compare up to cyclic shift and vertex order
    out = []
    for r in rotations:
        if r:
            i = r.index(min(r))
            out.append(r[i:] + r[:i])
        else:
            out.append(())
    return tuple(sorted(out))


@dataclass(frozen=True)
class SpanningSubgraph:
    """Edge subset ``mask`` of ``parent`` (all vertices kept)."""

    parent: CombinatorialMap
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.parent.num_edges:
            raise ValueError(f"mask {self.mask:#b} exceeds {self.parent.num_edges} edges")

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.parent.num_edges) if self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")


def edge_mask(edges: Iterable[int], num_edges: int | None = None) -> int:
    m = 0
    for e in edges:
        if e < 0 or (num_edges is not None and e >= num_edges):
            raise IndexError(f"edge index {e} out of range")
        m |= 1 << e
    return m


def _as_mask(m: CombinatorialMap, A) -> int:
    if isinstance(A, SpanningSubgraph):
        return A.mask
    if isinstance(A, int):
        if A < 0 or A >> m.num_edges:
            raise IndexError(f"edge mask {A:#b} out of range for {m.num_edges} edges")
        return A
    return edge_mask(A, m.num_edges)


def components_rank_nullity(m: CombinatorialMap, A=0) -> tuple[int, int, int]:
    """``(k(A), r(A), n(A))`` for the spanning subgraph ``(V, A)``."""
    mask = _as_mask(m, A)
    parent = list(range(m.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    k = m.num_vertices
    size = 0
    for e in range(m.num_edges):
        if mask >> e & 1:
            size += 1
            u, v = m.edge_vertices(e)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                k -= 1
    r = m.num_vertices - k
    return k, r, size - r


def boundary_components(m: CombinatorialMap, A=0) -> int:
    """Number of boundary circles of the ribbon subgraph ``(V, A)``.

    Orbits of ``sigma_A o alpha`` on darts of ``A``, where ``sigma_A`` skips
    darts outside ``A``, plus one circle per vertex meeting no edge of ``A``.
    """
    mask = _as_mask(m, A)
    sigma, alpha, edge_of = m.sigma, m.alpha, m.edge_of
    inA = [mask >> edge_of[d] & 1 for d in range(m.num_darts)]
    seen = [False] * m.num_darts
    count = 0
    for d in range(m.num_darts):
        if not inA[d] or seen[d]:
            continue
        count += 1
        x = d
        while not seen[x]:
            seen[x] = True
            y = sigma[alpha[x]]
            while not inA[y]:
                y = sigma[y]
            x = y
    for rot in m.rotations:
        if not any(inA[d] for d in rot):
            count += 1
    return count


def genus(m: CombinatorialMap, A=0) -> int:
    """Genus of the ribbon subgraph ``(V, A)`` from Euler's formula."""
    mask = _as_mask(m, A)
    k, _, _ = components_rank_nullity(m, mask)
    twice = 2 * k - m.num_vertices + bin(mask).count("1") - boundary_components(m, mask)
    if twice < 0 or twice % 2:
        raise RuntimeError(f"Euler characteristic inconsistent (2g = {twice}); boundary tracing is broken")
    return twice // 2


def enumerate_subsets(m: CombinatorialMap, cap: int = DEFAULT_EDGE_CAP) -> Iterator[SpanningSubgraph]:
    """All ``2^|E|`` spanning subgraphs in increasing bitmask order."""
    if m.num_edges > cap:
        raise CapExceededError(f"{m.num_edges} edges exceeds subset enumeration cap {cap}")
    for mask in range(1 << m.num_edges):
        yield SpanningSubgraph(m, mask)


class SignedPlaneGraph:
    """A genus-0 map with a sign ``+1``/``-1`` on every edge."""

    __slots__ = ("map", "signs")

    def __init__(self, map: CombinatorialMap, signs: Sequence):
        signs = tuple(_sign(s) for s in signs)
        if len(signs) != map.num_edges:
            raise ValueError(f"{len(signs)} signs for {map.num_edges} edges")
        k, _, _ = components_rank_nullity(map, map.full_mask)
        euler = map.num_vertices - map.num_edges + map.num_faces()
        if euler != 2 * k:
            raise ValueError(f"map is not plane: V - E + F = {euler} but 2k = {2 * k}")
        self.map = map
        self.signs = signs

    @property
    def positive_mask(self) -> int:
        return edge_mask(i for i, s in enumerate(self.signs) if s > 0)

    @property
    def negative_mask(self) -> int:
        return self.map.full_mask & ~self.positive_mask

    def to_json(self) -> dict:
        d = self.map.to_json()
        d["signs"] = ["+" if s > 0 else "-" for s in self.signs]
        return d

    def __repr__(self) -> str:
        s = "".join("+" if x > 0 else "-" for x in self.signs)
        return f"SignedPlaneGraph(V={self.map.num_vertices}, E={self.map.num_edges}, signs={s!r})"


def _sign(s) -> int:
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise ValueError(f"invalid sign {s!r}")


def load_map(source) -> CombinatorialMap | SignedPlaneGraph:
    """Read the JSON map format; a ``"signs"`` field yields a :class:`SignedPlaneGraph`."""
    if isinstance(source, (str, bytes)):
        data = json.loads(source)
    elif isinstance(source, dict):
        data = source
    else:
        data = json.load(source)
    try:
        m = CombinatorialMap(data["sigma"], data["alpha"])
    except KeyError as exc:
        raise ValueError(f"map JSON is missing field {exc}") from None
    if "signs" in data:
        return SignedPlaneGraph(m, data["signs"])
    return m


def dump_map(obj: CombinatorialMap | SignedPlaneGraph) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
