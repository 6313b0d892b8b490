"""Planar link diagrams from PD codes.

A crossing ``X a b c d`` lists arc labels counterclockwise, with ``a`` and
``c`` on the under-strand. Crossing ``i`` owns darts ``4*i .. 4*i+3`` in
position order, so the diagram is a 4-valent map whose edges are the arcs.
A lone ``O`` line is the crossingless unknot.

The A-smoothing of ``(a, b, c, d)`` pairs ``(a, b)`` and ``(c, d)``; the
B-smoothing pairs ``(a, d)`` and ``(b, c)``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from importlib import resources

from .cmap import CapExceededError, CombinatorialMap, SignedPlaneGraph
from .laurent import LaurentPolynomial

__all__ = [
    "LinkDiagram",
    "CheckerboardColouring",
    "TaitGraph",
    "DEFAULT_CROSSING_CAP",
    "parse_pd",
    "format_pd",
    "checkerboard",
    "tait_graph",
    "bracket_direct",
    "writhe",
    "jones",
    "delta",
    "load_corpus",
]

DEFAULT_CROSSING_CAP = 20


def delta() -> LaurentPolynomial:
    """Loop value ``-A^2 - A^-2``."""
    A = LaurentPolynomial.variable("A")
    return -(A ** 2) - A ** -2


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    name: str = ""

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({a for x in self.crossings for a in x}))

    def dart_map(self) -> CombinatorialMap:
        """The diagram as a 4-valent map (edge ``i`` is the ``i``-th arc label)."""
        where: dict[int, list[int]] = {}
        for c, x in enumerate(self.crossings):
            for i, a in enumerate(x):
                where.setdefault(a, []).append(4 * c + i)
        edges = [tuple(where[a]) for a in self.arcs]
        rotations = [tuple(range(4 * c, 4 * c + 4)) for c in range(len(self.crossings))]
        return CombinatorialMap(rotations, edges)

    def __str__(self) -> str:
        return format_pd(self)


def parse_pd(text: str, name: str = "") -> LinkDiagram:
    """Parse and validate PD text (``X a b c d`` per line, ``#`` comments)."""
    crossings = []
    unknot = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.replace(",", " ").replace("[", " ").replace("]", " ").split()
        head = fields[0].upper()
        if head == "O" and len(fields) == 1:
            unknot = True
            continue
        if head != "X" or len(fields) != 5:
            raise ValueError(f"line {lineno}: expected 'X a b c d', got {raw.strip()!r}")
        try:
            labels = tuple(int(f) for f in fields[1:])
        except ValueError:
            raise ValueError(f"line {lineno}: arc labels must be integers") from None
        if any(a <= 0 for a in labels):
            raise ValueError(f"line {lineno}: arc labels must be positive")
        crossings.append(labels)
    if unknot:
        if crossings:
            raise ValueError("an 'O' component cannot be combined with crossings (diagram must be connected)")
        return LinkDiagram((), name)
    if not crossings:
        raise ValueError("empty PD code")
    d = LinkDiagram(tuple(crossings), name)
    validate(d)
    return d


def validate(d: LinkDiagram) -> None:
    counts: dict[int, int] = {}
    for x in d.crossings:
        for a in x:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise ValueError(f"arc occurrence invariant violated: arcs {bad} do not occur exactly twice")
    m = d.dart_map()
    if not m.is_connected():
        raise ValueError("diagram is not connected")
    g = m.genus()
    if g:
        raise ValueError(f"diagram is not planar: induced 4-valent map has genus {g}")


def format_pd(d: LinkDiagram) -> str:
    if not d.crossings:
        return "O\n"
    return "".join(f"X {a} {b} {c} {e}\n" for a, b, c, e in d.crossings)


@dataclass(frozen=True)
class CheckerboardColouring:
    faces: tuple[tuple[int, ...], ...]
    black: tuple[bool, ...]
    outer: int

    def colour(self, face: int) -> str:
        return "black" if self.black[face] else "white"

    @property
    def black_faces(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.black) if b)


def checkerboard(d: LinkDiagram, outer: int | None = None) -> CheckerboardColouring:
    """Proper 2-colouring of the faces with face ``outer`` white.

    Faces are the ``sigma o alpha`` orbits of the dart map numbered by least
    dart, so the default outer face (0) is the one containing dart 0.
    """
    if not d.crossings:
        # one circle, two faces: inside and outside
        faces: tuple[tuple[int, ...], ...] = ((), ())
        o = 0 if outer is None else outer
        if o not in (0, 1):
            raise ValueError(f"outer face {o} out of range (2 faces)")
        return CheckerboardColouring(faces, tuple(i != o for i in range(2)), o)
    m = d.dart_map()
    faces = m.faces
    o = 0 if outer is None else outer
    if not 0 <= o < len(faces):
        raise ValueError(f"outer face {o} out of range ({len(faces)} faces)")
    face_of = m.face_of
    adj: list[set[int]] = [set() for _ in faces]
    for a, b in m.edges:
        fa, fb = face_of[a], face_of[b]
        adj[fa].add(fb)
        adj[fb].add(fa)
    colour: list[int | None] = [None] * len(faces)
    colour[o] = 0
    queue = deque([o])
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if colour[g] is None:
                colour[g] = 1 - colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                raise RuntimeError("faces admit no proper 2-colouring; diagram map is corrupt")
    return CheckerboardColouring(faces, tuple(c == 1 for c in colour), o)


@dataclass(frozen=True)
class TaitGraph:
    graph: SignedPlaneGraph
    crossing_of_edge: tuple[int, ...]
    colouring: CheckerboardColouring

    @property
    def map(self) -> CombinatorialMap:
        return self.graph.map

    @property
    def signs(self) -> tuple[int, ...]:
        return self.graph.signs


def tait_graph(d: LinkDiagram, c: CheckerboardColouring | None = None) -> TaitGraph:
    """Signed plane graph on the black faces, one edge per crossing.

    Edge ``i`` comes from crossing ``i``. Its darts sit on the two black
    corners of that crossing, and each black face's rotation follows the
    face's boundary walk. A crossing is ``+`` when its A-smoothing joins the
    two black corners and ``-`` when it separates them.
    """
    c = checkerboard(d) if c is None else c
    if not d.crossings:
        return TaitGraph(SignedPlaneGraph(CombinatorialMap([()], []), []), (), c)
    m = d.dart_map()
    face_of = m.face_of
    tait_dart = {}
    signs = []
    edges = []
    for i in range(d.num_crossings):
        # corner before dart 4i+j lies in face_of[4i+j]; corners alternate colour
        j = 0 if c.black[face_of[4 * i]] else 1
        x1, x2 = 4 * i + j, 4 * i + j + 2
        tait_dart[x1], tait_dart[x2] = 2 * i, 2 * i + 1
        edges.append((2 * i, 2 * i + 1))
        # A pairs positions (0,1),(2,3): joins the corners before darts 0 and 2
        signs.append(1 if j == 0 else -1)
    rotations = [tuple(tait_dart[x] for x in c.faces[f]) for f in c.black_faces]
    g = SignedPlaneGraph(CombinatorialMap(rotations, edges), signs)
    return TaitGraph(g, tuple(range(d.num_crossings)), c)


def bracket_direct(d: LinkDiagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPolynomial:
    """Kauffman bracket by summing over all ``2^n`` smoothing states."""
    n = d.num_crossings
    if n > cap:
        raise CapExceededError(f"{n} crossings exceeds direct bracket cap {cap}")
    A = LaurentPolynomial.variable("A")
    if n == 0:
        return LaurentPolynomial.one(A.vars)
    m = d.dart_map()
    arc_pairs = m.edges
    counts: dict[tuple[int, int], int] = {}
    for state in range(1 << n):
        parent = list(range(4 * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        loops = 4 * n
        pairs = list(arc_pairs)
        for i in range(n):
            b = 4 * i
            if state >> i & 1:
                pairs += [(b, b + 3), (b + 1, b + 2)]
            else:
                pairs += [(b, b + 1), (b + 2, b + 3)]
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                loops -= 1
        nb = bin(state).count("1")
        key = (n - 2 * nb, loops - 1)
        counts[key] = counts.get(key, 0) + 1
    dl = delta()
    total = LaurentPolynomial.zero(A.vars)
    for (a_exp, dpow), k in counts.items():
        total = total + k * A ** a_exp * dl ** dpow
    return total


def _opposite(x: int) -> int:
    return x - x % 4 + (x % 4 + 2) % 4


def _components(d: LinkDiagram) -> list[list[int]]:
    """Link components as lists of darts; a strand passes position i -> i+2."""
    alpha = d.dart_map().alpha
    seen: set[int] = set()
    comps = []
    for start in range(4 * d.num_crossings):
        if start in seen:
            continue
        comp = []
        x = start
        while x not in seen:
            y = _opposite(x)
            seen.update((x, y))
            comp += [x, y]
            x = alpha[y]
        comps.append(comp)
    return comps


def _orient(d: LinkDiagram, orientation: Mapping[int, int] | None) -> dict[int, int]:
    """Map each dart to +1 (the strand enters the crossing there) or -1.

    ``orientation`` maps arc labels to the dart ``4*crossing + position`` at
    which that arc enters a crossing. Components left unspecified enter at
    position ``a`` of their first under-passage (the usual PD convention), or
    at their first dart if they never pass under.
    """
    alpha = d.dart_map().alpha
    arcs = {a: i for i, a in enumerate(d.arcs)}
    edges = d.dart_map().edges
    state: dict[int, int] = {}

    def propagate(x: int):
        while state.get(x) != 1:
            y = _opposite(x)
            if x in state or y in state:
                raise ValueError("inconsistent orientation")
            state[x], state[y] = 1, -1
            x = alpha[y]

    for label, dart in (orientation or {}).items():
        if label not in arcs:
            raise ValueError(f"unknown arc label {label}")
        if dart not in edges[arcs[label]]:
            raise ValueError(f"dart {dart} is not an end of arc {label}")
        if state.get(dart) == 1:
            continue
        propagate(dart)
    for comp in _components(d):
        if comp[0] in state:
            continue
        entry = next((x for x in comp if x % 4 == 0), comp[0])
        propagate(entry)
    return state


def writhe(d: LinkDiagram, orientation: Mapping[int, int] | None = None) -> int:
    """Sum of crossing signs; a crossing is positive when the over-strand
    enters at the position after the under-strand's exit, i.e. at ``in+3``."""
    state = _orient(d, orientation)
    w = 0
    for i in range(d.num_crossings):
        b = 4 * i
        under_in = b if state[b] == 1 else b + 2
        over_in = b + 1 if state[b + 1] == 1 else b + 3
        w += 1 if (over_in - under_in) % 4 == 3 else -1
    return w


def jones(d: LinkDiagram, orientation: Mapping[int, int] | None = None,
          cap: int = DEFAULT_CROSSING_CAP) -> LaurentPolynomial:
    """Writhe-normalised bracket ``(-A^3)^(-w) <D>`` in the variable ``A``."""
    A = LaurentPolynomial.variable("A")
    w = writhe(d, orientation) if d.crossings else 0
    return (-(A ** 3)) ** (-w) * bracket_direct(d, cap)


def load_corpus() -> dict[str, LinkDiagram]:
    """Bundled reference diagrams keyed by file stem."""
    out = {}
    root = resources.files(__package__) / "corpus"
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".pd"):
            stem = entry.name[:-3]
            out[stem] = parse_pd(entry.read_text(), stem)
    return out
