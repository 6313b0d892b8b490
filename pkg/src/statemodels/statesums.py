"""Partition functions and the Kauffman bracket by six routes.

Routes for a link diagram ``D`` with Tait graph ``T`` and unsigned ribbon
graph ``R``:

=========  ===============================================================
direct     sum over all smoothings of ``D``
potts      Potts/FK subset sum on ``T``
ribbon     ``delta^-1 A^|E| sum delta^bc(S) A^(-2|S|)`` over subsets of ``R``
br         Bollobas-Riordan polynomial of ``R`` at ``(-A^4, A^-2 delta, 1/delta)``
smoothing  bracket of the alternating surface diagram carried by ``R``
vertex     arrow-covering vertex model on the medial graph of ``R``
=========  ===============================================================

``delta = -A^2 - A^-2`` is never a variable; any ``1/delta`` is realised by
exact division of the completed sum, which raises if it fails.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Sequence
from dataclasses import dataclass, field

from .cmap import (
    DEFAULT_EDGE_CAP,
    CapExceededError,
    CombinatorialMap,
    SignedPlaneGraph,
    boundary_components,
    components_rank_nullity,
)
from .knotio import (
    DEFAULT_CROSSING_CAP,
    LinkDiagram,
    TaitGraph,
    bracket_direct,
    checkerboard,
    delta,
    tait_graph,
)
from .laurent import LaurentPolynomial, NotDivisibleError, VariableSet, eliminate_inverse, substitute
from .medial import DEFAULT_NODE_CAP, MedialGraph, Smoothing, cycle_weight, medial, smooth, vertex_sum
from .unsign import unsign

__all__ = [
    "ROUTES",
    "StateSumReport",
    "SurfaceDiagram",
    "z_potts_coloring",
    "z_fk",
    "constrained_weights",
    "z_fk_constrained",
    "ribbon_subset_sum",
    "smoothing_sum",
    "vertex_model_sum",
    "bracket_potts",
    "bracket_ribbon",
    "br_polynomial",
    "br_polynomial_rewritten",
    "tutte_polynomial",
    "tutte_check",
    "bracket_via_br",
    "br_bracket_evaluation",
    "surface_diagram",
    "alternating_surface_diagram",
    "bracket_surface",
    "bracket_vertex",
    "bracket",
    "verify_all",
]

ROUTES = ("direct", "potts", "ribbon", "br", "smoothing", "vertex")

_A = VariableSet(("A",))


def _check_cap(m: CombinatorialMap, cap: int) -> None:
    if m.num_edges > cap:
        raise CapExceededError(f"{m.num_edges} edges exceeds subset enumeration cap {cap}")


def _divide_by_delta(p: LaurentPolynomial, k: int, what: str) -> LaurentPolynomial:
    if k <= 0:
        return p * delta() ** (-k)
    try:
        return p.exact_divide(delta() ** k)
    except NotDivisibleError:
        raise NotDivisibleError(f"{what}: state sum is not divisible by delta^{k}") from None


# -- Potts model ----------------------------------------------------------------

def _edge_list(g) -> tuple[int, list[tuple[int, int]]]:
    if isinstance(g, SignedPlaneGraph):
        g = g.map
    if isinstance(g, CombinatorialMap):
        return g.num_vertices, [g.edge_vertices(e) for e in range(g.num_edges)]
    n, edges = g
    return int(n), [tuple(e) for e in edges]


def _default_weights(num_edges: int, vars: Sequence[str]) -> list[LaurentPolynomial]:
    return [LaurentPolynomial.variable(f"w{i}", vars) for i in range(num_edges)]


def z_potts_coloring(g, weights: Sequence[LaurentPolynomial] | None = None, q: int = 2,
                     cap: int = 10 ** 6) -> LaurentPolynomial:
    """Brute-force Potts partition function over all ``q^|V|`` vertex colourings.

    ``g`` is a map or ``(num_vertices, edge_list)``. Default weights are the
    variables ``w0, w1, ...``.
    """
    n, edges = _edge_list(g)
    if q < 1:
        raise ValueError("q must be a positive integer")
    if q ** n > cap:
        raise CapExceededError(f"{q}^{n} colourings exceeds cap {cap}")
    if weights is None:
        weights = _default_weights(len(edges), [f"w{i}" for i in range(len(edges))])
    vars = weights[0].vars if weights else VariableSet(())
    # group colourings by the set of monochromatic edges
    counts: dict[int, int] = {}
    for colouring in itertools.product(range(q), repeat=n):
        mono = 0
        for i, (u, v) in enumerate(edges):
            if colouring[u] == colouring[v]:
                mono |= 1 << i
        counts[mono] = counts.get(mono, 0) + 1
    total = LaurentPolynomial.zero(vars)
    for mono, k in counts.items():
        term = LaurentPolynomial.constant(k, vars)
        for i in range(len(edges)):
            if mono >> i & 1:
                term = term * (1 + weights[i])
        total = total + term
    return total


def z_fk(g, weights: Sequence[LaurentPolynomial] | None = None, q: LaurentPolynomial | int | None = None,
         cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """Fortuin-Kasteleyn subset sum ``sum_A q^k(A) prod_{e in A} w_e``.

    With no arguments the result is symbolic in ``q, w0, w1, ...``.
    """
    n, edges = _edge_list(g)
    if len(edges) > cap:
        raise CapExceededError(f"{len(edges)} edges exceeds subset enumeration cap {cap}")
    if weights is None or q is None:
        vars = (["q"] if q is None else []) + [f"w{i}" for i in range(len(edges))]
        if weights is None:
            weights = _default_weights(len(edges), vars)
        if q is None:
            q = LaurentPolynomial.variable("q", weights[0].vars if weights else vars)
    vars = weights[0].vars if weights else (q.vars if isinstance(q, LaurentPolynomial) else VariableSet(()))
    if isinstance(q, int):
        q = LaurentPolynomial.constant(q, vars)
    total = LaurentPolynomial.zero(vars)
    qpow = [q ** k for k in range(n + 1)]
    for mask in range(1 << len(edges)):
        k = _count_components(n, edges, mask)
        term = qpow[k]
        for i in range(len(edges)):
            if mask >> i & 1:
                term = term * weights[i]
        total = total + term
    return total


def _count_components(n: int, edges: Sequence[tuple[int, int]], mask: int) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    k = n
    for i, (u, v) in enumerate(edges):
        if mask >> i & 1:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                k -= 1
    return k


# Constrained regime: q = u^2, x_+ = 1/x_-, w_+ = u x_+, w_- = u x_-.
_UX = VariableSet(("u", "x"))


def constrained_weights(g: SignedPlaneGraph) -> list[LaurentPolynomial]:
    u, x = LaurentPolynomial.variables(*_UX)
    return [u * x ** -1 if s > 0 else u * x for s in g.signs]


def z_fk_constrained(g: SignedPlaneGraph, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """``z_fk`` with ``q = u^2`` and weights ``u x^-1`` (+) or ``u x`` (-)."""
    u, _ = LaurentPolynomial.variables(*_UX)
    return z_fk(g.map, constrained_weights(g), u ** 2, cap)


def ribbon_subset_sum(g: SignedPlaneGraph, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """``u^|V| x^-|E+| sum_S u^bc(S) x^|S|`` over subsets of the unsigning."""
    r = unsign(g).map
    _check_cap(r, cap)
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << r.num_edges):
        key = (boundary_components(r, mask), bin(mask).count("1"))
        counts[key] = counts.get(key, 0) + 1
    pos = bin(g.positive_mask).count("1")
    return LaurentPolynomial(_UX, {(b + g.map.num_vertices, a - pos): c for (b, a), c in counts.items()})


def smoothing_sum(g: SignedPlaneGraph, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """``u^|V| x^-|E+| sum_s u^p(s) x^B(s)`` over smoothings of the medial graph."""
    m = medial(unsign(g).map)
    if m.num_nodes > cap:
        raise CapExceededError(f"{m.num_nodes} medial nodes exceeds smoothing cap {cap}")
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << m.num_nodes):
        key = smooth(m, Smoothing(mask, m.num_nodes))
        counts[key] = counts.get(key, 0) + 1
    pos = bin(g.positive_mask).count("1")
    return LaurentPolynomial(_UX, {(p + g.map.num_vertices, b - pos): c for (p, b), c in counts.items()})


def vertex_model_sum(g: SignedPlaneGraph, weight=cycle_weight, cap: int = DEFAULT_NODE_CAP) -> LaurentPolynomial:
    """``(t + 1/t)^|V| x^-|E+| sum_a W(rho(a))`` with ``r = x`` (the negative weight).

    Equals :func:`smoothing_sum` under ``u -> t + 1/t``.
    """
    m = medial(unsign(g).map)
    t, x = LaurentPolynomial.variables("t", "x")
    inner = vertex_sum(m, weight, cap, t="t", r="x")
    pos = bin(g.positive_mask).count("1")
    return (t + t ** -1) ** g.map.num_vertices * x ** -pos * inner


# -- Kauffman bracket routes ------------------------------------------------------

def _tait(obj) -> TaitGraph:
    if isinstance(obj, TaitGraph):
        return obj
    if isinstance(obj, LinkDiagram):
        return tait_graph(obj)
    raise TypeError(f"expected a TaitGraph or LinkDiagram, got {type(obj).__name__}")


def bracket_potts(T, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """``delta^(-|V|-1) A^(|E-|-|E+|) sum_S delta^(2k(S)) prod_{e in S} delta A^(2 b_e)``."""
    T = _tait(T)
    m, signs = T.map, T.signs
    _check_cap(m, cap)
    # tally subsets by (k, |S|, signed size)
    counts: dict[tuple[int, int, int], int] = {}
    for mask in range(1 << m.num_edges):
        k, _, _ = components_rank_nullity(m, mask)
        size = bin(mask).count("1")
        b = sum(signs[i] for i in range(m.num_edges) if mask >> i & 1)
        key = (k, size, b)
        counts[key] = counts.get(key, 0) + 1
    A = LaurentPolynomial.variable("A")
    d = delta()
    neg = sum(1 for s in signs if s < 0)
    total = LaurentPolynomial.zero(_A)
    for (k, size, b), c in counts.items():
        total = total + c * d ** (2 * k + size) * A ** (2 * b)
    total = total * A ** (neg - (m.num_edges - neg))
    return _divide_by_delta(total, m.num_vertices + 1, "potts route")


def _ribbon_sum(r: CombinatorialMap, cap: int) -> LaurentPolynomial:
    """``A^|E| sum_S delta^bc(S) A^(-2|S|)`` (no ``1/delta`` yet)."""
    _check_cap(r, cap)
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << r.num_edges):
        key = (boundary_components(r, mask), bin(mask).count("1"))
        counts[key] = counts.get(key, 0) + 1
    A = LaurentPolynomial.variable("A")
    d = delta()
    total = LaurentPolynomial.zero(_A)
    for (b, size), c in counts.items():
        total = total + c * d ** b * A ** (r.num_edges - 2 * size)
    return total


def bracket_ribbon(T, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    T = _tait(T)
    r = unsign(T.graph).map
    return _divide_by_delta(_ribbon_sum(r, cap), 1, "ribbon route")


def br_polynomial(f: CombinatorialMap, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """Bollobas-Riordan polynomial by subset expansion, in ``x = X - 1``, ``Y``, ``Z``."""
    _check_cap(f, cap)
    k_full, r_full, _ = components_rank_nullity(f, f.full_mask)
    counts: dict[tuple[int, int, int], int] = {}
    for mask in range(1 << f.num_edges):
        k, r, n = components_rank_nullity(f, mask)
        z = k - boundary_components(f, mask) + n
        key = (r_full - r, n, z)
        counts[key] = counts.get(key, 0) + 1
    return LaurentPolynomial(("x", "Y", "Z"), counts)


def br_polynomial_rewritten(f: CombinatorialMap, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """The same polynomial via the product form
    ``x^-k(F) (YZ)^-|V| sum [x Y Z^2]^k(S) (YZ)^|S| Z^-bc(S)``."""
    _check_cap(f, cap)
    x, Y, Z = LaurentPolynomial.variables("x", "Y", "Z")
    k_full = components_rank_nullity(f, f.full_mask)[0]
    total = LaurentPolynomial.zero(x.vars)
    for mask in range(1 << f.num_edges):
        k = components_rank_nullity(f, mask)[0]
        size = bin(mask).count("1")
        total = total + (x * Y * Z ** 2) ** k * (Y * Z) ** size * Z ** -boundary_components(f, mask)
    return x ** -k_full * (Y * Z) ** -f.num_vertices * total


def tutte_polynomial(f: CombinatorialMap, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """Tutte polynomial ``sum (X-1)^(r(F)-r(S)) (Y-1)^n(S)`` in ``x = X - 1`` and ``Y``."""
    _check_cap(f, cap)
    x, Y = LaurentPolynomial.variables("x", "Y")
    r_full = components_rank_nullity(f, f.full_mask)[1]
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << f.num_edges):
        _, r, n = components_rank_nullity(f, mask)
        counts[(r_full - r, n)] = counts.get((r_full - r, n), 0) + 1
    total = LaurentPolynomial.zero(x.vars)
    for (a, n), c in counts.items():
        total = total + c * x ** a * (Y - 1) ** n
    return total


def tutte_check(f: CombinatorialMap, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """``R(F; X, Y-1, 1)``; raises if it differs from :func:`tutte_polynomial`."""
    x, Y = LaurentPolynomial.variables("x", "Y")
    specialised = substitute(br_polynomial(f, cap), {"x": x, "Y": Y - 1, "Z": 1})
    direct = tutte_polynomial(f, cap)
    if specialised != direct:
        raise RuntimeError(f"Tutte specialisation failed: {specialised} != {direct}")
    return specialised


def br_bracket_evaluation(r: CombinatorialMap, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    """``A^(|E|+2-2|V|) R(r; -A^4, A^-2 delta, 1/delta)`` for a connected ribbon graph.

    ``delta`` enters as a formal variable ``D`` with its inverse adjoined and
    is eliminated by one exact division at the end.
    """
    if not r.is_connected():
        raise ValueError("ribbon graph must be connected for the Bollobas-Riordan evaluation")
    A, D = LaurentPolynomial.variables("A", "D")
    R = br_polynomial(r, cap)
    val = substitute(R, {"x": -(A ** 4) - 1, "Y": A ** -2 * D, "Z": D ** -1})
    val = val * A ** (r.num_edges + 2 - 2 * r.num_vertices)
    try:
        return eliminate_inverse(val, "D", delta())
    except NotDivisibleError:
        raise NotDivisibleError("br route: evaluation is not a Laurent polynomial in A") from None


def bracket_via_br(T, cap: int = DEFAULT_EDGE_CAP) -> LaurentPolynomial:
    T = _tait(T)
    return br_bracket_evaluation(unsign(T.graph).map, cap)


@dataclass(frozen=True)
class SurfaceDiagram:
    """Alternating link diagram on a closed surface: the medial graph of a
    ribbon graph with every node a crossing whose A-smoothing is pairing A."""

    medial: MedialGraph
    genus: int

    @property
    def num_crossings(self) -> int:
        return self.medial.num_nodes


def alternating_surface_diagram(r: CombinatorialMap) -> SurfaceDiagram:
    return SurfaceDiagram(medial(r), r.genus())


def surface_diagram(T) -> SurfaceDiagram:
    T = _tait(T)
    return alternating_surface_diagram(unsign(T.graph).map)


def bracket_surface(sd: SurfaceDiagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPolynomial:
    """``sum_s A^(#A - #B) delta^(cycles - 1)`` over all states."""
    m = sd.medial
    n = m.num_nodes
    if n > cap:
        raise CapExceededError(f"{n} crossings exceeds surface bracket cap {cap}")
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
        key = smooth(m, Smoothing(mask, n))
        counts[key] = counts.get(key, 0) + 1
    A = LaurentPolynomial.variable("A")
    d = delta()
    total = LaurentPolynomial.zero(_A)
    for (p, b), c in counts.items():
        total = total + c * A ** (n - 2 * b) * d ** p
    return _divide_by_delta(total, 1, "smoothing route")


def bracket_vertex(T, weight=cycle_weight, cap: int = DEFAULT_NODE_CAP) -> LaurentPolynomial:
    """``delta^-1 A^N sum_a W(rho(a))`` with ``t = -A^2`` and B-weight ``r = A^-2``.

    The B-weight is ``A^-2`` rather than ``-A^-2``: the ribbon route carries
    ``A^(-2|S|)`` with no sign, and the two routes must agree term for term.
    """
    T = _tait(T)
    r = unsign(T.graph).map
    m = medial(r)
    inner = vertex_sum(m, weight, cap)
    A = LaurentPolynomial.variable("A")
    val = substitute(inner, {"t": -(A ** 2), "r": A ** -2}) * A ** m.num_nodes
    return _divide_by_delta(val, 1, "vertex route")


def bracket(d: LinkDiagram, method: str = "direct", outer: int | None = None,
            edge_cap: int = DEFAULT_EDGE_CAP, crossing_cap: int = DEFAULT_CROSSING_CAP,
            node_cap: int = DEFAULT_NODE_CAP) -> LaurentPolynomial:
    """Kauffman bracket of ``d`` by the named route."""
    if method == "direct":
        return bracket_direct(d, crossing_cap)
    if method not in ROUTES:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(ROUTES)}")
    T = tait_graph(d, checkerboard(d, outer))
    if method == "potts":
        return bracket_potts(T, edge_cap)
    if method == "ribbon":
        return bracket_ribbon(T, edge_cap)
    if method == "br":
        return bracket_via_br(T, edge_cap)
    if method == "smoothing":
        return bracket_surface(surface_diagram(T), crossing_cap)
    return bracket_vertex(T, cap=node_cap)


@dataclass
class StateSumReport:
    diagram: str
    routes: dict[str, LaurentPolynomial]
    timings_ms: dict[str, float] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        values = list(self.routes.values())
        return not self.errors and all(v == values[0] for v in values[1:])

    def to_json(self) -> dict:
        out = {
            "diagram": self.diagram,
            "routes": {k: str(v) for k, v in self.routes.items()},
            "agree": self.agree,
            "timings_ms": {k: round(v, 3) for k, v in self.timings_ms.items()},
        }
        if self.errors:
            out["errors"] = dict(self.errors)
        return out


def verify_all(d: LinkDiagram, outer: int | None = None, edge_cap: int = DEFAULT_EDGE_CAP,
               crossing_cap: int = DEFAULT_CROSSING_CAP, node_cap: int = DEFAULT_NODE_CAP,
               routes: Sequence[str] = ROUTES) -> StateSumReport:
    """Run every route on ``d`` and compare.

    A failing route is recorded under ``errors`` with its name rather than
    aborting the others.
    """
    report = StateSumReport(d.name or "diagram", {})
    for name in routes:
        start = time.perf_counter()
        try:
            report.routes[name] = bracket(d, name, outer, edge_cap, crossing_cap, node_cap)
        except (ValueError, ArithmeticError) as exc:
            report.errors[name] = f"{type(exc).__name__}: {exc}"
        report.timings_ms[name] = (time.perf_counter() - start) * 1000
    return report
