"""Exact Potts, ribbon-graph and vertex-model state sums for the Kauffman bracket."""

from .cmap import (
    CapExceededError,
    CombinatorialMap,
    SignedPlaneGraph,
    boundary_components,
    components_rank_nullity,
    genus,
    load_map,
)
from .knotio import LinkDiagram, bracket_direct, checkerboard, jones, load_corpus, parse_pd, tait_graph
from .laurent import LaurentPolynomial, NotDivisibleError, canonical_text, parse
from .medial import medial
from .statesums import ROUTES, bracket, br_polynomial, verify_all
from .unsign import unsign

__all__ = [
    "CapExceededError",
    "CombinatorialMap",
    "SignedPlaneGraph",
    "boundary_components",
    "components_rank_nullity",
    "genus",
    "load_map",
    "LinkDiagram",
    "bracket_direct",
    "checkerboard",
    "jones",
    "load_corpus",
    "parse_pd",
    "tait_graph",
    "LaurentPolynomial",
    "NotDivisibleError",
    "canonical_text",
    "parse",
    "medial",
    "ROUTES",
    "bracket",
    "br_polynomial",
    "verify_all",
    "unsign",
]
