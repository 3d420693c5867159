"""Exact algebra of labelled oriented graphs for P1-linear algebraic cycles."""

from __future__ import annotations

from .augmented import (
    AugGraph,
    AugSum,
    CircularBarElement,
    bold_eps,
    bold_xi,
    make_eps,
    make_necklace,
    make_xi_family,
    verify_circular_closure,
)
from .bar import BarElement, bar_total, check_completely_decomposable, lift_to_bar_closure
from .canonical import CanonicalKey, GraphSum, canonical_form
from .cycles import emit_parametrization, emit_polynomial_system, graph_from_cycle
from .dga import differential, differential_graph, is_admissible
from .graph_core import Edge, Graph, graph_from_json, graph_to_json, loop_data
from .hodge_numeric import iterated_integral, necklace_period, polylog
from .labels import Monomial, mono

__version__ = "0.1.0"

__all__ = [
    "AugGraph",
    "AugSum",
    "BarElement",
    "CanonicalKey",
    "CircularBarElement",
    "Edge",
    "Graph",
    "GraphSum",
    "Monomial",
    "bar_total",
    "bold_eps",
    "bold_xi",
    "canonical_form",
    "check_completely_decomposable",
    "differential",
    "differential_graph",
    "emit_parametrization",
    "emit_polynomial_system",
    "graph_from_cycle",
    "graph_from_json",
    "graph_to_json",
    "is_admissible",
    "iterated_integral",
    "lift_to_bar_closure",
    "loop_data",
    "make_eps",
    "make_necklace",
    "make_xi_family",
    "mono",
    "necklace_period",
    "polylog",
    "verify_circular_closure",
]
