"""The differential on graph sums and the admissibility test."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .canonical import CanonicalKey, GraphSum, representative, vertex_rescale
from .graph_core import (
    DEFAULT_CYCLE_BUDGET,
    Edge,
    Graph,
    Loop,
    components,
    enumerate_simple_cycles,
    handle_decomposition,
    loop_coefficient,
    loop_data,
    split_blocks,
    strongly_connected,
)
from .labels import ONE

__all__ = [
    "contract_edge",
    "split_blocks",
    "differential",
    "differential_graph",
    "AdmissibilityReport",
    "is_admissible",
    "differential_handle_split",
    "is_dot_zero",
    "edge_sign",
]


def edge_sign(position: int) -> int:
    """Sign of the term contracting the edge at 0-based position ``position``,
    i.e. (-1)^(omega(e)-1) with omega 1-based."""
    return -1 if position % 2 else 1


def contract_edge(g: Graph, e: int) -> Graph | None:
    """Rescale the source of edge e by its label, contract e and split the
    result into biconnected pieces.  None for a self-loop."""
    edge = g.edges[e]
    if edge.is_loop:
        return None
    h = vertex_rescale(g, edge.src, edge.label)
    s, t = edge.src, edge.dst

    def merge(v: int) -> int:
        v = s if v == t else v
        return v - 1 if v > t else v

    edges = tuple(
        Edge(merge(f.src), merge(f.dst), f.label, f.sign)
        for i, f in enumerate(h.edges)
        if i != e
    )
    return split_blocks(Graph(g.n - 1, edges))


def differential_graph(g: Graph, coeff: Fraction | int = 1) -> GraphSum:
    out = GraphSum()
    for i in range(len(g.edges)):
        h = contract_edge(g, i)
        if h is not None:
            out.add_graph(h, coeff * edge_sign(i))
    return out


@lru_cache(maxsize=100_000)
def _diff_key(key: CanonicalKey) -> tuple[tuple[CanonicalKey, Fraction], ...]:
    return tuple(differential_graph(representative(key)).items())


def differential(s: GraphSum) -> GraphSum:
    out = GraphSum()
    for k, v in s.terms.items():
        for k2, v2 in _diff_key(k):
            out.add_key(k2, v * v2)
    return out


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    not_strongly_connected: tuple[tuple[int, ...], ...] = ()
    unit_loops: tuple[Loop, ...] = ()
    lattice_relations: tuple[tuple[int, ...], ...] = ()

    @property
    def failures(self) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = [("NotStronglyConnected", c) for c in self.not_strongly_connected]
        out += [("UnitLoop", L) for L in self.unit_loops]
        out += [("UnitLatticeRelation", r) for r in self.lattice_relations]
        return out


def is_admissible(
    g: Graph,
    strict: bool = False,
    box: int = 2,
    budget: int = DEFAULT_CYCLE_BUDGET,
) -> AdmissibilityReport:
    """Strong connectivity of every component and no simple cycle with loop
    coefficient 1.  ``strict`` also searches the fundamental-loop lattice
    within exponents in [-box, box] for a nonzero combination equal to 1."""
    bad_comps = tuple(tuple(c) for c in components(g) if not strongly_connected(g, c))
    unit = tuple(L for L in enumerate_simple_cycles(g, budget) if loop_coefficient(g, L).is_one())
    relations: tuple[tuple[int, ...], ...] = ()
    if strict:
        _, _, chis = loop_data(g)
        found = []
        for vec in itertools.product(range(-box, box + 1), repeat=len(chis)):
            if not any(vec):
                continue
            # one representative per +/- pair
            first = next(x for x in vec if x)
            if first < 0:
                continue
            prod = ONE
            for c, k in zip(chis, vec):
                if k:
                    prod = prod * (c**k)
            if prod.is_one():
                found.append(vec)
        relations = tuple(found)
    ok = not bad_comps and not unit and not relations
    return AdmissibilityReport(ok, bad_comps, unit, relations)


@dataclass(frozen=True)
class HandleSplit:
    handle_part: GraphSum
    interior_part: GraphSum
    per_handle: tuple[GraphSum, ...] = field(default=())


def differential_handle_split(g: Graph) -> HandleSplit:
    """Split the differential into contractions of handle edges and of the
    remaining (interior) edges."""
    hd = handle_decomposition(g)
    in_handle = set()
    per_handle = []
    for h in hd.handles:
        part = GraphSum()
        for i in h.edge_path:
            in_handle.add(i)
            c = contract_edge(g, i)
            if c is not None:
                part.add_graph(c, edge_sign(i))
        per_handle.append(part)
    handle_part = GraphSum()
    for p in per_handle:
        handle_part = handle_part + p
    interior = GraphSum()
    for i in range(len(g.edges)):
        if i in in_handle:
            continue
        c = contract_edge(g, i)
        if c is not None:
            interior.add_graph(c, edge_sign(i))
    return HandleSplit(handle_part, interior, tuple(per_handle))


def is_dot_zero(s: GraphSum) -> tuple[bool, list[tuple[CanonicalKey, Fraction]]]:
    """True when every surviving term is disconnected."""
    connected = [(k, v) for k, v in s.items() if k.h0 < 2]
    return not connected, connected
