"""Emit the cycle of a small graph and read it back."""

from __future__ import annotations

from motgraph import Edge, Graph, canonical_form, emit_parametrization, emit_polynomial_system, graph_from_cycle, mono

g = Graph(
    3,
    (
        Edge(0, 1, mono("r1")),
        Edge(1, 2, mono("r2")),
        Edge(2, 0, mono("r3")),
        Edge(1, 0, mono("r4")),
    ),
)

par = emit_parametrization(g)
print(par.text())
print(emit_polynomial_system(g).text())
back = graph_from_cycle([c.text() for c in par.coordinates])
print("round trip preserves the class:", canonical_form(back) == canonical_form(g))
