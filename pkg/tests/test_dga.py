from __future__ import annotations

import random

from motgraph.canonical import GraphSum, canonical_form, sum_product, vertex_rescale
from motgraph.corpus import DECOMPOSABLE_EXAMPLES, expected_differential, load_example
from motgraph.dga import (
    contract_edge,
    differential,
    differential_graph,
    differential_handle_split,
    is_admissible,
    is_dot_zero,
)
from motgraph.augmented import make_necklace
from motgraph.graph_core import Edge, Graph, handle_decomposition
from motgraph.labels import mono
from motgraph.random_graphs import random_admissible_graph


def g0(a="a"):
    return Graph(1, (Edge(0, 0, mono(a)),))


def handle_graph(length: int) -> Graph:
    """Asymmetric interior on vertices 0, 1, 2 plus a directed handle
    0 -> 3 -> ... -> 1 of the given length.  A symmetric interior would let
    orientation reversal act as an odd automorphism and kill the graph."""
    edges = [
        Edge(0, 1, mono("a")),
        Edge(1, 0, mono("b")),
        Edge(1, 2, mono("c")),
        Edge(2, 1, mono("d")),
        Edge(2, 0, mono("e")),
    ]
    n = 3 + length - 1
    path = [0] + list(range(3, n)) + [1]
    for k in range(length):
        edges.append(Edge(path[k], path[k + 1], mono(f"h{k}")))
    return Graph(n, tuple(edges))


def test_contract_self_loop_and_unit_edge():
    assert contract_edge(g0(), 0) is None
    g = Graph(3, (Edge(0, 1), Edge(1, 2, mono("b")), Edge(2, 0, mono("c")), Edge(2, 1, mono("d"))))
    h = contract_edge(g, 0)
    assert h.labels() == (mono("b"), mono("c"), mono("d"))


def test_contract_target_side_matches_source_side():
    r = random.Random(3)
    for _ in range(60):
        g = random_admissible_graph(r, 5, 7)
        for i, e in enumerate(g.edges):
            if e.is_loop:
                continue
            h = vertex_rescale(g, e.dst, e.label.inv())
            assert h.edges[i].label.is_one()
            assert canonical_form(contract_edge(h, i)) == canonical_form(contract_edge(g, i))


def test_five_term_example():
    g = load_example("diff5").graphs[0]
    d = differential_graph(g)
    assert d == expected_differential()
    assert len(d) == 5


def test_g0_is_closed():
    assert not differential_graph(g0())


def test_d_squared_random():
    r = random.Random(21)
    for _ in range(80):
        g = random_admissible_graph(r)
        assert not differential(differential_graph(g))


def test_degree_and_weight():
    r = random.Random(22)
    for _ in range(60):
        g = random_admissible_graph(r)
        k, _ = canonical_form(g) or (None, None)
        if k is None:
            continue
        for k2 in differential_graph(g).terms:
            assert k2.degree == k.degree + 1
            assert k2.weight == k.weight


def test_leibniz():
    r = random.Random(23)
    for _ in range(30):
        a = GraphSum.from_graph(random_admissible_graph(r, 4, 6))
        b = GraphSum.from_graph(random_admissible_graph(r, 4, 6))
        if not a:
            continue
        (deg,) = {k.degree for k in a.terms}
        lhs = differential(sum_product(a, b))
        rhs = sum_product(differential(a), b) + sum_product(a, differential(b)).scale((-1) ** deg)
        assert lhs == rhs


def test_admissibility_preserved_by_d():
    r = random.Random(24)
    from motgraph.canonical import representative

    for _ in range(60):
        g = random_admissible_graph(r)
        for k in differential_graph(g).terms:
            assert is_admissible(representative(k)).admissible


def test_admissibility_examples():
    unit_loop = Graph(2, (Edge(0, 1, mono("a")), Edge(1, 0, mono("1/a")), Edge(0, 0, mono("c"))))
    rep = is_admissible(unit_loop)
    assert not rep.admissible
    assert [k for k, _ in rep.failures] == ["UnitLoop"]
    assert is_admissible(g0()).admissible
    assert not is_admissible(g0("1")).admissible
    sink = Graph(2, (Edge(0, 1, mono("a")), Edge(0, 1, mono("b"))))
    assert [k for k, _ in is_admissible(sink).failures] == ["NotStronglyConnected"]
    assert is_admissible(make_necklace("L", mono("a0"), [mono("a1")])).admissible


def test_strict_mode_finds_lattice_relation():
    # two 2-gons with chi = a and 1/a share no simple cycle with chi = 1, but
    # their sum in the cycle lattice has chi = 1
    g = Graph(3, (Edge(0, 1, mono("a")), Edge(1, 0), Edge(1, 2, mono("1/a")), Edge(2, 1)))
    assert is_admissible(g).admissible
    assert not is_admissible(g, strict=True).admissible


def test_even_handles_vanish_odd_handles_give_one_term():
    for length in range(2, 6):
        g = handle_graph(length)
        hd = handle_decomposition(g)
        assert [len(h) for h in hd.handles] == [length]
        split = differential_handle_split(g)
        assert split.handle_part + split.interior_part == differential_graph(g)
        if length % 2 == 0:
            assert not split.handle_part
        else:
            assert len(split.handle_part) == 1


def test_handle_free_graph():
    theta = Graph(2, (Edge(0, 1, mono("a")), Edge(1, 0, mono("b")), Edge(0, 1, mono("c"))))
    split = differential_handle_split(theta)
    assert not split.handle_part
    assert split.interior_part == differential_graph(theta)


def test_same_handle_count_across_corpus_sums():
    for name in DECOMPOSABLE_EXAMPLES:
        counts = {len(handle_decomposition(g).handles) for g in load_example(name).graphs}
        assert len(counts) == 1, name


def test_dot_zero():
    ok, _ = is_dot_zero(differential(load_example("herbert4").graph_sum))
    assert ok
    neck = make_necklace("L", mono("a0"), [mono("a1"), mono("a2")])
    ok, connected = is_dot_zero(differential_graph(neck))
    assert not ok and connected
    assert is_dot_zero(GraphSum()) == (True, [])
