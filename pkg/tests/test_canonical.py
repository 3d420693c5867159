from __future__ import annotations

import random
from motgraph.canonical import (
    GraphSum,
    canonical_form,
    gauge_fix,
    permutation_parity,
    sum_combine,
    sum_product,
    vertex_rescale,
)
from motgraph.corpus import load_example
from motgraph.graph_core import Edge, Graph, loop_data, spanning_forest
from motgraph.labels import ONE, mono
from motgraph.random_graphs import random_admissible_graph, random_graph, random_label


def g0(a):
    return Graph(1, (Edge(0, 0, mono(a)),))


def test_rescale_example():
    g = load_example("diff5").graphs[0]
    z = 2
    h = vertex_rescale(g, z, mono("al"))
    assert h.labels() == (mono("r1/al"), mono("al*r2"), mono("r3"), mono("al*r4"), mono("r5"))
    assert vertex_rescale(g, z, ONE) == g


def test_rescale_multiplicative():
    r = random.Random(1)
    for _ in range(50):
        g = random_graph(r)
        v = r.randrange(g.n)
        a, b = random_label(r), random_label(r)
        assert vertex_rescale(vertex_rescale(g, v, b), v, a) == vertex_rescale(g, v, a * b)


def test_gauge_fix_forest_is_unit():
    g = load_example("diff5").graphs[0]
    h = gauge_fix(g)
    unit = Graph(h.n, tuple(e for e in h.edges if e.label.is_one()))
    forest, _ = spanning_forest(unit)
    assert len(forest) == h.n - 1
    # gauge-invariant labels left on the two non-tree edges
    assert mono("r1*r2") in h.labels() and mono("r3*r4/r2") in h.labels()
    assert loop_data(h)[2] == loop_data(g)[2]
    assert gauge_fix(h) == h
    assert gauge_fix(g0("a")) == g0("a")


def test_gauge_fix_keeps_class():
    r = random.Random(4)
    for _ in range(50):
        g = random_graph(r)
        assert canonical_form(gauge_fix(g)) == canonical_form(g)


def test_reorder_sign():
    g = Graph(2, (Edge(0, 1, mono("a")), Edge(1, 0, mono("b")), Edge(0, 1, mono("c"))))
    k, c = canonical_form(g)
    swapped = Graph(2, (g.edges[1], g.edges[0], g.edges[2]))
    assert canonical_form(swapped) == (k, -c)


def test_odd_automorphism_kills():
    # two identical parallel edges: swapping them is an odd symmetry
    g = Graph(2, (Edge(0, 1, mono("a")), Edge(0, 1, mono("a")), Edge(1, 0, mono("b"))))
    assert canonical_form(g) is None
    s = GraphSum.from_graph(g0("c"))
    s.add_graph(g, 5)
    assert s == GraphSum.from_graph(g0("c"))


def test_sign_attribute_flip():
    g = Graph(2, (Edge(0, 1, mono("a")), Edge(1, 0, mono("b")), Edge(0, 1, mono("c"))))
    h = Graph(2, (Edge(0, 1, mono("a"), -1), Edge(1, 0, mono("b")), Edge(0, 1, mono("c"))))
    (k1, c1), (k2, c2) = canonical_form(g), canonical_form(h)
    assert k1 == k2 and c1 == -c2


def test_sum_combine():
    a = GraphSum.from_graph(g0("a"))
    b = GraphSum.from_graph(g0("b"))
    assert not sum_combine("add", a, sum_combine("scale", a, q=-1))
    assert not sum_combine("scale", a, q=0)
    assert len(sum_combine("add", a, b)) == 2


def test_product_graded_commutative_and_unit():
    r = random.Random(8)
    for _ in range(40):
        x = GraphSum.from_graph(random_admissible_graph(r, 4, 6))
        y = GraphSum.from_graph(random_admissible_graph(r, 4, 6))
        if not x or not y:
            continue
        (i,), (j,) = {k.degree for k in x.terms}, {k.degree for k in y.terms}
        assert sum_product(x, y) == sum_product(y, x).scale((-1) ** (i * j))
        kx = next(iter(x.terms))
        ky = next(iter(y.terms))
        prod = sum_product(x, y)
        for k in prod.terms:
            assert k.weight == kx.weight + ky.weight
            assert k.degree == kx.degree + ky.degree
    a = GraphSum.from_graph(g0("a"))
    assert sum_product(GraphSum.unit(), a) == a


def test_product_associative():
    r = random.Random(12)
    for _ in range(20):
        x, y, z = (GraphSum.from_graph(random_admissible_graph(r, 3, 4)) for _ in range(3))
        assert sum_product(sum_product(x, y), z) == sum_product(x, sum_product(y, z))


def test_permutation_parity():
    assert permutation_parity([0, 1, 2]) == 0
    assert permutation_parity([1, 0, 2]) == 1
    assert permutation_parity([1, 2, 0]) == 0


def test_key_hex_round_trip():
    from motgraph.canonical import CanonicalKey

    k, _ = canonical_form(load_example("diff5").graphs[0])
    assert CanonicalKey.from_hex(k.hex()) == k
