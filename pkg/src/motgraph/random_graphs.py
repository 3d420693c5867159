"""Seeded random graphs and labels for property tests."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .dga import is_admissible
from .graph_core import Edge, Graph
from .labels import Monomial

__all__ = ["seed_from_env", "rng", "random_label", "random_graph", "random_admissible_graph"]

SYMBOLS = ("a", "b", "c", "d", "e")


def seed_from_env(default: int = 20240501) -> int:
    raw = os.environ.get("MOTGRAPH_SEED")
    return int(raw) if raw else default


def rng(offset: int = 0) -> random.Random:
    return random.Random(seed_from_env() + offset)


def random_label(r: random.Random, max_symbols: int = 2) -> Monomial:
    exps = {}
    for s in r.sample(SYMBOLS, r.randint(0, max_symbols)):
        e = r.choice((-2, -1, 1, 1, 2))
        exps[s] = e
    coeff = Fraction(r.choice((1, 1, 1, 2, 3, -1)), r.choice((1, 1, 2, 5)))
    return Monomial.make(coeff, exps)


def random_graph(r: random.Random, max_vertices: int = 6, max_edges: int = 9, signs: bool = True) -> Graph:
    """Connected, no isolated vertices; arbitrary orientations."""
    n = r.randint(1, max_vertices)
    edges = []
    for v in range(1, n):
        u = r.randrange(v)
        edges.append((u, v) if r.random() < 0.5 else (v, u))
    extra = r.randint(1 if n == 1 else 0, max(max_edges - len(edges), 0))
    for _ in range(extra):
        edges.append((r.randrange(n), r.randrange(n)))
    r.shuffle(edges)
    return Graph(
        n,
        tuple(
            Edge(s, d, random_label(r), r.choice((1, -1)) if signs else 1)
            for s, d in edges[:max_edges]
        ),
    )


def random_admissible_graph(r: random.Random, max_vertices: int = 6, max_edges: int = 9) -> Graph:
    """Directed Hamiltonian cycle plus random chords, resampled until admissible."""
    while True:
        n = r.randint(1, max_vertices)
        order = list(range(n))
        r.shuffle(order)
        pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
        budget = max_edges - len(pairs)
        for _ in range(r.randint(0, max(budget, 0))):
            pairs.append((r.randrange(n), r.randrange(n)))
        r.shuffle(pairs)
        g = Graph(n, tuple(Edge(s, d, random_label(r)) for s, d in pairs))
        if is_admissible(g).admissible:
            return g
