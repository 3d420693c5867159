"""Canonical forms modulo edge reordering (with sign), vertex rescaling and
orientation reversal, and the graded-commutative algebra of graph sums."""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .graph_core import (
    EMPTY,
    Edge,
    Graph,
    component_subgraphs,
    disjoint_union,
    split_blocks,
)
from .labels import ONE, Monomial

__all__ = [
    "CanonicalKey",
    "GraphSum",
    "VertexBudgetExceeded",
    "vertex_rescale",
    "gauge_fix",
    "canonical_form",
    "canonical_graph",
    "representative",
    "sum_combine",
    "sum_product",
    "set_vertex_budget",
    "permutation_parity",
]

_VERTEX_BUDGET = [10]


class VertexBudgetExceeded(RuntimeError):
    pass


def set_vertex_budget(n: int) -> None:
    _VERTEX_BUDGET[0] = n
    _canon_component.cache_clear()


def permutation_parity(perm: Iterable[int]) -> int:
    """0 for even, 1 for odd."""
    p = list(perm)
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Canonical encoding: a sorted tuple of connected-component encodings,
    each ``(num_vertices, edges)`` with edges ``(src, dst, label_key)``."""

    comps: tuple = ()

    @property
    def num_vertices(self) -> int:
        return sum(c[0] for c in self.comps)

    @property
    def num_edges(self) -> int:
        return sum(len(c[1]) for c in self.comps)

    @property
    def h0(self) -> int:
        return len(self.comps)

    @property
    def weight(self) -> int:
        return self.num_edges - self.num_vertices + self.h0

    @property
    def degree(self) -> int:
        return self.num_edges - 2 * self.num_vertices + 2 * self.h0

    @property
    def bar_degree(self) -> int:
        return self.degree - 1

    def is_unit(self) -> bool:
        return not self.comps

    def to_plain(self) -> list:
        return [
            [n, [[s, d, [list(map(list, lk[0])), lk[1], lk[2]]] for s, d, lk in edges]]
            for n, edges in self.comps
        ]

    def hex(self) -> str:
        return json.dumps(self.to_plain(), separators=(",", ":")).encode().hex()

    @staticmethod
    def from_hex(text: str) -> "CanonicalKey":
        plain = json.loads(bytes.fromhex(text).decode())
        comps = tuple(
            (
                n,
                tuple(
                    (s, d, (tuple((k, e) for k, e in lk[0]), lk[1], lk[2]))
                    for s, d, lk in edges
                ),
            )
            for n, edges in plain
        )
        return CanonicalKey(comps)

    def components(self) -> list["CanonicalKey"]:
        return [CanonicalKey((c,)) for c in self.comps]

    def __repr__(self) -> str:
        return f"CanonicalKey({representative(self)})"


_REPS: dict[CanonicalKey, Graph] = {CanonicalKey(): EMPTY}


def _label_from_key(lk: tuple) -> Monomial:
    exps, num, den = lk
    return Monomial(Fraction(num, den), tuple(exps))


def representative(key: CanonicalKey) -> Graph:
    g = _REPS.get(key)
    if g is None:
        parts = []
        for n, edges in key.comps:
            parts.append(Graph(n, tuple(Edge(s, d, _label_from_key(lk)) for s, d, lk in edges)))
        g = disjoint_union(parts)
        _REPS[key] = g
    return g


def vertex_rescale(g: Graph, v: int, alpha: Monomial) -> Graph:
    """Multiply labels of edges ending at v by alpha and divide those starting
    at v; self-loops at v are unchanged."""
    out = []
    for e in g.edges:
        lab = e.label
        if e.dst == v and e.src != v:
            lab = lab * alpha
        elif e.src == v and e.dst != v:
            lab = lab / alpha
        out.append(e.relabel(lab))
    return Graph(g.n, tuple(out))


def _gauge_potentials(g: Graph) -> list[Monomial]:
    """Vertex scalings putting g in a gauge that depends only on the vertex
    numbering, not on edge order.

    Tree pairs come from BFS on the simple underlying graph; across the bundle
    of parallel edges between a tree pair, the scaling is chosen to minimise
    the bundle's sorted (direction, label) tuple, which makes one bundle edge 1.
    """
    n = g.n
    bundles: dict[tuple[int, int], list[int]] = {}
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for i, e in enumerate(g.edges):
        if e.is_loop:
            continue
        a, b = min(e.src, e.dst), max(e.src, e.dst)
        bundles.setdefault((a, b), []).append(i)
        nbrs[a].add(b)
        nbrs[b].add(a)
    alpha: list[Monomial | None] = [None] * n
    for root in range(n):
        if alpha[root] is not None:
            continue
        alpha[root] = ONE
        queue = deque([root])
        while queue:
            p = queue.popleft()
            for c in sorted(nbrs[p]):
                if alpha[c] is not None:
                    continue
                ap = alpha[p]
                bundle = bundles[(min(p, c), max(p, c))]
                if len(bundle) == 1:
                    e = g.edges[bundle[0]]
                    alpha[c] = ap / e.label if e.src == p else e.label * ap
                    queue.append(c)
                    continue
                vals = []
                for i in bundles[(min(p, c), max(p, c))]:
                    e = g.edges[i]
                    if e.src == p:
                        vals.append((0, e.label / ap))
                    else:
                        vals.append((1, (e.label * ap).inv()))
                best = None
                for _, w in vals:
                    cand = tuple(
                        sorted((d, (x / w).sort_key() if d == 0 else (w / x).sort_key()) for d, x in vals)
                    )
                    if best is None or cand < best[0]:
                        best = (cand, w)
                alpha[c] = best[1].inv()
                queue.append(c)
    return alpha  # type: ignore[return-value]


def _apply_potentials(g: Graph, alpha: list[Monomial]) -> Graph:
    out = []
    for e in g.edges:
        if e.is_loop:
            out.append(e)
        else:
            out.append(e.relabel(e.label * alpha[e.dst] / alpha[e.src]))
    return Graph(g.n, tuple(out))


def gauge_fix(g: Graph) -> Graph:
    """Equivalent graph (under vertex rescaling) in which a spanning forest is
    labeled 1."""
    return _apply_potentials(g, _gauge_potentials(g))


def _refined_colors(g: Graph) -> list[tuple]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    loops: list[list[tuple]] = [[] for _ in range(g.n)]
    indeg = [0] * g.n
    outdeg = [0] * g.n
    for e in g.edges:
        if e.is_loop:
            loops[e.src].append(e.label.sort_key())
            continue
        inc[e.src].append((0, e.dst))
        inc[e.dst].append((1, e.src))
        outdeg[e.src] += 1
        indeg[e.dst] += 1
    color = [(indeg[v], outdeg[v], tuple(sorted(loops[v]))) for v in range(g.n)]
    ranks = {c: r for r, c in enumerate(sorted(set(color)))}
    cur = [ranks[c] for c in color]
    while True:
        sig = [(cur[v], tuple(sorted((d, cur[w]) for d, w in inc[v]))) for v in range(g.n)]
        ranks2 = {c: r for r, c in enumerate(sorted(set(sig)))}
        nxt = [ranks2[s] for s in sig]
        if len(ranks2) == len(set(cur)):
            return nxt
        cur = nxt


def _candidate_maps(g: Graph) -> Iterator[list[int]]:
    colors = _refined_colors(g)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    ordered = [groups[c] for c in sorted(groups)]
    for perms in itertools.product(*(itertools.permutations(grp) for grp in ordered)):
        newidx = [0] * g.n
        k = 0
        for perm in perms:
            for v in perm:
                newidx[v] = k
                k += 1
        yield newidx


@dataclass(frozen=True)
class _CompCanon:
    encoding: tuple
    order: tuple[int, ...]
    parity: int
    zero: bool
    graph: Graph


@lru_cache(maxsize=200_000)
def _canon_component(g: Graph) -> _CompCanon:
    if g.n > _VERTEX_BUDGET[0]:
        raise VertexBudgetExceeded(f"{g.n} vertices exceeds budget {_VERTEX_BUDGET[0]}")
    best_enc = None
    best: tuple | None = None
    parities: set[int] = set()
    zero = False
    for h in (g, g.reverse()):
        for newidx in _candidate_maps(h):
            relabeled = Graph(
                h.n,
                tuple(Edge(newidx[e.src], newidx[e.dst], e.label, 1) for e in h.edges),
            )
            fixed = _gauge_potentials(relabeled)
            gf = _apply_potentials(relabeled, fixed)
            enc_e = [(e.src, e.dst, e.label.sort_key()) for e in gf.edges]
            keys = [
                (min(s, d), max(s, d), 1 if s > d else 0, lk) for s, d, lk in enc_e
            ]
            order = sorted(range(len(keys)), key=keys.__getitem__)
            enc = tuple(enc_e[i] for i in order)
            sort_keys = tuple(keys[i] for i in order)
            if best_enc is None or sort_keys < best_enc:
                best_enc = sort_keys
                best = (enc, tuple(order), gf)
                parities = {permutation_parity(order)}
                zero = any(sort_keys[i] == sort_keys[i + 1] for i in range(len(sort_keys) - 1))
            elif sort_keys == best_enc:
                parities.add(permutation_parity(order))
    assert best is not None
    enc, order, gf = best
    if len(parities) > 1:
        zero = True
    graph = Graph(g.n, tuple(gf.edges[i] for i in order))
    return _CompCanon((g.n, enc), order, min(parities), zero, graph)


def canonical_form(g: Graph, coeff: Fraction | int = 1) -> tuple[CanonicalKey, Fraction] | None:
    """Return ``(key, coeff)`` with coeff relative to ``representative(key)``,
    or None when the graph vanishes (an odd self-equivalence)."""
    c = Fraction(coeff)
    for e in g.edges:
        if e.sign < 0:
            c = -c
    if not g.edges:
        return CanonicalKey(), c
    parts = []
    g = split_blocks(g)
    for sub, ids in component_subgraphs(g):
        plain = Graph(sub.n, tuple(Edge(e.src, e.dst, e.label, 1) for e in sub.edges))
        cc = _canon_component(plain)
        if cc.zero:
            return None
        parts.append((cc.encoding, cc, ids))
    parts.sort(key=lambda p: p[0])
    for a, b in zip(parts, parts[1:]):
        if a[0] == b[0] and len(a[0][1]) % 2 == 1:
            return None
    final: list[int] = []
    for _, cc, ids in parts:
        final.extend(ids[j] for j in cc.order)
    if permutation_parity(final):
        c = -c
    key = CanonicalKey(tuple(p[0] for p in parts))
    if key not in _REPS:
        _REPS[key] = disjoint_union(p[1].graph for p in parts)
    return key, c


def canonical_graph(g: Graph) -> tuple[Graph, Fraction] | None:
    res = canonical_form(g)
    if res is None:
        return None
    key, c = res
    return representative(key), c


class GraphSum:
    """Q-linear combination of canonical graph classes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[CanonicalKey, Fraction] | None = None):
        self.terms: dict[CanonicalKey, Fraction] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = Fraction(v)

    @staticmethod
    def from_graph(g: Graph, coeff: Fraction | int = 1) -> "GraphSum":
        s = GraphSum()
        s.add_graph(g, coeff)
        return s

    @staticmethod
    def from_graphs(items: Iterable[tuple[Graph, Fraction | int]]) -> "GraphSum":
        s = GraphSum()
        for g, c in items:
            s.add_graph(g, c)
        return s

    @staticmethod
    def unit() -> "GraphSum":
        return GraphSum({CanonicalKey(): Fraction(1)})

    def add_graph(self, g: Graph, coeff: Fraction | int = 1) -> None:
        res = canonical_form(g, coeff)
        if res is not None:
            self.add_key(*res)

    def add_key(self, key: CanonicalKey, coeff: Fraction | int) -> None:
        if not coeff:
            return
        v = self.terms.get(key, Fraction(0)) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def copy(self) -> "GraphSum":
        return GraphSum(self.terms)

    def __add__(self, other: "GraphSum") -> "GraphSum":
        out = self.copy()
        for k, v in other.terms.items():
            out.add_key(k, v)
        return out

    def __sub__(self, other: "GraphSum") -> "GraphSum":
        return self + other.scale(-1)

    def __neg__(self) -> "GraphSum":
        return self.scale(-1)

    def scale(self, q: Fraction | int) -> "GraphSum":
        if not q:
            return GraphSum()
        return GraphSum({k: v * q for k, v in self.terms.items()})

    def __mul__(self, other: "GraphSum") -> "GraphSum":
        return sum_product(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphSum) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def bigradings(self) -> set[tuple[int, int]]:
        return {(k.weight, k.degree) for k in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "GraphSum(0)"
        return "GraphSum(" + " + ".join(f"{v}*{representative(k)}" for k, v in self.items()) + ")"

    def to_json(self) -> list[dict]:
        from .graph_core import graph_to_json

        return [
            {
                "key": k.hex(),
                "coeff": [v.numerator, v.denominator],
                "graph": graph_to_json(representative(k)),
            }
            for k, v in self.items()
        ]


def sum_combine(op: str, a: GraphSum, b: GraphSum | None = None, q: Fraction | int | None = None) -> GraphSum:
    if op == "add":
        if b is None:
            raise TypeError("add needs two sums")
        return a + b
    if op == "scale":
        if q is None:
            raise TypeError("scale needs a scalar")
        return a.scale(q)
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=200_000)
def key_product(k1: CanonicalKey, k2: CanonicalKey) -> tuple[CanonicalKey, Fraction] | None:
    return canonical_form(disjoint_union([representative(k1), representative(k2)]))


def sum_product(a: GraphSum, b: GraphSum) -> GraphSum:
    out = GraphSum()
    for k1, v1 in a.terms.items():
        for k2, v2 in b.terms.items():
            res = key_product(k1, k2)
            if res is not None:
                out.add_key(res[0], v1 * v2 * res[1])
    return out

