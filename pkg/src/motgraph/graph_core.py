"""Graphs with ordered, oriented, signed, labeled edges.

The edge list order is the ordering omega.  Self-loops and parallel edges
are allowed; every vertex must carry at least one edge end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .labels import ONE, Monomial

__all__ = [
    "Edge",
    "Graph",
    "Loop",
    "StructureReport",
    "Handle",
    "HandleDecomposition",
    "InvalidGraph",
    "CycleBudgetExceeded",
    "validate_graph",
    "graph_from_json",
    "graph_to_json",
    "betti",
    "components",
    "component_subgraphs",
    "spanning_forest",
    "loop_coefficient",
    "loop_data",
    "enumerate_simple_cycles",
    "strongly_connected",
    "biconnected_blocks",
    "split_blocks",
    "structure",
    "valences",
    "handle_decomposition",
    "disjoint_union",
    "subgraph",
]

DEFAULT_CYCLE_BUDGET = 10**6


class InvalidGraph(ValueError):
    def __init__(self, violations: list[tuple[str, str]]):
        self.violations = violations
        super().__init__("; ".join(f"{k}: {d}" for k, d in violations))


class CycleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    label: Monomial = ONE
    sign: int = 1

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst

    def reversed(self) -> "Edge":
        return Edge(self.dst, self.src, self.label, self.sign)

    def relabel(self, label: Monomial) -> "Edge":
        return Edge(self.src, self.dst, label, self.sign)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def weight(self) -> int:
        return betti(self)[1]

    def degree(self) -> int:
        h0, h1 = betti(self)
        return h1 - self.n + h0

    def bigrading(self) -> tuple[int, int]:
        h0, h1 = betti(self)
        return h1, h1 - self.n + h0

    def reverse(self) -> "Graph":
        return Graph(self.n, tuple(e.reversed() for e in self.edges))

    def with_labels(self, labels: Sequence[Monomial]) -> "Graph":
        return Graph(self.n, tuple(e.relabel(l) for e, l in zip(self.edges, labels)))

    def labels(self) -> tuple[Monomial, ...]:
        return tuple(e.label for e in self.edges)

    def __str__(self) -> str:
        body = ", ".join(
            f"{'' if e.sign > 0 else '-'}{e.src}->{e.dst}:{e.label}" for e in self.edges
        )
        return f"G[{self.n}]({body})"


EMPTY = Graph(0, ())


def validate_graph(raw) -> Graph:
    """Build a Graph from a Graph, a JSON-like dict, or ``(n, edges)``; report
    every violation at once."""
    if isinstance(raw, Graph):
        n, edges = raw.n, list(raw.edges)
    elif isinstance(raw, dict):
        return graph_from_json(raw)
    else:
        n, edges = raw
        edges = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
    problems: list[tuple[str, str]] = []
    touched = [False] * max(n, 0)
    for i, e in enumerate(edges):
        bad = False
        for v in (e.src, e.dst):
            if not (0 <= v < n):
                problems.append(("InvalidVertexIndex", f"edge {i} uses vertex {v} (n={n})"))
                bad = True
        if not bad:
            touched[e.src] = touched[e.dst] = True
        if not isinstance(e.label, Monomial):
            problems.append(("ZeroLabel", f"edge {i} label {e.label!r} is not a nonzero monomial"))
        if e.sign not in (1, -1):
            problems.append(("InvalidSign", f"edge {i} sign {e.sign}"))
    for v, t in enumerate(touched):
        if not t:
            problems.append(("IsolatedVertex", f"vertex {v}"))
    if problems:
        raise InvalidGraph(problems)
    return Graph(n, tuple(edges))


def graph_from_json(obj: dict) -> Graph:
    problems: list[tuple[str, str]] = []
    edges = []
    for i, e in enumerate(obj.get("edges", [])):
        lab = e.get("label", 1)
        try:
            label = Monomial.from_json(lab)
        except (ValueError, ZeroDivisionError) as exc:
            problems.append(("ZeroLabel", f"edge {i}: {exc}"))
            label = ONE
        edges.append(Edge(int(e["src"]), int(e["dst"]), label, int(e.get("sign", 1))))
    if problems:
        raise InvalidGraph(problems)
    return validate_graph((int(obj["vertices"]), edges))


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": g.n,
        "edges": [
            {"src": e.src, "dst": e.dst, "label": e.label.to_json(), "sign": e.sign}
            for e in g.edges
        ],
    }


def _union_find(g: Graph) -> list[int]:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = find(e.src), find(e.dst)
        if a != b:
            parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(g.n)]


def components(g: Graph) -> list[list[int]]:
    """Vertex sets of connected components, ordered by lowest vertex."""
    roots = _union_find(g)
    comp: dict[int, list[int]] = {}
    for v, r in enumerate(roots):
        comp.setdefault(r, []).append(v)
    return [comp[r] for r in sorted(comp)]


def betti(g: Graph) -> tuple[int, int]:
    h0 = len(components(g))
    return h0, len(g.edges) - g.n + h0


def subgraph(g: Graph, edge_ids: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on the given edges (in the given order), dropping untouched
    vertices.  Returns the graph and the old index of each new vertex."""
    verts = sorted({v for i in edge_ids for v in (g.edges[i].src, g.edges[i].dst)})
    idx = {v: k for k, v in enumerate(verts)}
    edges = tuple(
        Edge(idx[g.edges[i].src], idx[g.edges[i].dst], g.edges[i].label, g.edges[i].sign)
        for i in edge_ids
    )
    return Graph(len(verts), edges), verts


def component_subgraphs(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components as graphs, each with the original edge indices
    in omega order."""
    roots = _union_find(g)
    by_root: dict[int, list[int]] = {}
    for i, e in enumerate(g.edges):
        by_root.setdefault(roots[e.src], []).append(i)
    out = []
    for r in sorted(by_root):
        sub, _ = subgraph(g, by_root[r])
        out.append((sub, by_root[r]))
    return out


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    n = 0
    edges: list[Edge] = []
    for h in graphs:
        edges.extend(Edge(e.src + n, e.dst + n, e.label, e.sign) for e in h.edges)
        n += h.n
    return Graph(n, tuple(edges))


def _incidence(g: Graph) -> list[list[tuple[int, int, int]]]:
    """Per vertex: (neighbor, edge index, direction) with direction +1 when
    the edge leaves the vertex."""
    inc: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n)]
    for i, e in enumerate(g.edges):
        if e.is_loop:
            continue
        inc[e.src].append((e.dst, i, 1))
        inc[e.dst].append((e.src, i, -1))
    for lst in inc:
        lst.sort()
    return inc


def spanning_forest(g: Graph) -> tuple[list[int], list[int | None]]:
    """BFS forest from the lowest vertex of each component, ties broken by
    (neighbor index, edge position).  Returns forest edge indices and the
    parent edge of every vertex."""
    inc = _incidence(g)
    parent_edge: list[int | None] = [None] * g.n
    seen = [False] * g.n
    forest: list[int] = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, i, _ in inc[v]:
                if not seen[w]:
                    seen[w] = True
                    parent_edge[w] = i
                    forest.append(i)
                    queue.append(w)
    return forest, parent_edge


@dataclass(frozen=True)
class Loop:
    """Closed walk as (edge index, +1 along the edge / -1 against it)."""

    steps: tuple[tuple[int, int], ...]

    def edge_set(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.steps)

    def reversed(self) -> "Loop":
        return Loop(tuple((i, -d) for i, d in reversed(self.steps)))


def loop_coefficient(g: Graph, loop: Loop) -> Monomial:
    chi = ONE
    for i, d in loop.steps:
        lab = g.edges[i].label
        chi = chi * (lab if d > 0 else lab.inv())
    return chi


def _tree_path(g: Graph, parent_edge: list[int | None], a: int, b: int) -> list[tuple[int, int]]:
    """Steps along the forest from a to b (same component)."""

    def up(v: int) -> list[int]:
        path = [v]
        while parent_edge[v] is not None:
            e = g.edges[parent_edge[v]]
            v = e.src if e.dst == v else e.dst
            path.append(v)
        return path

    pa, pb = up(a), up(b)
    sb = set(pb)
    lca = next(v for v in pa if v in sb)
    steps: list[tuple[int, int]] = []
    v = a
    while v != lca:
        i = parent_edge[v]
        e = g.edges[i]
        nxt = e.dst if e.src == v else e.src
        steps.append((i, 1 if e.src == v else -1))
        v = nxt
    down: list[tuple[int, int]] = []
    v = b
    while v != lca:
        i = parent_edge[v]
        e = g.edges[i]
        prev = e.src if e.dst == v else e.dst
        down.append((i, 1 if e.dst == v else -1))
        v = prev
    return steps + list(reversed(down))


def loop_data(g: Graph) -> tuple[list[int], list[Loop], list[Monomial]]:
    """Spanning forest, fundamental loops (one per non-forest edge, traversed
    along that edge first) and their loop coefficients."""
    forest, parent_edge = spanning_forest(g)
    fset = set(forest)
    loops: list[Loop] = []
    for i, e in enumerate(g.edges):
        if i in fset:
            continue
        steps = [(i, 1)]
        if not e.is_loop:
            steps += _tree_path(g, parent_edge, e.dst, e.src)
        loops.append(Loop(tuple(steps)))
    return forest, loops, [loop_coefficient(g, L) for L in loops]


def enumerate_simple_cycles(g: Graph, budget: int = DEFAULT_CYCLE_BUDGET) -> list[Loop]:
    """Every simple cycle of the underlying undirected multigraph once.

    A cycle is reported starting at its lowest vertex, in the direction whose
    first edge index is smaller than its last."""
    inc = _incidence(g)
    found: list[Loop] = []
    for i, e in enumerate(g.edges):
        if e.is_loop:
            found.append(Loop(((i, 1),)))
    work = 0
    for s in range(g.n):
        on_path = [False] * g.n
        on_path[s] = True
        steps: list[tuple[int, int]] = []

        def dfs(v: int) -> None:
            nonlocal work
            for w, i, d in inc[v]:
                work += 1
                if work > budget:
                    raise CycleBudgetExceeded(f"more than {budget} search steps")
                if steps and i == steps[-1][0]:
                    continue
                if w == s:
                    if steps and steps[0][0] < i:
                        found.append(Loop(tuple(steps + [(i, d)])))
                    continue
                if w < s or on_path[w]:
                    continue
                on_path[w] = True
                steps.append((i, d))
                dfs(w)
                steps.pop()
                on_path[w] = False

        dfs(s)
        if len(found) > budget:
            raise CycleBudgetExceeded(f"more than {budget} cycles")
    return found


def strongly_connected(g: Graph, verts: Sequence[int]) -> bool:
    if not verts:
        return True
    vs = set(verts)
    fwd: dict[int, list[int]] = {v: [] for v in vs}
    bwd: dict[int, list[int]] = {v: [] for v in vs}
    for e in g.edges:
        if e.src in vs:
            fwd[e.src].append(e.dst)
            bwd[e.dst].append(e.src)

    def reach(adj: dict[int, list[int]]) -> int:
        start = verts[0]
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    return reach(fwd) == len(vs) and reach(bwd) == len(vs)


def biconnected_blocks(g: Graph) -> tuple[list[list[int]], set[int]]:
    """Blocks as lists of edge indices (omega order), plus articulation
    vertices.  Self-loops are blocks of their own; parallel edges stay in
    one block."""
    inc = _incidence(g)
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    blocks: list[list[int]] = []
    arts: set[int] = set()
    edge_stack: list[int] = []

    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # iterative DFS: frames of (vertex, parent edge, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, pos = stack[-1]
            if pos < len(inc[v]):
                stack[-1] = (v, pe, pos + 1)
                w, i, _ = inc[v][pos]
                if i == pe:
                    continue
                if disc[w] == -1:
                    edge_stack.append(i)
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, i, 0))
                elif disc[w] < disc[v]:
                    edge_stack.append(i)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    break
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    if u != root:
                        arts.add(u)
                    blk: list[int] = []
                    while True:
                        i = edge_stack.pop()
                        blk.append(i)
                        if i == pe:
                            break
                    blocks.append(sorted(blk))
        if root_children > 1:
            arts.add(root)
    for i, e in enumerate(g.edges):
        if e.is_loop:
            blocks.append([i])
            # a self-loop makes its vertex a cut point when anything else is attached
            if any(True for _ in inc[e.src]) or sum(
                1 for f in g.edges if f.is_loop and f.src == e.src
            ) > 1:
                arts.add(e.src)
    blocks.sort(key=lambda b: b[0])
    return blocks, arts


def split_blocks(g: Graph) -> Graph:
    """Separate g at its articulation vertices, keeping the edge order."""
    blocks, arts = biconnected_blocks(g)
    if not arts:
        return g
    vmap: dict[tuple[int, int], int] = {}
    owner: dict[int, int] = {}
    for b, ids in enumerate(blocks):
        for i in ids:
            owner[i] = b
    n = 0
    edges = []
    for i, e in enumerate(g.edges):
        b = owner[i]
        ends = []
        for v in (e.src, e.dst):
            if (b, v) not in vmap:
                vmap[(b, v)] = n
                n += 1
            ends.append(vmap[(b, v)])
        edges.append(Edge(ends[0], ends[1], e.label, e.sign))
    return Graph(n, tuple(edges))


@dataclass(frozen=True)
class StructureReport:
    h0: int
    h1: int
    strongly_connected: tuple[bool, ...]
    articulation_vertices: frozenset[int]
    biconnected_pieces: tuple[Graph, ...]
    piece_edges: tuple[tuple[int, ...], ...]


def structure(g: Graph) -> StructureReport:
    comps = components(g)
    h0 = len(comps)
    blocks, arts = biconnected_blocks(g)
    pieces = tuple(subgraph(g, b)[0] for b in blocks)
    return StructureReport(
        h0=h0,
        h1=len(g.edges) - g.n + h0,
        strongly_connected=tuple(strongly_connected(g, c) for c in comps),
        articulation_vertices=frozenset(arts),
        biconnected_pieces=pieces,
        piece_edges=tuple(tuple(b) for b in blocks),
    )


def valences(g: Graph) -> list[int]:
    val = [0] * g.n
    for e in g.edges:
        val[e.src] += 1
        val[e.dst] += 1
    return val


@dataclass(frozen=True)
class Handle:
    edge_path: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_path)


@dataclass(frozen=True)
class HandleDecomposition:
    handles: tuple[Handle, ...]
    interior_edges: tuple[int, ...]
    short_chains: tuple[int, ...] = ()
    degenerate_cycle: bool = False
    interior: Graph = field(default=EMPTY)


def handle_decomposition(g: Graph) -> HandleDecomposition:
    """Maximal chains through 2-valent vertices with at least two edges.

    Chain ends have valence other than 2.  A component that is a bare cycle of
    2-valent vertices has no chain ends and is flagged instead."""
    val = valences(g)
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, e in enumerate(g.edges):
        inc[e.src].append((i, e.dst))
        if not e.is_loop:
            inc[e.dst].append((i, e.src))
    used: set[int] = set()
    handles: list[Handle] = []
    short: list[int] = []
    for start in range(g.n):
        if val[start] == 2:
            continue
        for i, w in sorted(inc[start]):
            if i in used or g.edges[i].is_loop:
                continue
            path = [i]
            verts = [start, w]
            v, prev = w, i
            while val[v] == 2 and v != start:
                nxt = [(j, x) for j, x in inc[v] if j != prev]
                j, x = nxt[0]
                path.append(j)
                verts.append(x)
                v, prev = x, j
            used.update(path)
            if len(path) >= 2:
                handles.append(Handle(tuple(path), tuple(verts)))
            else:
                short.append(i)
    degenerate = False
    for comp in components(g):
        if comp and all(val[v] == 2 for v in comp):
            degenerate = True
    handle_edges = {i for h in handles for i in h.edge_path}
    interior_ids = tuple(i for i in range(len(g.edges)) if i not in handle_edges)
    interior = subgraph(g, interior_ids)[0] if interior_ids else EMPTY
    return HandleDecomposition(
        handles=tuple(handles),
        interior_edges=interior_ids,
        short_chains=tuple(short),
        degenerate_cycle=degenerate,
        interior=interior,
    )
