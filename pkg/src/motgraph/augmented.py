"""Topologically augmented graphs: labels are monomials in the generators and
in simplex coordinates t1..tm (with 0 <= t1 <= ... <= tm <= 1), carrying the
face differential delta on top of the graph differential.

Also home to the necklace family and the circular bar construction used to
check the closure of the Hodge-realisation element."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bar import BarElement, shuffle
from .canonical import CanonicalKey, GraphSum, canonical_form, key_product, representative
from .dga import _diff_key, differential_graph, is_admissible
from .graph_core import Edge, Graph, enumerate_simple_cycles, graph_to_json, loop_coefficient
from .labels import INFINITY, ONE, ZERO, Monomial, is_simplex_symbol, mono, mono_substitute, simplex_index

__all__ = [
    "AugGraph",
    "AugSum",
    "AugValidation",
    "CircularBarElement",
    "ClosureFailed",
    "ClosureReport",
    "aug_validate",
    "aug_delta",
    "aug_partial",
    "face",
    "make_necklace",
    "make_eps",
    "g0",
    "bold_eps",
    "XiFamily",
    "lambda_term",
    "chi_term",
    "xi_top",
    "make_xi_family",
    "verify_circular_closure",
    "boundary_identities",
    "bold_xi",
    "slot_differential",
    "circ_partial",
    "circ_mu",
    "circ_total",
    "face_sum",
    "default_labels",
    "eps_graphs",
]

log = logging.getLogger(__name__)


def t(k: int) -> Monomial:
    return Monomial.make(1, {f"t{k}": 1})


def _coord(k: int, dim: int) -> Monomial:
    """t_k with the conventions t_0 = 0 excluded and t_{dim+1} = 1."""
    return ONE if k == dim + 1 else t(k)


# --- augmented graphs ------------------------------------------------------


@dataclass(frozen=True)
class AugGraph:
    graph: Graph
    dim: int

    def __post_init__(self) -> None:
        for e in self.graph.edges:
            for s, _ in e.label.exps:
                if is_simplex_symbol(s) and not 1 <= simplex_index(s) <= self.dim:
                    raise ValueError(f"coordinate {s} outside simplex of dimension {self.dim}")

    @property
    def twisted_degree(self) -> int:
        return self.graph.degree() - self.dim

    def to_json(self) -> dict:
        out = graph_to_json(self.graph)
        out["simplexDim"] = self.dim
        return out


AugKey = tuple[int, CanonicalKey]


class AugSum:
    """Q-linear combination of augmented graph classes keyed by (dim, key)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[AugKey, Fraction] | None = None):
        self.terms: dict[AugKey, Fraction] = {}
        if terms:
            for k, v in terms.items():
                self.add_key(k, v)

    @staticmethod
    def constant(s: GraphSum) -> "AugSum":
        return AugSum({(0, k): v for k, v in s.terms.items()})

    def add_graph(self, g: Graph, dim: int, coeff: Fraction | int = 1) -> None:
        res = canonical_form(g, coeff)
        if res is not None:
            self.add_key((dim, res[0]), res[1])

    def add_key(self, key: AugKey, coeff: Fraction | int) -> None:
        if not coeff:
            return
        v = self.terms.get(key, Fraction(0)) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "AugSum") -> "AugSum":
        out = AugSum(self.terms)
        for k, v in other.terms.items():
            out.add_key(k, v)
        return out

    def __sub__(self, other: "AugSum") -> "AugSum":
        return self + other.scale(-1)

    def __neg__(self) -> "AugSum":
        return self.scale(-1)

    def scale(self, q: Fraction | int) -> "AugSum":
        return AugSum({k: v * q for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AugSum) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def graphs(self) -> list[tuple[AugGraph, Fraction]]:
        return [(AugGraph(representative(k), d), v) for (d, k), v in self.items()]

    def times(self, s: GraphSum) -> "AugSum":
        """Module action: augmented sum times a constant graph sum (on the right)."""
        out = AugSum()
        for (d, k1), v1 in self.terms.items():
            for k2, v2 in s.terms.items():
                res = key_product(k1, k2)
                if res is not None:
                    out.add_key((d, res[0]), v1 * v2 * res[1])
        return out

    def constant_part(self) -> GraphSum:
        return GraphSum({k: v for (d, k), v in self.terms.items() if d == 0})

    def __repr__(self) -> str:
        if not self.terms:
            return "AugSum(0)"
        return "AugSum(" + " + ".join(f"{v}*[{d}]{representative(k)}" for (d, k), v in self.items()) + ")"

    def to_json(self) -> list[dict]:
        return [
            {"simplexDim": d, "key": k.hex(), "coeff": [v.numerator, v.denominator],
             "graph": graph_to_json(representative(k))}
            for (d, k), v in self.items()
        ]


def _strip_symbol(g: Graph, sym: str) -> Graph | None:
    """Rescale vertices so that no label involves sym.  None when some loop
    coefficient depends on sym (then no gauge removes it)."""
    pot = [None] * g.n
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n)]
    for e in g.edges:
        x = e.label.exp_map.get(sym, 0)
        if e.is_loop:
            if x:
                return None
            continue
        # potential p with label exponent x + p[dst] - p[src] = 0
        adj[e.src].append((e.dst, x, 1))
        adj[e.dst].append((e.src, x, -1))
    for root in range(g.n):
        if pot[root] is not None:
            continue
        pot[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, x, d in adj[v]:
                want = pot[v] - x if d == 1 else pot[v] + x
                if pot[w] is None:
                    pot[w] = want
                    queue.append(w)
                elif pot[w] != want:
                    return None
    out = []
    for e in g.edges:
        lab = e.label
        if not e.is_loop:
            shift = pot[e.dst] - pot[e.src]
            if shift:
                lab = lab * Monomial.make(1, {sym: shift})
        out.append(e.relabel(lab))
    return Graph(g.n, tuple(out))


def face(g: Graph, dim: int, i: int) -> Graph | None:
    """The i-th face of an augmented graph on a dim-simplex, renumbered onto a
    (dim-1)-simplex.  None when the face is trivial (some label is 0 or inf
    after any vertex rescaling)."""
    if not 0 <= i <= dim or dim == 0:
        raise ValueError("face index out of range")
    if i == 0:
        h = _strip_symbol(g, "t1")
        if h is None:
            return None
        rule: dict = {}
    elif i < dim:
        h = g
        rule = {f"t{i}": t(i + 1)}
    else:
        h = g
        rule = {f"t{dim}": ONE}
    ren = {}
    for k in range(1, dim + 1):
        if i == 0 and k >= 2:
            ren[f"t{k}"] = t(k - 1)
        elif 0 < i < dim and k > i:
            ren[f"t{k}"] = t(k - 1)
    out = []
    for e in h.edges:
        lab = mono_substitute(e.label, rule) if rule else e.label
        if lab is ZERO or lab is INFINITY:
            return None
        lab = mono_substitute(lab, ren)
        out.append(e.relabel(lab))
    return Graph(h.n, tuple(out))


def aug_delta(a: AugGraph | AugSum, dropped: list | None = None) -> AugSum:
    """delta = sum_i (-1)^i delta_i; trivial faces are dropped (and recorded
    in ``dropped`` when given)."""
    out = AugSum()
    for g, d, c in _iter_aug(a):
        if d == 0:
            continue
        for i in range(d + 1):
            h = face(g, d, i)
            if h is None:
                if dropped is not None:
                    dropped.append((AugGraph(g, d), i))
                continue
            out.add_graph(h, d - 1, c * (-1) ** i)
    if dropped:
        log.debug("aug_delta dropped %d trivial faces", len(dropped))
    return out


def aug_partial(a: AugGraph | AugSum) -> AugSum:
    """Graph differential acting on the labels as functions on the simplex."""
    out = AugSum()
    for g, d, c in _iter_aug(a):
        for k, v in differential_graph(g, c).terms.items():
            out.add_key((d, k), v)
    return out


def _iter_aug(a: AugGraph | AugSum) -> Iterable[tuple[Graph, int, Fraction]]:
    if isinstance(a, AugGraph):
        yield a.graph, a.dim, Fraction(1)
    else:
        for (d, k), v in a.items():
            yield representative(k), d, v


@dataclass
class AugValidation:
    valid: bool
    unit_loops: list[tuple[int | None, list[int]]] = field(default_factory=list)
    unbalanced_zero: list[int] = field(default_factory=list)
    no_finite_face: bool = False
    base: object = None

    def violations(self) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = []
        out += [("UnitLoopOnFace", x) for x in self.unit_loops]
        out += [("ZeroWithoutPole", x) for x in self.unbalanced_zero]
        if self.no_finite_face:
            out.append(("NoFiniteFace", None))
        return out


def _substituted_labels(g: Graph, rule: Mapping) -> list:
    return [mono_substitute(e.label, rule) for e in g.edges]


def aug_validate(a: AugGraph) -> AugValidation:
    """Admissibility of an augmentation, decided at the level of monomials.

    (1) on the open simplex and on every face, no simple loop has loop
    coefficient identically 1; (2) whenever a boundary stratum sends a label
    to 0 some label goes to infinity; (3) some codimension-one face has no
    infinite label.  Monomials in positive coordinates never vanish in the
    interior, so (2) is only tested on boundary strata."""
    g, d = a.graph, a.dim
    report = AugValidation(True)
    base = is_admissible(g)
    report.base = base
    if base.not_strongly_connected:
        report.valid = False
    loops = enumerate_simple_cycles(g)
    strata: list[tuple[int | None, dict]] = [(None, {})]
    for i in range(d + 1):
        if i == 0:
            strata.append((0, {"t1": ZERO}))
        elif i < d:
            strata.append((i, {f"t{i}": t(i + 1)}))
        else:
            strata.append((i, {f"t{d}": ONE}))
    finite_face = d == 0
    for idx, rule in strata:
        for lp in loops:
            chi = loop_coefficient(g, lp)
            try:
                val = mono_substitute(chi, rule)
            except ArithmeticError:
                continue
            if isinstance(val, Monomial) and val.is_one():
                report.unit_loops.append((idx, sorted(lp.edge_set())))
        if idx is None:
            continue
        try:
            labs = _substituted_labels(g, rule)
        except ArithmeticError:
            continue
        has_zero = any(x is ZERO for x in labs)
        has_inf = any(x is INFINITY for x in labs)
        if has_zero and not has_inf:
            report.unbalanced_zero.append(idx)
        if not has_inf:
            finite_face = True
    if d and not finite_face:
        report.no_finite_face = True
    if report.unit_loops or report.unbalanced_zero or report.no_finite_face:
        report.valid = False
    return report


# --- necklaces ----------------------------------------------------------------


def make_necklace(kind: str, a0, beads: Sequence) -> Graph:
    """Necklace with len(beads) two-edge beads.  The top edge comes first;
    bead i contributes an edge labelled 1 then an edge labelled a_i.
    kind "L" runs the top edge from the last vertex back to the first, "R" the
    other way."""
    a0 = mono(a0)
    n = len(beads)
    if kind == "L":
        top = Edge(n, 0, a0)
    elif kind == "R":
        top = Edge(0, n, a0)
    else:
        raise ValueError("kind must be 'L' or 'R'")
    edges = [top]
    for i, a in enumerate(beads, start=1):
        edges.append(Edge(i, i - 1, ONE))
        edges.append(Edge(i - 1, i, mono(a)))
    return Graph(n + 1, tuple(edges))


def eps_graphs(a0, beads: Sequence) -> list[tuple[Graph, int]]:
    a0 = mono(a0)
    return [(make_necklace("L", a0, beads), 1), (make_necklace("R", a0.inv(), beads), -1)]


def make_eps(a0, beads: Sequence) -> GraphSum:
    """eps^n(a0; a1..an) = G^L(a0; a) - G^R(1/a0; a)."""
    return GraphSum.from_graphs(eps_graphs(a0, beads))


def g0(a) -> GraphSum:
    return GraphSum.from_graph(Graph(1, (Edge(0, 0, mono(a)),)))


def _prod(xs: Iterable[Monomial]) -> Monomial:
    out = ONE
    for x in xs:
        out = out * x
    return out


def bold_eps(a0, beads: Sequence) -> BarElement:
    """sum_S (-1)^|S| sum_{J subset S} (-1)^|J| [eps(a0 prod_J a_j; a minus S) | shuffle_S G0(a_s)]."""
    a0 = mono(a0)
    beads = [mono(b) for b in beads]
    n = len(beads)
    out = BarElement()
    for r in range(n + 1):
        for S in itertools.combinations(range(n), r):
            rest = [beads[i] for i in range(n) if i not in S]
            tail = shuffle(*(BarElement.single(g0(beads[s])) for s in S))
            for q in range(r + 1):
                for J in itertools.combinations(S, q):
                    head = BarElement.single(make_eps(a0 * _prod(beads[j] for j in J), rest))
                    out = out + head.concat(tail).scale((-1) ** (r + q))
    return out


# --- the xi family ------------------------------------------------------------


def _xi_graphs(a0: Monomial, beads: Sequence[Monomial], m: int, kind: str) -> tuple[list[tuple[Graph, int]], int]:
    """xi^n_m with the sigma ("lambda") or rho ("chi") augmentation on a
    (m+1)-simplex.  Returns the signed graphs of eps^{n-m} times the G0
    factors, and the simplex dimension."""
    n = len(beads)
    k = n - m
    dim = m + 1
    c = lambda j: _coord(j, dim)  # noqa: E731
    ring = list(beads[:k])
    if kind == "lambda":
        if k:
            top = a0 / c(2)
            ring[-1] = ring[-1] * c(2) / c(1)
        else:
            top = a0 / c(1)
        tails = [beads[k + j - 1] * c(j + 2) / c(j + 1) for j in range(1, m + 1)]
    elif kind == "chi":
        if m < 1:
            raise ValueError("chi terms start at m = 1")
        top = a0 / c(2)
        tails = [beads[k] * c(3) / c(1)]
        tails += [beads[k + j - 1] * c(j + 2) / c(j + 1) for j in range(2, m + 1)]
    else:
        raise ValueError(kind)
    loops = [Edge(0, 0, x) for x in tails]
    out = []
    for g, s in eps_graphs(top, ring):
        edges = list(g.edges)
        n0 = g.n
        for i, e in enumerate(loops):
            edges.append(Edge(n0 + i, n0 + i, e.label))
        out.append((Graph(n0 + len(loops), tuple(edges)), s))
    return out, dim


def _xi_sum(a0: Monomial, beads: Sequence[Monomial], m: int, kind: str, shifts: Sequence[int]) -> AugSum:
    out = AugSum()
    for q in range(len(shifts) + 1):
        for J in itertools.combinations(shifts, q):
            graphs, dim = _xi_graphs(a0 * _prod(beads[j] for j in J), beads, m, kind)
            for g, s in graphs:
                out.add_graph(g, dim, s * (-1) ** q)
    return out


def lambda_term(a0, beads: Sequence, m: int) -> AugSum:
    """lambda^n_m: alternating sum over J in {n-m+1..n} of sigma-augmented xi^n_m(a0 prod_J a_j)."""
    a0 = mono(a0)
    beads = [mono(b) for b in beads]
    n = len(beads)
    return _xi_sum(a0, beads, m, "lambda", range(n - m, n))


def chi_term(a0, beads: Sequence, m: int) -> AugSum:
    """chi^n_m: alternating sum over I in {n-m+2..n} of rho-augmented xi^n_m(a0 prod_I a_i)."""
    a0 = mono(a0)
    beads = [mono(b) for b in beads]
    n = len(beads)
    return _xi_sum(a0, beads, m, "chi", range(n - m + 1, n))


def xi_top(a0, beads: Sequence) -> AugSum:
    """sum_m (-1)^m (lambda^n_m - chi^n_m), chi starting at m = 1."""
    n = len(beads)
    out = AugSum()
    for m in range(n + 1):
        out = out + lambda_term(a0, beads, m).scale((-1) ** m)
    for m in range(1, n + 1):
        out = out - chi_term(a0, beads, m).scale((-1) ** m)
    return out


# --- circular bar construction ---------------------------------------------

CircWord = tuple[int, CanonicalKey, tuple[CanonicalKey, ...]]

_UNIT = CanonicalKey()


def _deg_b(key: CanonicalKey) -> int:
    return key.bar_degree


class CircularBarElement:
    """Q-linear combination of [(G0, sigma) | G1 | ... | Gk]: an augmented slot
    (simplex dimension, class; the unit is allowed at dimension 0) followed
    by a word of constant graph classes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[CircWord, Fraction] | None = None):
        self.terms: dict[CircWord, Fraction] = {}
        if terms:
            for k, v in terms.items():
                self.add(k, v)

    def add(self, key: CircWord, coeff: Fraction | int) -> None:
        if not coeff:
            return
        d, slot, word = key
        if any(w.is_unit() for w in word):
            return
        key = (d, slot, tuple(word))
        v = self.terms.get(key, Fraction(0)) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    @staticmethod
    def slot_tensor(slot: AugSum, tail: BarElement) -> "CircularBarElement":
        out = CircularBarElement()
        for (d, k), v in slot.terms.items():
            for w, c in tail.terms.items():
                out.add((d, k, w), v * c)
        return out

    @staticmethod
    def unit_tensor(x: BarElement) -> "CircularBarElement":
        """1 (x) x with the unit in the augmented slot."""
        return CircularBarElement({(0, _UNIT, w): c for w, c in x.terms.items()})

    @staticmethod
    def from_bar(x: BarElement) -> "CircularBarElement":
        """Read the first factor of each word as a constant augmented slot."""
        return CircularBarElement({(0, w[0], w[1:]): c for w, c in x.terms.items() if w})

    def __add__(self, other: "CircularBarElement") -> "CircularBarElement":
        out = CircularBarElement(self.terms)
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def __sub__(self, other: "CircularBarElement") -> "CircularBarElement":
        return self + other.scale(-1)

    def scale(self, q: Fraction | int) -> "CircularBarElement":
        return CircularBarElement({k: v * q for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CircularBarElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))

    def __repr__(self) -> str:
        if not self.terms:
            return "CircularBarElement(0)"
        parts = []
        for (d, s, w), c in self.items():
            body = " | ".join([f"({representative(s)}, dim {d})"] + [str(representative(k)) for k in w])
            parts.append(f"{c}*[{body}]")
        return "CircularBarElement(" + " + ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        return [
            {
                "simplexDim": d,
                "slot": graph_to_json(representative(s)),
                "word": [graph_to_json(representative(k)) for k in w],
                "coeff": [c.numerator, c.denominator],
            }
            for (d, s, w), c in self.items()
        ]


def slot_differential(a: AugSum) -> AugSum:
    """(-1)^m (d - delta) on an m-simplex.  Squares to zero since d and delta
    commute, and is the graph differential on constant augmentations."""
    out = AugSum()
    for (d, k), v in a.terms.items():
        one = AugSum({(d, k): v * (-1) ** d})
        out = out + aug_partial(one) - aug_delta(one)
    return out


def circ_partial(x: CircularBarElement) -> CircularBarElement:
    out = CircularBarElement()
    for (d, slot, word), c in x.terms.items():
        if not slot.is_unit():
            for (d2, k2), v2 in slot_differential(AugSum({(d, slot): Fraction(1)})).terms.items():
                out.add((d2, k2, word), c * v2)
        e = _deg_b(slot) - d
        for j, k in enumerate(word):
            sign = -1 if e % 2 else 1
            for k2, v2 in _diff_key(k):
                out.add((d, slot, word[:j] + (k2,) + word[j + 1 :]), c * v2 * sign)
            e += _deg_b(k)
    return out


def circ_mu(x: CircularBarElement) -> CircularBarElement:
    """Adjacent products; merging factors j and j+1 carries
    -(-1)^(sum_{i<=j} deg_B G_i - m), m the simplex dimension of the slot."""
    out = CircularBarElement()
    for (d, slot, word), c in x.terms.items():
        if not word:
            continue
        e = _deg_b(slot) - d
        sign = -1 if e % 2 else 1
        res = key_product(slot, word[0])
        if res is not None:
            out.add((d, res[0], word[1:]), -c * sign * res[1])
        for j in range(len(word) - 1):
            e += _deg_b(word[j])
            sign = -1 if e % 2 else 1
            res = key_product(word[j], word[j + 1])
            if res is not None:
                out.add((d, slot, word[:j] + (res[0],) + word[j + 2 :]), -c * sign * res[1])
    return out


def circ_total(x: CircularBarElement) -> CircularBarElement:
    return circ_partial(x) + circ_mu(x)


def bold_xi(a0, beads: Sequence) -> CircularBarElement:
    """sum_S (-1)^|S| sum_{J subset S} (-1)^|J| [xi_top(a0 prod_J a_j; a minus S) | shuffle_S G0(a_s)]."""
    a0 = mono(a0)
    beads = [mono(b) for b in beads]
    n = len(beads)
    out = CircularBarElement()
    for r in range(n + 1):
        for S in itertools.combinations(range(n), r):
            rest = [beads[i] for i in range(n) if i not in S]
            tail = shuffle(*(BarElement.single(g0(beads[s])) for s in S))
            for q in range(r + 1):
                for J in itertools.combinations(S, q):
                    slot = xi_top(a0 * _prod(beads[j] for j in J), rest)
                    out = out + CircularBarElement.slot_tensor(slot, tail).scale((-1) ** (r + q))
    return out


def default_labels(n: int) -> tuple[Monomial, list[Monomial]]:
    return mono("a0"), [mono(f"a{i}") for i in range(1, n + 1)]


@dataclass
class XiFamily:
    n: int
    lambdas: list[AugSum]
    chis: list[AugSum | None]
    xi_top: AugSum
    bold_xi: CircularBarElement
    bold_eps: BarElement

    @property
    def summand_count(self) -> int:
        """Augmented xi summands before canonicalisation: 2^m for lambda^n_m,
        2^(m-1) for chi^n_m."""
        return sum(2**m for m in range(self.n + 1)) + sum(2 ** (m - 1) for m in range(1, self.n + 1))


def make_xi_family(n: int, a0=None, beads: Sequence | None = None) -> XiFamily:
    if a0 is None or beads is None:
        a0, beads = default_labels(n)
    if len(beads) != n:
        raise ValueError("need exactly n bead labels")
    a0 = mono(a0)
    beads = [mono(b) for b in beads]
    return XiFamily(
        n=n,
        lambdas=[lambda_term(a0, beads, m) for m in range(n + 1)],
        chis=[None] + [chi_term(a0, beads, m) for m in range(1, n + 1)],
        xi_top=xi_top(a0, beads),
        bold_xi=bold_xi(a0, beads),
        bold_eps=bold_eps(a0, beads),
    )


# --- closure check -----------------------------------------------------------


class ClosureFailed(AssertionError):
    def __init__(self, message: str, residue=None):
        super().__init__(message)
        self.residue = residue


def face_sum(s: AugSum, i: int) -> AugSum:
    """The unsigned i-th face applied termwise."""
    out = AugSum()
    for (d, k), v in s.terms.items():
        h = face(representative(k), d, i)
        if h is not None:
            out.add_graph(h, d - 1, v)
    return out


def _extract(fn, a0: Monomial, beads: list[Monomial], m: int, idx: Iterable[int]) -> AugSum:
    """sum_i (F(a0; a minus i) - F(a0 a_i; a minus i)) * G0(a_i)."""
    out = AugSum()
    for i in idx:
        rest = [b for j, b in enumerate(beads) if j != i]
        loop = g0(beads[i])
        out = out + fn(a0, rest, m).times(loop) - fn(a0 * beads[i], rest, m).times(loop)
    return out


def boundary_identities(a0, beads: Sequence) -> dict[str, dict[int, AugSum]]:
    """Residues of the four boundary identities for lambda^n_m and chi^n_m,
    with k = n - m beads on the necklace part:

      d lambda_m = (-1)^(m+1) X_lambda(m; i < k) - F2 chi_{m+1} + F1 chi_{m+1}(a0 a_k)
      d chi_m = (-1)^(m+1) X_chi(m; i <= k)
      delta lambda_m = -F1 chi_m + F1 chi_m(a0 a_{k+1}) + (-1)^(m+1) X_lambda(m-1; i > k)
      delta chi_m = -F1 chi_m + F2 chi_m + (-1)^(m+1) X_chi(m-1; i > k+1)

    and delta lambda_0 = -eps.  Here F_i is the unsigned i-th face and X the
    bead extraction sum of _extract.  Every residue is empty when they hold."""
    a0 = mono(a0)
    beads = [mono(b) for b in beads]
    n = len(beads)
    out: dict[str, dict[int, AugSum]] = {"alg_lambda": {}, "alg_chi": {}, "top_lambda": {}, "top_chi": {}}
    for m in range(n + 1):
        k = n - m
        sgn = (-1) ** (m + 1)
        lam = lambda_term(a0, beads, m)
        if k >= 1:
            rhs = _extract(lambda_term, a0, beads, m, range(k - 1)).scale(sgn)
            rhs = rhs - face_sum(chi_term(a0, beads, m + 1), 2)
            rhs = rhs + face_sum(chi_term(a0 * beads[k - 1], beads, m + 1), 1)
        else:
            rhs = AugSum()
        out["alg_lambda"][m] = aug_partial(lam) - rhs
        if m == 0:
            out["top_lambda"][m] = aug_delta(lam) + AugSum.constant(make_eps(a0, beads))
            continue
        chi = chi_term(a0, beads, m)
        out["alg_chi"][m] = aug_partial(chi) - _extract(chi_term, a0, beads, m, range(k)).scale(sgn)
        rhs = face_sum(chi_term(a0 * beads[k], beads, m), 1) - face_sum(chi, 1)
        rhs = rhs + _extract(lambda_term, a0, beads, m - 1, range(k, n)).scale(sgn)
        out["top_lambda"][m] = aug_delta(lam) - rhs
        rhs = face_sum(chi, 2) - face_sum(chi, 1)
        rhs = rhs + _extract(chi_term, a0, beads, m - 1, range(k + 1, n)).scale(sgn)
        out["top_chi"][m] = aug_delta(chi) - rhs
    return out


@dataclass
class ClosureReport:
    n: int
    identities: dict[str, dict[int, bool]]
    closed: bool
    bold_xi_terms: int
    bold_eps_terms: int
    residue: CircularBarElement | None = None

    @property
    def ok(self) -> bool:
        return self.closed and all(all(v.values()) for v in self.identities.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "identities": {k: {str(m): ok for m, ok in v.items()} for k, v in self.identities.items()},
            "closed": self.closed,
            "boldXiTerms": self.bold_xi_terms,
            "boldEpsTerms": self.bold_eps_terms,
            "residueTerms": len(self.residue) if self.residue is not None else 0,
        }


def verify_circular_closure(n: int, max_n: int = 2, raise_on_failure: bool = False) -> ClosureReport:
    """Check the four boundary identities and D(bold_xi + 1 (x) bold_eps) = 0
    in the circular bar complex."""
    if n < 0 or n > max_n:
        raise ValueError(f"n must lie in 0..{max_n}")
    a0, beads = default_labels(n)
    fam = make_xi_family(n, a0, beads)
    ids = {
        name: {m: not r for m, r in per_m.items()}
        for name, per_m in boundary_identities(a0, beads).items()
    }
    total = fam.bold_xi + CircularBarElement.unit_tensor(fam.bold_eps)
    residue = circ_total(total)
    report = ClosureReport(n, ids, not residue, len(fam.bold_xi), len(fam.bold_eps), residue or None)
    if raise_on_failure and not report.ok:
        raise ClosureFailed(f"circular closure fails at n = {n}", residue)
    return report
