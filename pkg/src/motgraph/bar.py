"""The bar complex on graph sums: tensor words of canonical graph classes with
the two induced differentials, plus decomposability checks and lifts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .canonical import CanonicalKey, GraphSum, canonical_form, key_product, representative
from .dga import _diff_key, differential, is_dot_zero
from .graph_core import component_subgraphs, disjoint_union, graph_to_json

__all__ = [
    "Word",
    "BarElement",
    "bar_mu",
    "bar_partial",
    "bar_total",
    "shuffle",
    "word_of",
    "DepthExceeded",
    "LiftObstructed",
    "Decomposition",
    "check_completely_decomposable",
    "lift_to_bar_closure",
    "coboundary_witness_search",
    "solve_rational",
]

Word = tuple[CanonicalKey, ...]


class DepthExceeded(RuntimeError):
    pass


class LiftObstructed(RuntimeError):
    def __init__(self, message: str, residue: "BarElement | None" = None):
        super().__init__(message)
        self.residue = residue


class BarElement:
    """Q-linear combination of tensor words.  Words never contain the unit."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        self.terms: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                self.add(w, c)

    @staticmethod
    def single(s: GraphSum) -> "BarElement":
        return BarElement({(k,): v for k, v in s.terms.items()})

    @staticmethod
    def tensor(*sums: GraphSum) -> "BarElement":
        """[s_1 | ... | s_n] expanded multilinearly."""
        out = BarElement()
        for combo in itertools.product(*(s.terms.items() for s in sums)):
            c = Fraction(1)
            for _, v in combo:
                c *= v
            out.add(tuple(k for k, _ in combo), c)
        return out

    def add(self, word: Sequence[CanonicalKey], coeff: Fraction | int) -> None:
        if not coeff:
            return
        word = tuple(word)
        if any(k.is_unit() for k in word):
            return
        v = self.terms.get(word, Fraction(0)) + coeff
        if v:
            self.terms[word] = v
        else:
            self.terms.pop(word, None)

    def copy(self) -> "BarElement":
        return BarElement(self.terms)

    def __add__(self, other: "BarElement") -> "BarElement":
        out = self.copy()
        for w, c in other.terms.items():
            out.add(w, c)
        return out

    def __sub__(self, other: "BarElement") -> "BarElement":
        return self + other.scale(-1)

    def __neg__(self) -> "BarElement":
        return self.scale(-1)

    def scale(self, q: Fraction | int) -> "BarElement":
        if not q:
            return BarElement()
        return BarElement({w: c * q for w, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BarElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def by_length(self) -> dict[int, "BarElement"]:
        out: dict[int, BarElement] = {}
        for w, c in self.terms.items():
            out.setdefault(len(w), BarElement()).add(w, c)
        return out

    def concat(self, other: "BarElement") -> "BarElement":
        """Word concatenation [x | y], no signs."""
        out = BarElement()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out.add(w1 + w2, c1 * c2)
        return out

    def total_degree(self) -> set[int]:
        return {sum(k.bar_degree for k in w) for w in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "BarElement(0)"
        parts = []
        for w, c in self.items():
            parts.append(f"{c}*[" + " | ".join(str(representative(k)) for k in w) + "]")
        return "BarElement(" + " + ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        return [
            {
                "word": [k.hex() for k in w],
                "graphs": [graph_to_json(representative(k)) for k in w],
                "coeff": [c.numerator, c.denominator],
            }
            for w, c in self.items()
        ]


def word_of(*graph_sums: GraphSum) -> BarElement:
    return BarElement.tensor(*graph_sums)


def _prefix_signs(word: Word) -> list[int]:
    """(-1)^(sum of deg_B over the first j factors) for j = 0..n."""
    out = [0]
    for k in word:
        out.append(out[-1] + k.bar_degree)
    return [(-1) ** (s % 2) for s in out]


def bar_partial(x: BarElement) -> BarElement:
    out = BarElement()
    for w, c in x.terms.items():
        signs = _prefix_signs(w)
        for j, k in enumerate(w):
            for k2, v2 in _diff_key(k):
                out.add(w[:j] + (k2,) + w[j + 1 :], c * v2 * signs[j])
    return out


def bar_mu(x: BarElement) -> BarElement:
    """Adjacent products with sign -(-1)^(sum_{i<=j} deg_B G_i)."""
    out = BarElement()
    for w, c in x.terms.items():
        signs = _prefix_signs(w)
        for j in range(len(w) - 1):
            res = key_product(w[j], w[j + 1])
            if res is None:
                continue
            k, v = res
            out.add(w[:j] + (k,) + w[j + 2 :], -c * v * signs[j + 1])
    return out


def bar_total(x: BarElement) -> BarElement:
    return bar_partial(x) + bar_mu(x)


def shuffle(*elements: BarElement) -> BarElement:
    """Shuffle product of bar elements (no signs: used on degree-0 words)."""
    if not elements:
        return BarElement({(): Fraction(1)})
    acc = elements[0]
    for e in elements[1:]:
        out = BarElement()
        for w1, c1 in acc.terms.items():
            for w2, c2 in e.terms.items():
                n1, n2 = len(w1), len(w2)
                for pos in itertools.combinations(range(n1 + n2), n1):
                    it1, it2 = iter(w1), iter(w2)
                    pset = set(pos)
                    word = tuple(next(it1) if i in pset else next(it2) for i in range(n1 + n2))
                    out.add(word, c1 * c2)
        acc = out
    return acc


# --- exact linear algebra -------------------------------------------------


def solve_rational(
    columns: Sequence[Mapping[object, Fraction]], rhs: Mapping[object, Fraction]
) -> list[Fraction] | None:
    """Solve sum_j x_j * columns[j] = rhs over Q.  Free variables are set to 0.
    Returns None when inconsistent."""
    rows: dict[object, int] = {}
    for col in columns:
        for r in col:
            rows.setdefault(r, len(rows))
    for r in rhs:
        if r not in rows:
            if rhs[r]:
                return None
    ncol = len(columns)
    data: dict[int, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            if v:
                data.setdefault(rows[r], {})[j] = QQ(v.numerator, v.denominator)
    for r, v in rhs.items():
        if v:
            data.setdefault(rows[r], {})[ncol] = QQ(v.numerator, v.denominator)
    if not rows:
        return [Fraction(0)] * ncol
    m = DomainMatrix(data, (len(rows), ncol + 1), QQ)
    red, pivots = m.rref()
    if ncol in pivots:
        return None
    sol = [Fraction(0)] * ncol
    sdm = red.to_sdm()
    for i, p in enumerate(pivots):
        val = sdm.get(i, {}).get(ncol)
        if val:
            sol[p] = Fraction(int(val.numerator), int(val.denominator))
    return sol


# --- decomposability -------------------------------------------------------


def _splits(key: CanonicalKey) -> list[tuple[CanonicalKey, CanonicalKey]]:
    """Ordered splittings of a disconnected class into two nonempty parts
    by component, as canonical classes (coefficients ignored)."""
    if key.h0 < 2:
        return []
    comps = component_subgraphs(representative(key))
    out = set()
    idx = range(len(comps))
    for r in range(1, len(comps)):
        for left in itertools.combinations(idx, r):
            right = [i for i in idx if i not in left]
            a = canonical_form(disjoint_union([comps[i][0] for i in left]))
            b = canonical_form(disjoint_union([comps[i][0] for i in right]))
            if a is None or b is None:
                continue
            out.add((a[0], b[0]))
    return sorted(out)


def _word_splits(w: Word) -> set[Word]:
    out = set()
    for j, k in enumerate(w):
        for a, b in _splits(k):
            out.add(w[:j] + (a, b) + w[j + 1 :])
    return out


@dataclass
class Decomposition:
    decomposable: bool
    layers: list[BarElement]
    connected_terms: list[tuple[CanonicalKey, Fraction]]
    message: str = ""

    @property
    def element(self) -> BarElement:
        out = BarElement()
        for layer in self.layers:
            out = out + layer
        return out


def _solve_tower(start: BarElement, max_depth: int) -> list[BarElement] | None:
    """Find words of lengths 2, 3, ... so that start + sum is (d+mu)-closed.

    Candidate words of length k+1 are splittings of words of length k that are
    either candidates themselves or occur in their differential.  All layers
    are solved at once so a choice at one level cannot obstruct the next."""
    base_len = {len(w) for w in start.terms}
    if len(base_len) != 1:
        raise ValueError("start element must have homogeneous tensor length")
    levels: list[list[Word]] = [sorted(start.terms)]
    seen: set[Word] = set(start.terms)
    while True:
        cur = levels[-1]
        src = set(cur)
        for w in cur:
            src |= set(bar_partial(BarElement({w: Fraction(1)})).terms)
        nxt = set()
        for w in src:
            nxt |= _word_splits(w)
        nxt -= seen
        if not nxt:
            break
        if len(levels) >= max_depth:
            raise DepthExceeded(f"tower longer than {max_depth}")
        levels.append(sorted(nxt))
        seen |= nxt
    unknowns = [w for lvl in levels[1:] for w in lvl]
    columns = []
    for w in unknowns:
        e = BarElement({w: Fraction(1)})
        columns.append(dict(bar_total(e).terms))
    rhs = {w: -c for w, c in bar_total(start).terms.items()}
    sol = solve_rational(columns, rhs)
    if sol is None:
        return None
    pos = {w: i for i, w in enumerate(unknowns)}
    layers = [start.copy()]
    for lvl_words in levels[1:]:
        layer = BarElement()
        for w in lvl_words:
            layer.add(w, sol[pos[w]])
        layers.append(layer)
    while len(layers) > 1 and not layers[-1]:
        layers.pop()
    return layers


def check_completely_decomposable(eps: GraphSum, max_depth: int = 12) -> Decomposition:
    d = differential(eps)
    ok, connected = is_dot_zero(d)
    if not ok:
        return Decomposition(False, [], connected, "connected terms survive in the boundary")
    layers = _solve_tower(BarElement.single(eps), max_depth)
    if layers is None:
        return Decomposition(False, [], [], "boundary is not in the image of the product")
    return Decomposition(True, layers, [])


def lift_to_bar_closure(eps: GraphSum, max_depth: int = 12) -> BarElement:
    res = check_completely_decomposable(eps, max_depth)
    if not res.decomposable:
        raise LiftObstructed(res.message, BarElement.single(differential(eps)))
    out = res.element
    residue = bar_total(out)
    if residue:
        raise LiftObstructed("lift does not close", residue)
    return out


def coboundary_witness_search(
    eps: GraphSum, candidates: Sequence[GraphSum]
) -> list[Fraction] | None:
    """Coefficients x with the connected part of d(sum x_i c_i) equal to the
    connected part of eps."""

    def connected(s: GraphSum) -> dict[CanonicalKey, Fraction]:
        return {k: v for k, v in s.terms.items() if k.h0 < 2}

    if not candidates:
        return None if connected(eps) else []
    cols = [connected(differential(c)) for c in candidates]
    return solve_rational(cols, connected(eps))


def graph_sums_to_bar(items: Iterable[tuple[Sequence[GraphSum], Fraction | int]]) -> BarElement:
    out = BarElement()
    for sums, c in items:
        out = out + BarElement.tensor(*sums).scale(c)
    return out
