"""Algebraic-cycle presentations of graphs.

Each edge e = (s -> t, label a, sign) gives the coordinate
(1 - x_s / (a x_t))^sign on a product of projective lines, and each loop L
of a basis gives the equation 1 = chi(L) prod_e (1 - f_e)^eps(e, L), where
f_e is the unsigned coordinate and eps(e, L) = +1/-1 as L runs along or
against e.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import sympy as sp

from .graph_core import Edge, Graph, Loop, betti, loop_coefficient, loop_data
from .labels import Monomial

__all__ = [
    "NotOneLLinear",
    "Coordinate",
    "ParametrizedCycle",
    "LoopEquation",
    "PolynomialSystem",
    "emit_parametrization",
    "emit_polynomial_system",
    "parse_coordinate",
    "graph_from_cycle",
]


class NotOneLLinear(ValueError):
    """A coordinate is not of the form (1 - u/(a v))^{+-1}."""


def _var(v: int) -> str:
    return f"x{v}"


@dataclass(frozen=True)
class Coordinate:
    src: str
    dst: str
    label: Monomial
    sign: int = 1

    @property
    def is_constant(self) -> bool:
        return self.src == self.dst

    def text(self) -> str:
        if self.is_constant:
            core = f"1 - 1/({self.label})"
        else:
            core = f"1 - {self.src}/(({self.label})*{self.dst})"
        return f"({core})" if self.sign > 0 else f"({core})^-1"

    def to_json(self) -> dict:
        """Expression AST: pow(sub(1, div(src, mul(label, dst))), sign)."""
        ratio = (
            {"op": "div", "args": [1, {"label": self.label.to_json()}]}
            if self.is_constant
            else {
                "op": "div",
                "args": [{"var": self.src}, {"op": "mul", "args": [{"label": self.label.to_json()}, {"var": self.dst}]}],
            }
        )
        return {
            "op": "pow",
            "args": [{"op": "sub", "args": [1, ratio]}, self.sign],
            "src": self.src,
            "dst": self.dst,
            "label": self.label.to_json(),
            "sign": self.sign,
            "text": self.text(),
        }


@dataclass
class ParametrizedCycle:
    coordinates: list[Coordinate]
    codimension: int
    ambient_dimension: int
    variables: list[str] = field(default_factory=list)

    def text(self) -> str:
        return "[" + " | ".join(c.text() for c in self.coordinates) + "]"

    def to_json(self) -> dict:
        return {
            "variables": self.variables,
            "codimension": self.codimension,
            "ambientDimension": self.ambient_dimension,
            "coordinates": [c.to_json() for c in self.coordinates],
            "text": self.text(),
        }


def emit_parametrization(g: Graph) -> ParametrizedCycle:
    coords = [Coordinate(_var(e.src), _var(e.dst), e.label, e.sign) for e in g.edges]
    return ParametrizedCycle(coords, betti(g)[1], g.num_edges, [_var(v) for v in range(g.n)])


@dataclass
class LoopEquation:
    """1 = chi * prod_e (1 - f_e)^exponent over (edge index, exponent) factors."""

    chi: Monomial
    factors: list[tuple[int, int]]
    loop: Loop

    def text(self) -> str:
        num = [f"(1-f{i + 1})" for i, k in self.factors if k > 0]
        den = [f"(1-f{i + 1})" for i, k in self.factors if k < 0]
        body = "*".join(num) if num else "1"
        if den:
            body += "/(" + "*".join(den) + ")"
        return f"1 = ({self.chi})*{body}"

    def to_json(self) -> dict:
        return {
            "chi": self.chi.to_json(),
            "factors": [{"edge": i, "exponent": k} for i, k in self.factors],
            "loop": [[i, d] for i, d in self.loop.steps],
            "text": self.text(),
        }


@dataclass
class PolynomialSystem:
    equations: list[LoopEquation]
    basis: str = "fundamental loops of the spanning forest"

    def text(self) -> str:
        return "\n".join(eq.text() for eq in self.equations)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "note": "a different loop basis gives an equivalent system",
            "equations": [eq.to_json() for eq in self.equations],
        }


def emit_polynomial_system(g: Graph, basis: Sequence[Loop] | None = None) -> PolynomialSystem:
    desc = "user supplied"
    if basis is None:
        _, basis, _ = loop_data(g)
        desc = "fundamental loops of the spanning forest"
    eqs = []
    for L in basis:
        exps: dict[int, int] = {}
        for i, d in L.steps:
            exps[i] = exps.get(i, 0) + d
        factors = sorted((i, k) for i, k in exps.items() if k)
        eqs.append(LoopEquation(loop_coefficient(g, L), factors, L))
    return PolynomialSystem(eqs, desc)


# --- back from cycles to graphs ------------------------------------------------------


def _to_monomial(expr: sp.Expr) -> Monomial:
    coeff, rest = expr.as_coeff_Mul()
    if not coeff.is_Rational:
        raise NotOneLLinear(f"non-rational coefficient in {expr}")
    exps: dict[str, int] = {}
    for base, e in rest.as_powers_dict().items():
        if base == 1:
            continue
        if not base.is_Symbol or not e.is_Integer:
            raise NotOneLLinear(f"label {expr} is not a monomial")
        exps[str(base)] = exps.get(str(base), 0) + int(e)
    return Monomial.make(Fraction(int(coeff.p), int(coeff.q)), exps)


def _is_var(name: str, variables: set[str] | None) -> bool:
    if variables is not None:
        return name in variables
    return name.startswith("x") and name[1:].isdigit()


def parse_coordinate(text: str, variables: Sequence[str] | None = None) -> Coordinate:
    """Read '(1 - x0/(a*x1))^-1' style text.  Vertex variables are those in
    `variables`, or by default the symbols x0, x1, ...."""
    vs = set(variables) if variables is not None else None
    try:
        names = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))
        expr = sp.sympify(text.replace("^", "**"), locals={n: sp.Symbol(n) for n in names})
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise NotOneLLinear(f"cannot parse {text!r}") from exc
    sign = 1
    if isinstance(expr, sp.Pow) and expr.exp in (1, -1):
        sign = int(expr.exp)
        expr = expr.base
    elif isinstance(expr, sp.Pow):
        raise NotOneLLinear(f"exponent other than +-1 in {text!r}")
    ratio = sp.expand(1 - expr)
    if ratio == 0 or isinstance(ratio, sp.Add):
        raise NotOneLLinear(f"{text!r} is not of the form 1 - u/(a v)")
    powers = ratio.as_powers_dict()
    up = [str(b) for b, e in powers.items() if b.is_Symbol and _is_var(str(b), vs) and e == 1]
    down = [str(b) for b, e in powers.items() if b.is_Symbol and _is_var(str(b), vs) and e == -1]
    nvars = sum(1 for b in powers if b.is_Symbol and _is_var(str(b), vs))
    if nvars == 0:
        lab = _to_monomial(1 / ratio)
        return Coordinate("", "", lab, sign)
    if len(up) != 1 or len(down) != 1 or nvars != 2:
        raise NotOneLLinear(f"{text!r} is not linear in one ratio of vertex variables")
    u, v = sp.Symbol(up[0]), sp.Symbol(down[0])
    lab = _to_monomial(sp.simplify(u / (v * ratio)))
    return Coordinate(up[0], down[0], lab, sign)


CoordinateLike = Union[Coordinate, str, dict]


def _coerce(c: CoordinateLike, variables: Sequence[str] | None) -> Coordinate:
    if isinstance(c, Coordinate):
        return c
    if isinstance(c, str):
        return parse_coordinate(c, variables)
    if isinstance(c, dict):
        if "text" in c and "src" not in c:
            return parse_coordinate(c["text"], variables)
        lab = c.get("label")
        if isinstance(lab, dict):
            lab = Monomial.from_json(lab)
        else:
            lab = _to_monomial(sp.sympify(str(lab)))
        return Coordinate(c.get("src", ""), c.get("dst", ""), lab, int(c.get("sign", 1)))
    raise NotOneLLinear(f"unrecognised coordinate {c!r}")


def graph_from_cycle(coordinates: Sequence[CoordinateLike], variables: Sequence[str] | None = None) -> Graph:
    """One vertex per variable in order of first appearance; a constant
    coordinate without a recorded vertex becomes a self-loop on a new vertex."""
    coords = [_coerce(c, variables) for c in coordinates]
    index: dict[str, int] = {}
    if variables is not None:
        for v in variables:
            index.setdefault(v, len(index))
    edges = []
    for c in coords:
        if c.is_constant and not c.src:
            v = len(index)
            index[f"#{v}"] = v
            edges.append(Edge(v, v, c.label, c.sign))
            continue
        for name in (c.src, c.dst):
            index.setdefault(name, len(index))
        edges.append(Edge(index[c.src], index[c.dst], c.label, c.sign))
    return Graph(len(index), tuple(edges))
