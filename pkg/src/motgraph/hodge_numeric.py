"""Numerical periods: polylogarithms and regularised iterated integrals over
the ordered simplex 0 < t1 < ... < td < 1.

An augmented graph with as many edges as simplex coordinates pulls back the
form  dlog(1 - 1/s_1) ^ ... ^ dlog(1 - 1/s_d)  (edge order), which is the
determinant of the matrix  e_kj / (t_j (s_k - 1))  with e_kj the exponent of
t_j in the label s_k.  The normalising (2 pi i)^-d is left out.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import mpmath
import sympy as sp
from scipy import integrate

from .augmented import AugSum, _xi_graphs, default_labels
from .canonical import representative
from .graph_core import Graph
from .labels import Monomial, is_simplex_symbol, mono, simplex_index

__all__ = [
    "DomainError",
    "NonConvergent",
    "ToleranceNotMet",
    "NumericResult",
    "Form",
    "IteratedWord",
    "polylog",
    "word_from_labels",
    "iterated_integral",
    "period_of_augsum",
    "NecklacePeriod",
    "necklace_period",
    "closed_form_summands",
    "renorm_check",
]


class DomainError(ValueError):
    pass


class NonConvergent(ArithmeticError):
    pass


class ToleranceNotMet(ArithmeticError):
    pass


@dataclass(frozen=True)
class NumericResult:
    value: float
    error: float = 0.0
    method: str = "series"

    def to_json(self) -> dict:
        return {"value": self.value, "error": self.error, "method": self.method}


# --- polylogarithms --------------------------------------------------------------


def polylog(s: int, x: float, tol: float = 1e-12) -> NumericResult:
    """Li_s(x) = sum_k x^k / k^s for |x| <= 1 (x != 1 when s = 1)."""
    if s < 1 or int(s) != s:
        raise DomainError("order must be a positive integer")
    if abs(x) > 1 or (s == 1 and x == 1):
        raise DomainError(f"Li_{s}({x}) outside the disc of convergence")
    if x == 0:
        return NumericResult(0.0)
    ax = abs(x)
    if ax > 0.75:
        # slow tail: fall back on mpmath's evaluation
        return NumericResult(float(mpmath.polylog(s, x)), tol, "mpmath")
    total = 0.0
    p = 1.0
    k = 0
    while True:
        k += 1
        p *= x
        total += p / k**s
        tail = ax ** (k + 1) / ((k + 1) ** s * (1 - ax))
        if tail < tol:
            return NumericResult(total, tail, "series")


# --- iterated integrals ----------------------------------------------------------


@dataclass(frozen=True)
class Form:
    """One letter of an iterated word.

    kind "dlog": dlog(1 - 1/label) for a monomial label in the t's;
    kind "dt/t", "dt/(b-t)", "dt/(t-b)": primitive letters in coordinate coord."""

    kind: str
    label: Monomial | None = None
    coord: int | None = None
    b: float | None = None


@dataclass(frozen=True)
class IteratedWord:
    forms: tuple[Form, ...]
    dim: int
    coeff: float = 1.0

    def __post_init__(self) -> None:
        if len(self.forms) != self.dim:
            raise ValueError("a period needs as many letters as simplex coordinates")


def word_from_labels(labels: Sequence[Monomial], dim: int, coeff: float = 1.0) -> IteratedWord:
    return IteratedWord(tuple(Form("dlog", label=mono(x)) for x in labels), dim, coeff)


_T = sp.symbols("t1:10", positive=True)


def _row(form: Form, dim: int, assignment: Mapping[str, float]) -> list:
    row = [sp.Integer(0)] * dim
    if form.kind == "dlog":
        lab = form.label
        val = sp.nsimplify(lab.coeff)
        exps: dict[int, int] = {}
        for s, e in lab.exps:
            if is_simplex_symbol(s):
                exps[simplex_index(s)] = e
                val *= _T[simplex_index(s) - 1] ** e
            else:
                if s not in assignment:
                    raise KeyError(f"no value for {s}")
                val *= sp.nsimplify(assignment[s]) ** e
        for j, e in exps.items():
            if not 1 <= j <= dim:
                raise ValueError(f"t{j} outside the simplex")
            row[j - 1] = sp.Integer(e) / (_T[j - 1] * (val - 1))
        return row
    j = form.coord
    if j is None or not 1 <= j <= dim:
        raise ValueError("primitive letter needs a coordinate")
    t = _T[j - 1]
    b = sp.nsimplify(form.b) if form.b is not None else None
    if form.kind == "dt/t":
        row[j - 1] = 1 / t
    elif form.kind == "dt/(b-t)":
        row[j - 1] = 1 / (b - t)
    elif form.kind == "dt/(t-b)":
        row[j - 1] = 1 / (t - b)
    else:
        raise ValueError(f"unknown letter {form.kind!r}")
    return row


def _integrand(words: Sequence[IteratedWord], assignment: Mapping[str, float]) -> tuple[sp.Expr, int]:
    dims = {w.dim for w in words}
    if len(dims) != 1:
        raise ValueError("words of different dimension")
    dim = dims.pop()
    expr = sp.Integer(0)
    for w in words:
        m = sp.Matrix([_row(f, dim, assignment) for f in w.forms])
        expr += sp.nsimplify(w.coeff) * m.det()
    return sp.cancel(sp.together(expr)), dim


def _nested_quad(f, dim: int, tol: float) -> tuple[float, float]:
    """Integrate f(t1..td) over 0 < t1 < ... < td < 1, innermost t1."""
    err_total = [0.0]

    def level(k: int, outer: tuple[float, ...]) -> float:
        # k = number of remaining inner coordinates; outer = (t_{k+1}, ..., t_d)
        upper = outer[0] if outer else 1.0
        if k == 1:
            g = lambda x: f(x, *outer)  # noqa: E731
        else:
            g = lambda x: level(k - 1, (x,) + outer)  # noqa: E731
        val, err = integrate.quad(g, 0.0, upper, epsabs=tol, epsrel=tol, limit=200)
        err_total[0] += err
        return val

    return level(dim, ()), err_total[0]


def iterated_integral(
    word: IteratedWord | Sequence[IteratedWord],
    assignment: Mapping[str, float] | None = None,
    tol: float = 1e-11,
) -> NumericResult:
    """Regularised integral of a word (or a sum of words) over the simplex.

    A 1/t1 pole of the integrand is regularised by shuffle regularisation with
    Li_1(1) = 0: the innermost integral of c/t1 over (0, t2) is replaced by
    c log t2."""
    words = [word] if isinstance(word, IteratedWord) else list(word)
    if not words:
        return NumericResult(0.0, 0.0, "quadrature")
    if words[0].dim == 0:
        return NumericResult(float(sum(w.coeff for w in words)), 0.0, "exact")
    expr, dim = _integrand(words, assignment or {})
    return _integrate_expr(expr, dim, tol)


@lru_cache(maxsize=256)
def _integrate_cached(expr: sp.Expr, dim: int, tol: float) -> tuple[float, float]:
    t1 = _T[0]
    if expr == 0:
        return 0.0, 0.0
    resid = sp.cancel(t1 * expr)
    num, den = sp.fraction(resid)
    if den.subs(t1, 0) == 0:
        raise NonConvergent("pole of order > 1 at t1 = 0")
    c = sp.cancel(resid.subs(t1, 0))
    if dim == 1:
        if c != 0:
            # the regularised value of c * int_0^1 dt/t is 0
            expr = sp.cancel(expr - c / t1)
        f = sp.lambdify((t1,), expr, "math")
        val, err = integrate.quad(f, 0.0, 1.0, epsabs=tol, epsrel=tol, limit=200)
        return val, err
    regular = sp.cancel(expr - c / t1)
    args = _T[:dim]
    f_reg = sp.lambdify(args, regular, "math")
    total, err = _nested_quad(f_reg, dim, tol)
    if c != 0:
        # c depends on t2..td only; c * log t2 integrated over the (d-1)-simplex
        g = sp.lambdify(args[1:], c * sp.log(_T[1]), "math")
        v2, e2 = _nested_quad(g, dim - 1, tol)
        total += v2
        err += e2
    return total, err


def _integrate_expr(expr: sp.Expr, dim: int, tol: float) -> NumericResult:
    val, err = _integrate_cached(expr, dim, tol)
    if not math.isfinite(val):
        raise NonConvergent("quadrature returned a non-finite value")
    if err > max(1e-6, 1000 * tol):
        raise ToleranceNotMet(f"error estimate {err:g}")
    return NumericResult(val, err, "quadrature")


def _labels_of(g: Graph) -> list[Monomial]:
    return [e.label for e in g.edges]


def period_of_augsum(s: AugSum, assignment: Mapping[str, float], tol: float = 1e-11) -> NumericResult:
    """Sum of coeff * I(term) over the terms whose simplex dimension equals
    their edge count; the evaluation map is undefined on the others."""
    words = []
    for (d, k), v in s.items():
        g = representative(k)
        if d == 0 or d != len(g.edges):
            continue
        words.append(word_from_labels(_labels_of(g), d, float(v)))
    if not words:
        return NumericResult(0.0, 0.0, "exact")
    return iterated_integral(words, assignment, tol)


# --- the necklace period ------------------------------------------------------------


def _li(s: int, x: float) -> float:
    return float(mpmath.polylog(s, x))


def closed_form_summands(n: int, beads: Sequence[float]) -> tuple[float, float]:
    """Per-summand values of I(lambda^n_n) and I(chi^n_n) for one a0 (they do
    not depend on a0), from integrating the simplex in closed form."""
    if n == 0:
        return 0.0, 0.0
    if n == 1:
        b = beads[0]
        return _li(2, 1 / b), _li(2, 1 / b)
    if n == 2:
        b, c = beads
        lam = -_li(1, 1 / b) * _li(2, 1 / c) - _li(2, 1 / b) * _li(1, 1 / c)
        chi = -_li(2, 1 / b) * _li(1, 1 / c)
        return lam, chi
    raise ValueError("closed forms implemented for n <= 2")


@dataclass
class NecklacePeriod:
    n: int
    value: float
    error: float
    summands: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"n": self.n, "value": self.value, "error": self.error, "summands": self.summands}


def _summand_words(kind: str, a0: Monomial, beads: list[Monomial], n: int, shift: Sequence[int]) -> list[IteratedWord]:
    factor = a0
    for j in shift:
        factor = factor * beads[j]
    graphs, dim = _xi_graphs(factor, beads, n, kind)
    return [word_from_labels(_labels_of(g), dim, float(s)) for g, s in graphs]


def necklace_period(labels: Sequence[float], tol: float = 1e-11) -> NecklacePeriod:
    """Period of the circular-bar element built on eps^n(a0; a1..an), n =
    len(labels) - 1 <= 2: the number part (-1)^n (I(lambda^n_n) - I(chi^n_n)),
    each an alternating sum over its index set of simplex integrals."""
    n = len(labels) - 1
    if not 0 <= n <= 2:
        raise DomainError("necklace_period is implemented for n <= 2")
    if any(x <= 1 for x in labels):
        raise DomainError("labels must exceed 1 so the integrands are pole free")
    a0, beads = default_labels(n)
    assignment = {str(a0): labels[0]}
    assignment.update({str(b): x for b, x in zip(beads, labels[1:])})
    lam_cf, chi_cf = closed_form_summands(n, labels[1:])
    summands = []
    total = 0.0
    err = 0.0
    specs = [("lambda", range(0, n), lam_cf, 1), ("chi", range(1, n), chi_cf, -1)]
    for kind, index_range, cf, outer in specs:
        if kind == "chi" and n == 0:
            continue
        for q in range(len(index_range) + 1):
            for J in itertools.combinations(index_range, q):
                words = _summand_words(kind, a0, beads, n, J)
                res = iterated_integral(words, assignment, tol)
                sign = outer * (-1) ** q * (-1) ** n
                total += sign * res.value
                err += res.error
                summands.append(
                    {
                        "term": kind,
                        "shift": [j + 1 for j in J],
                        "sign": sign,
                        "value": res.value,
                        "closedForm": cf,
                    }
                )
    return NecklacePeriod(n, total, err, summands)


def renorm_check(b: float, tol: float = 1e-11) -> tuple[float, float]:
    """Quadrature value of int_0^1 1/(t-b) (int_0^t ds/s) dt with the
    regularised inner integral, against the series value of Li_2(1/b)."""
    word = IteratedWord((Form("dt/t", coord=1), Form("dt/(t-b)", coord=2, b=b)), 2)
    return iterated_integral(word, {}, tol).value, polylog(2, 1 / b).value
