"""Edge labels: the multiplicative group of nonzero rationals times a free
abelian group on named generators.

Simplex coordinates are ordinary symbols named ``t<k>``.  Face maps act on
labels by substitution, which may send a label to zero or infinity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Mapping, Union

__all__ = [
    "Monomial",
    "Special",
    "ZERO",
    "INFINITY",
    "ExtLabel",
    "ONE",
    "IndeterminateForm",
    "MissingAssignment",
    "ZeroAssignment",
    "mono",
    "parse_monomial",
    "mono_combine",
    "mono_substitute",
    "mono_eval",
    "is_simplex_symbol",
    "simplex_index",
]

EXP_LIMIT = 2**31

_SIMPLEX_RE = re.compile(r"^t(\d+)$")


class IndeterminateForm(ArithmeticError):
    """A substitution produced 0/0 or 0*inf in a single label."""


class MissingAssignment(KeyError):
    pass


class ZeroAssignment(ZeroDivisionError):
    pass


def is_simplex_symbol(name: str) -> bool:
    return _SIMPLEX_RE.match(name) is not None


def simplex_index(name: str) -> int:
    m = _SIMPLEX_RE.match(name)
    if m is None:
        raise ValueError(f"{name!r} is not a simplex coordinate")
    return int(m.group(1))


@dataclass(frozen=True)
class Monomial:
    """coeff * prod(sym ** e).  ``exps`` is sorted by name with no zero entries."""

    coeff: Fraction
    exps: tuple[tuple[str, int], ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self) -> int:
        h = self._hash
        if not h:
            h = hash((self.coeff.numerator, self.coeff.denominator, self.exps)) or 1
            object.__setattr__(self, "_hash", h)
        return h

    def __post_init__(self) -> None:
        if self.coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")
        for _, e in self.exps:
            if e == 0:
                raise ValueError("zero exponent stored")
            if abs(e) >= EXP_LIMIT:
                raise OverflowError("exponent out of range")

    @staticmethod
    def make(coeff: Union[int, Fraction] = 1, exps: Mapping[str, int] | None = None) -> "Monomial":
        items = tuple(sorted((k, int(v)) for k, v in (exps or {}).items() if v != 0))
        return Monomial(Fraction(coeff), items)

    @property
    def exp_map(self) -> dict[str, int]:
        return dict(self.exps)

    def symbols(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.exps)

    def is_one(self) -> bool:
        return self.coeff == 1 and not self.exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return _mul(self, other)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return self * other.inv()

    def inv(self) -> "Monomial":
        return _inv(self)

    def __pow__(self, k: int) -> "Monomial":
        if k == 0:
            return ONE
        return Monomial.make(self.coeff**k, {s: e * k for s, e in self.exps})

    def sort_key(self) -> tuple:
        return (self.exps, self.coeff.numerator, self.coeff.denominator)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        parts: list[str] = []
        if self.coeff != 1 or not self.exps:
            parts.append(str(self.coeff))
        for k, e in self.exps:
            parts.append(k if e == 1 else f"{k}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def to_json(self) -> dict:
        return {
            "coeff": [self.coeff.numerator, self.coeff.denominator],
            "exps": {k: e for k, e in self.exps},
        }

    @staticmethod
    def from_json(obj) -> "Monomial":
        if isinstance(obj, str):
            return parse_monomial(obj)
        if isinstance(obj, (int, Fraction)):
            return Monomial.make(obj)
        num, den = obj.get("coeff", [1, 1])
        return Monomial.make(Fraction(num, den), obj.get("exps", {}))


@dataclass(frozen=True)
class Special:
    name: str

    def __repr__(self) -> str:
        return self.name


ZERO = Special("Zero")
INFINITY = Special("Infinity")

# canonicalisation multiplies the same few labels over and over
@lru_cache(maxsize=1 << 16)
def _mul(a: Monomial, b: Monomial) -> Monomial:
    if not b.exps:
        exps = a.exps
    elif not a.exps:
        exps = b.exps
    else:
        d = dict(a.exps)
        for k, e in b.exps:
            d[k] = d.get(k, 0) + e
        exps = tuple(sorted((k, v) for k, v in d.items() if v))
    return Monomial(a.coeff * b.coeff, exps)


@lru_cache(maxsize=1 << 16)
def _inv(a: Monomial) -> Monomial:
    return Monomial(1 / a.coeff, tuple((k, -e) for k, e in a.exps))


ONE = Monomial(Fraction(1))

ExtLabel = Union[Monomial, Special]


def mono(spec: Union[str, int, Fraction, Monomial] = 1) -> Monomial:
    """Shorthand constructor: ``mono("r2*r5/r4")``, ``mono(3)``."""
    if isinstance(spec, Monomial):
        return spec
    if isinstance(spec, str):
        return parse_monomial(spec)
    return Monomial.make(spec)


_TOKEN_RE = re.compile(r"\s*([*/])?\s*([A-Za-z_][A-Za-z_0-9]*|\d+(?:/\d+)?)(?:\^\(?(-?\d+)\)?)?")


def parse_monomial(text: str) -> Monomial:
    """Parse products like ``2*a0*t1^-1`` or ``r3*r4/r2``."""
    text = text.strip()
    if not text:
        raise ValueError("empty monomial")
    neg = False
    if text.startswith("-"):
        neg, text = True, text[1:]
    coeff = Fraction(1)
    exps: dict[str, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse monomial {text!r} at {pos}")
        op, atom, power = m.group(1), m.group(2), m.group(3)
        if op is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        sgn = -1 if op == "/" else 1
        k = int(power) if power is not None else 1
        if atom[0].isdigit():
            val = Fraction(atom) ** k
            coeff = coeff / val if sgn < 0 else coeff * val
        else:
            exps[atom] = exps.get(atom, 0) + sgn * k
        pos = m.end()
        first = False
    return Monomial.make(-coeff if neg else coeff, exps)


def mono_combine(op: str, x: Monomial, y: Monomial | None = None, k: int | None = None) -> Monomial:
    if op == "mul":
        if y is None:
            raise TypeError("mul needs two operands")
        return x * y
    if op == "inv":
        return x.inv()
    if op == "pow":
        if k is None:
            raise TypeError("pow needs an exponent")
        return x**k
    raise ValueError(f"unknown op {op!r}")


def mono_substitute(x: Monomial, rule: Mapping[str, ExtLabel]) -> ExtLabel:
    """Multiplicative substitution.  Symbols mapped to ZERO/INFINITY decide
    the result by the sign of their net exponent."""
    coeff = x.coeff
    out: dict[str, int] = {}
    net = 0
    degenerate = False
    for s, e in x.exps:
        if s not in rule:
            out[s] = out.get(s, 0) + e
            continue
        v = rule[s]
        if v is ZERO:
            net += e
            degenerate = True
        elif v is INFINITY:
            net -= e
            degenerate = True
        else:
            v = mono(v)
            coeff *= v.coeff**e
            for s2, e2 in v.exps:
                out[s2] = out.get(s2, 0) + e2 * e
    if degenerate:
        if net > 0:
            return ZERO
        if net < 0:
            return INFINITY
        raise IndeterminateForm(f"{x} under {dict(rule)}")
    return Monomial.make(coeff, out)


def mono_eval(x: Monomial, assignment: Mapping[str, float]) -> float:
    val = float(x.coeff)
    for s, e in x.exps:
        if s not in assignment:
            raise MissingAssignment(s)
        a = assignment[s]
        if a == 0:
            raise ZeroAssignment(s)
        val *= float(a) ** e
    return val
