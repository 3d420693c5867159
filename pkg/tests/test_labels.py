from __future__ import annotations

import random
from fractions import Fraction

import pytest

from motgraph.labels import (
    INFINITY,
    ONE,
    ZERO,
    IndeterminateForm,
    MissingAssignment,
    Monomial,
    ZeroAssignment,
    mono,
    mono_combine,
    mono_eval,
    mono_substitute,
)
from motgraph.random_graphs import random_label


def test_group_law_examples():
    assert mono_combine("mul", mono("2*a/b"), mono("3*b")) == mono("6*a")
    assert mono_combine("inv", mono("r2*r5/r4")) == mono("r4/r2/r5")
    assert mono_combine("pow", mono("a"), k=0) == ONE


def test_zero_exponents_are_dropped():
    x = mono("a*b") * mono("1/b")
    assert x == mono("a")
    assert x.symbols() == ("a",)


def test_group_axioms_random():
    r = random.Random(7)
    for _ in range(300):
        x, y, z = (random_label(r, 3) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x.inv().inv() == x
        assert (x * x.inv()).is_one()


def test_json_round_trip():
    x = mono("-3/4*a0^2*t2^-1")
    assert Monomial.from_json(x.to_json()) == x
    assert x.to_json() == {"coeff": [-3, 4], "exps": {"a0": 2, "t2": -1}}


def test_substitute_face_examples():
    x = mono("an*t2/t1")
    assert mono_substitute(x, {"t1": mono("t2")}) == mono("an")
    assert mono_substitute(x, {"t1": ZERO}) is INFINITY
    assert mono_substitute(mono("a*t1"), {"t1": ZERO}) is ZERO
    assert mono_substitute(x, {}) == x


def test_substitute_indeterminate():
    with pytest.raises(IndeterminateForm):
        mono_substitute(mono("t1/t2"), {"t1": ZERO, "t2": ZERO})


def test_substitute_commutes_with_mul():
    r = random.Random(11)
    rule = {"a": mono("t1*c"), "b": mono("2/t2")}
    for _ in range(100):
        x, y = random_label(r), random_label(r)
        assert mono_substitute(x * y, rule) == mono_substitute(x, rule) * mono_substitute(y, rule)


def test_eval():
    assert mono_eval(mono("2*a"), {"a": 3}) == 6.0
    assert mono_eval(mono("a/b"), {"a": 1, "b": 2}) == 0.5
    with pytest.raises(MissingAssignment):
        mono_eval(mono("a"), {})
    with pytest.raises(ZeroAssignment):
        mono_eval(mono("a"), {"a": 0})


def test_exact_coefficients():
    assert mono("1/3").coeff == Fraction(1, 3)
