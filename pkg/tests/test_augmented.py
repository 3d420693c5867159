from __future__ import annotations

import pytest

import motgraph.augmented as aug
from motgraph.augmented import (
    AugGraph,
    AugSum,
    CircularBarElement,
    aug_delta,
    aug_partial,
    aug_validate,
    boundary_identities,
    chi_term,
    circ_total,
    default_labels,
    face,
    lambda_term,
    make_eps,
    make_necklace,
    make_xi_family,
    slot_differential,
    verify_circular_closure,
    xi_top,
)
from motgraph.bar import BarElement
from motgraph.dga import differential
from motgraph.graph_core import Edge, Graph
from motgraph.labels import mono


def two_simplex_necklace(kind: str, n: int) -> Graph:
    """eps^n graphs with top label a0/t2 and last bead a_n t2/t1."""
    beads = [mono(f"a{i}") for i in range(1, n)] + [mono(f"a{n}*t2/t1")]
    top = mono("a0/t2") if kind == "L" else mono("t2/a0")
    return make_necklace(kind, top, beads)


def family_terms(n: int):
    a0, beads = default_labels(n)
    out = [lambda_term(a0, beads, m) for m in range(n + 1)]
    out += [chi_term(a0, beads, m) for m in range(1, n + 1)]
    return out


def test_faces_of_the_two_simplex_necklace():
    for kind in ("L", "R"):
        g = two_simplex_necklace(kind, 2)
        assert face(g, 2, 0) is None
        f1, f2 = face(g, 2, 1), face(g, 2, 2)
        top1 = mono("a0/t1") if kind == "L" else mono("t1/a0")
        top2 = mono("a0") if kind == "L" else mono("1/a0")
        assert f1.labels() == (top1, mono(1), mono("a1"), mono(1), mono("a2"))
        assert f2.labels() == (top2, mono(1), mono("a1"), mono(1), mono("a2/t1"))
    with pytest.raises(ValueError):
        face(Graph(1, (Edge(0, 0, mono("a")),)), 0, 0)


def test_delta_on_constant_is_empty():
    s = AugSum.constant(make_eps(mono("a0"), [mono("a1")]))
    assert not aug_delta(s)


def test_constant_inclusion_commutes_with_d():
    s = make_eps(mono("a0"), [mono("a1"), mono("a2")])
    assert aug_partial(AugSum.constant(s)) == AugSum.constant(differential(s))


def test_self_loop_only_partial_is_empty():
    g = Graph(1, (Edge(0, 0, mono("a*t1")),))
    assert not aug_partial(AugGraph(g, 1))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_differentials_square_to_zero_and_commute(n):
    for s in family_terms(n):
        assert not aug_delta(aug_delta(s))
        assert not aug_partial(aug_partial(s))
        assert aug_partial(aug_delta(s)) == aug_delta(aug_partial(s))
        assert not slot_differential(slot_differential(s))


@pytest.mark.parametrize("n", [1, 2])
def test_twisted_degree_goes_up_by_one(n):
    from motgraph.canonical import representative

    for s in family_terms(n):
        degs = {representative(k).degree() - d for d, k in s.terms}
        for image in (aug_delta(s), aug_partial(s)):
            for d, k in image.terms:
                assert representative(k).degree() - d in {x + 1 for x in degs}


def test_validate_examples():
    g = two_simplex_necklace("L", 1)
    assert aug_validate(AugGraph(g, 2)).valid
    constant = make_necklace("L", mono("a0"), [mono("a1")])
    assert aug_validate(AugGraph(constant, 0)).valid
    lonely_zero = Graph(2, (Edge(0, 1, mono("a*t1")), Edge(1, 0, mono("b"))))
    rep = aug_validate(AugGraph(lonely_zero, 1))
    assert not rep.valid
    assert ("ZeroWithoutPole", 0) in rep.violations()
    unit_on_face = Graph(2, (Edge(0, 1, mono("a*t1")), Edge(1, 0, mono("1/a"))))
    kinds = [k for k, _ in aug_validate(AugGraph(unit_on_face, 1)).violations()]
    assert "UnitLoopOnFace" in kinds


def test_n0_family():
    fam = make_xi_family(0)
    a0, _ = default_labels(0)
    assert fam.xi_top == lambda_term(a0, [], 0)
    assert aug_delta(fam.lambdas[0]) == AugSum.constant(make_eps(a0, [])).scale(-1)


def test_summand_counts():
    assert make_xi_family(1).summand_count == 1 + 2 + 1
    assert make_xi_family(2).summand_count == (1 + 2 + 4) + (1 + 2)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_boundary_identities(n):
    a0, beads = default_labels(n)
    for name, per_m in boundary_identities(a0, beads).items():
        for m, residue in per_m.items():
            assert not residue, (name, m)


@pytest.mark.parametrize("n", [0, 1])
def test_circular_closure(n):
    rep = verify_circular_closure(n)
    assert rep.ok
    assert rep.to_json()["residueTerms"] == 0


def test_total_differential_squares_to_zero():
    fam = make_xi_family(1)
    x = fam.bold_xi
    assert not circ_total(circ_total(x))
    y = CircularBarElement.unit_tensor(BarElement.tensor(aug.g0("b"), make_eps(mono("c"), [mono("d")])))
    assert not circ_total(circ_total(y))


def test_closure_needs_the_alternating_sign(monkeypatch):
    def unsigned_xi_top(a0, beads):
        n = len(beads)
        out = AugSum()
        for m in range(n + 1):
            out = out + lambda_term(a0, beads, m)
        for m in range(1, n + 1):
            out = out - chi_term(a0, beads, m)
        return out

    a0, beads = default_labels(1)
    good = aug.bold_xi(a0, beads) + CircularBarElement.unit_tensor(aug.bold_eps(a0, beads))
    assert not circ_total(good)
    monkeypatch.setattr(aug, "xi_top", unsigned_xi_top)
    bad = aug.bold_xi(a0, beads) + CircularBarElement.unit_tensor(aug.bold_eps(a0, beads))
    assert circ_total(bad)


def test_closure_bound():
    with pytest.raises(ValueError):
        verify_circular_closure(3)


def test_json_shapes():
    g = two_simplex_necklace("L", 1)
    js = AugGraph(g, 2).to_json()
    assert js["simplexDim"] == 2
    assert AugGraph(g, 2).twisted_degree == g.degree() - 2
    with pytest.raises(ValueError):
        AugGraph(g, 1)
    assert xi_top(mono("a0"), []).to_json()
