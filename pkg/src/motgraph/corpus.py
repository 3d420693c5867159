"""Built-in worked examples, shipped as JSON data files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .canonical import GraphSum
from .graph_core import Edge, Graph
from .labels import mono

__all__ = ["Example", "list_examples", "load_example", "DECOMPOSABLE_EXAMPLES"]

DECOMPOSABLE_EXAMPLES = (
    "herbert4",
    "herbert4-variant",
    "slashedbox-6",
    "slashedbox-5",
    "necklace-4",
    "sauron",
)


@dataclass
class Example:
    name: str
    description: str
    terms: list[tuple[Graph, Fraction]]
    notes: list[str] = field(default_factory=list)
    expect_decomposable: bool = True
    known_failure: bool = False

    @property
    def graph_sum(self) -> GraphSum:
        return GraphSum.from_graphs(self.terms)

    @property
    def graphs(self) -> list[Graph]:
        return [g for g, _ in self.terms]


def _read(name: str) -> dict:
    path = resources.files("motgraph").joinpath("corpus", f"{name}.json")
    if not path.is_file():
        raise KeyError(f"unknown example {name!r}")
    return json.loads(path.read_text())


def list_examples() -> list[str]:
    root = resources.files("motgraph").joinpath("corpus")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _named_graph(vertices: list[str], edges: list[list[str]]) -> Graph:
    idx = {v: i for i, v in enumerate(vertices)}
    used = sorted({idx[a] for a, b, _ in edges} | {idx[b] for a, b, _ in edges})
    renum = {v: i for i, v in enumerate(used)}
    return Graph(
        len(used),
        tuple(Edge(renum[idx[a]], renum[idx[b]], mono(lab)) for a, b, lab in edges),
    )


def _indexed_graph(n: int, edges: list[list]) -> Graph:
    return Graph(n, tuple(Edge(s, d, mono(lab)) for s, d, lab in edges))


def load_example(name: str) -> Example:
    raw = _read(name)
    if "terms" in raw:
        terms = [
            (_named_graph(raw["vertices"], t["edges"]), Fraction(t["coeff"]))
            for t in raw["terms"]
        ]
    else:
        terms = [(_named_graph(raw["vertices"], raw["graph"]), Fraction(1))]
    return Example(
        name=raw["name"],
        description=raw.get("description", ""),
        terms=terms,
        notes=list(raw.get("notes", [])),
        expect_decomposable=bool(raw.get("expect_decomposable", "terms" in raw)),
        known_failure=bool(raw.get("known_failure", False)),
    )


def expected_differential(name: str = "diff5") -> GraphSum:
    raw = _read(name)
    return GraphSum.from_graphs(
        (_indexed_graph(t["vertices"], t["edges"]), t["coeff"]) for t in raw["differential"]
    )
