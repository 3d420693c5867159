"""Command-line front end.

Exit status: 0 success / true, 1 false or verification failed, 2 usage or
parse error, 3 budget exceeded.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import augmented, bar, canonical, cycles, dga, hodge_numeric
from .canonical import GraphSum
from .corpus import expected_differential, list_examples, load_example
from .graph_core import (
    DEFAULT_CYCLE_BUDGET,
    CycleBudgetExceeded,
    InvalidGraph,
    graph_from_json,
)
from .labels import mono

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- input ---------------------------------------------------------------------


def _coeff(raw: Any) -> Fraction:
    if isinstance(raw, list):
        return Fraction(raw[0], raw[1])
    return Fraction(str(raw))


def _read_json(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _sum_from_obj(obj: Any) -> GraphSum:
    """A graph {vertices, edges}, {terms: [{graph, coeff}]}, or the list
    written by GraphSum.to_json."""
    if isinstance(obj, dict) and "edges" in obj:
        return GraphSum.from_graph(graph_from_json(obj))
    if isinstance(obj, dict) and "terms" in obj:
        obj = obj["terms"]
    if isinstance(obj, list):
        return GraphSum.from_graphs(
            (graph_from_json(t["graph"]), _coeff(t.get("coeff", 1))) for t in obj
        )
    raise UsageError("input is neither a graph nor a graph sum")


def load_sum(source: str) -> GraphSum:
    """A JSON file, '-' for stdin, or the name of a built-in example."""
    if not Path(source).exists() and source in list_examples():
        return load_example(source).graph_sum
    return _sum_from_obj(_read_json(source))


def load_graph(source: str):
    if not Path(source).exists() and source in list_examples():
        ex = load_example(source)
        if len(ex.terms) != 1:
            raise UsageError(f"{source} is a sum, not a single graph")
        return ex.terms[0][0]
    obj = _read_json(source)
    if not (isinstance(obj, dict) and "edges" in obj):
        raise UsageError("expected a single graph {vertices, edges}")
    return graph_from_json(obj)


def _labels(raw: Sequence[str]) -> list:
    return [mono(x) for x in raw]


# --- verbs --------------------------------------------------------------------------


def cmd_canonicalize(args) -> tuple[int, Any]:
    s = load_sum(args.input)
    return EXIT_OK, {"sum": s.to_json()}


def cmd_diff(args) -> tuple[int, Any]:
    d = dga.differential(load_sum(args.input))
    return EXIT_OK, {"differential": d.to_json(), "terms": len(d)}


def cmd_admissible(args) -> tuple[int, Any]:
    g = load_graph(args.input)
    rep = dga.is_admissible(g, strict=args.strict, budget=args.budget_cycles)
    report = {
        "admissible": rep.admissible,
        "failures": [
            {
                "kind": kind,
                "detail": [list(step) for step in obj.steps] if kind == "UnitLoop" else list(obj),
            }
            for kind, obj in rep.failures
        ],
    }
    return (EXIT_OK if rep.admissible else EXIT_FALSE), report


def cmd_decompose(args) -> tuple[int, Any]:
    res = bar.check_completely_decomposable(load_sum(args.input), args.depth)
    report = {
        "decomposable": res.decomposable,
        "message": res.message,
        "connectedTerms": [
            {"edges": _edge_text(canonical.representative(k)), "coeff": str(v), "key": k.hex()}
            for k, v in res.connected_terms
        ],
        "layers": [layer.to_json() for layer in res.layers],
    }
    return (EXIT_OK if res.decomposable else EXIT_FALSE), report


def _edge_text(g) -> str:
    return " ".join(f"{e.src}->{e.dst}:{e.label}" + ("" if e.sign > 0 else "(-)") for e in g.edges)


def cmd_lift(args) -> tuple[int, Any]:
    try:
        el = bar.lift_to_bar_closure(load_sum(args.input), args.depth)
    except bar.LiftObstructed as exc:
        return EXIT_FALSE, {"closed": False, "message": str(exc)}
    return EXIT_OK, {"closed": True, "element": el.to_json()}


def cmd_witness(args) -> tuple[int, Any]:
    eps = load_sum(args.input)
    cands = [load_sum(c) for c in args.candidates]
    sol = bar.coboundary_witness_search(eps, cands)
    if sol is None:
        return EXIT_FALSE, {"found": False}
    return EXIT_OK, {"found": True, "coefficients": [str(x) for x in sol]}


def cmd_emit_cycle(args) -> tuple[int, Any]:
    g = load_graph(args.input)
    par = cycles.emit_parametrization(g)
    system = cycles.emit_polynomial_system(g)
    if not args.json:
        return EXIT_OK, par.text() + "\n" + system.text()
    return EXIT_OK, {"parametrization": par.to_json(), "system": system.to_json()}


def _necklace_labels(args) -> tuple:
    if args.labels:
        if len(args.labels) != args.n + 1:
            raise UsageError(f"need {args.n + 1} labels for n = {args.n}")
        a0, *beads = _labels(args.labels)
        return a0, beads
    return augmented.default_labels(args.n)


def cmd_necklace(args) -> tuple[int, Any]:
    a0, beads = _necklace_labels(args)
    eps = augmented.make_eps(a0, beads)
    report = {"n": args.n, "eps": eps.to_json()}
    if args.bold:
        report["boldEps"] = augmented.bold_eps(a0, beads).to_json()
    return EXIT_OK, report


def cmd_circular_check(args) -> tuple[int, Any]:
    rep = augmented.verify_circular_closure(args.n, max_n=args.max_n)
    return (EXIT_OK if rep.ok else EXIT_FALSE), rep.to_json()


def cmd_period(args) -> tuple[int, Any]:
    vals = [float(Fraction(x)) for x in args.labels]
    p = hodge_numeric.necklace_period(vals, tol=min(args.tol, 1e-9) * 1e-2)
    report = {"value": p.value, "error": p.error, "summands": p.summands, "vanishes": abs(p.value) < args.tol}
    return (EXIT_OK if report["vanishes"] else EXIT_FALSE), report


def cmd_verify_example(args) -> tuple[int, Any]:
    names = list_examples() if args.name == "all" else [args.name]
    if any(n not in list_examples() for n in names):
        raise UsageError(f"unknown example {args.name!r}; known: {', '.join(list_examples())}")
    results = []
    ok = True
    for name in names:
        ex = load_example(name)
        if name == "diff5":
            g = ex.terms[0][0]
            match = dga.differential_graph(g) == expected_differential(name)
            results.append({"name": name, "differentialMatches": match})
            ok &= match
            continue
        res = bar.check_completely_decomposable(ex.graph_sum, args.depth)
        results.append(
            {
                "name": name,
                "completelyDecomposable": "yes" if res.decomposable else "no",
                "message": res.message,
            }
        )
        ok &= res.decomposable
    return (EXIT_OK if ok else EXIT_FALSE), {"examples": results}


VERBS = {
    "canonicalize": cmd_canonicalize,
    "diff": cmd_diff,
    "admissible": cmd_admissible,
    "decompose": cmd_decompose,
    "lift": cmd_lift,
    "witness": cmd_witness,
    "emit-cycle": cmd_emit_cycle,
    "necklace": cmd_necklace,
    "circular-check": cmd_circular_check,
    "period": cmd_period,
    "verify-example": cmd_verify_example,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-vertices", type=int, default=None)
    common.add_argument("--budget-cycles", type=int, default=DEFAULT_CYCLE_BUDGET)
    common.add_argument("--depth", type=int, default=12)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--json", action="store_true", help="JSON output (default for most verbs)")

    p = _Parser(prog="motgraph", description="Graph-sum algebra for P1-linear cycles.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("canonicalize", "diff", "admissible", "decompose", "lift", "emit-cycle"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("input", help="JSON file, '-' or built-in example name")
        if verb == "admissible":
            sp.add_argument("--strict", action="store_true")
    sp = sub.add_parser("witness", parents=[common])
    sp.add_argument("input")
    sp.add_argument("candidates", nargs="*")
    sp = sub.add_parser("necklace", parents=[common])
    sp.add_argument("n", type=int)
    sp.add_argument("labels", nargs="*")
    sp.add_argument("--bold", action="store_true", help="also print the closed bar element")
    sp = sub.add_parser("circular-check", parents=[common])
    sp.add_argument("n", type=int)
    sp.add_argument("--max-n", type=int, default=3)
    sp = sub.add_parser("period", parents=[common])
    sp.add_argument("labels", nargs="+", help="a0 a1 [a2], each > 1")
    sp = sub.add_parser("verify-example", parents=[common])
    sp.add_argument("name", help="example name or 'all'")
    return p


def _render(report: Any, as_json: bool) -> str:
    if isinstance(report, str):
        return report
    if as_json:
        return json.dumps(report, indent=2, default=str)
    lines = []
    for k, v in report.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            flat = all(not isinstance(x, (dict, list)) for item in v for x in item.values())
            if flat:
                lines.append(f"{k}:")
                lines.extend(
                    "  " + ", ".join(f"{a}={b}" for a, b in item.items() if b != "" and a != "key") for item in v
                )
                continue
            v = f"{len(v)} entries (use --json)"
        elif isinstance(v, dict):
            v = json.dumps(v, default=str)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.budget_vertices is not None:
            canonical.set_vertex_budget(args.budget_vertices)
        code, report = VERBS[args.verb](args)
        return code, _render(report, getattr(args, "json", False))
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}"
    except InvalidGraph as exc:
        return EXIT_USAGE, f"error: invalid graph: {exc}"
    except (KeyError, ValueError, TypeError, hodge_numeric.DomainError) as exc:
        return EXIT_USAGE, f"error: {exc}"
    except (canonical.VertexBudgetExceeded, CycleBudgetExceeded, bar.DepthExceeded) as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}"


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stderr if text.startswith(("error:", "budget exceeded:")) else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
