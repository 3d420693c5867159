"""Differential, decomposability and bar lift of the four-loop Herbert sum."""

from __future__ import annotations

from motgraph import bar_total, check_completely_decomposable, differential, lift_to_bar_closure
from motgraph.corpus import load_example


def main() -> None:
    ex = load_example("herbert4")
    s = ex.graph_sum
    print(f"{len(s)} summands after canonicalisation")
    d = differential(s)
    print(f"boundary has {len(d)} terms")
    res = check_completely_decomposable(s)
    print("completely decomposable:", "yes" if res.decomposable else "no")
    lifted = lift_to_bar_closure(s)
    print(f"lift has {len(lifted)} bar words; (d + mu) of it has {len(bar_total(lifted))} terms")


if __name__ == "__main__":
    main()
