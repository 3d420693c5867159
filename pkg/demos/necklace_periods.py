"""Necklace classes: bar closure, circular closure and the period."""

from __future__ import annotations

from motgraph import bar_total, bold_eps, necklace_period, verify_circular_closure
from motgraph.augmented import default_labels


def main() -> None:
    for n in range(1, 4):
        a0, beads = default_labels(n)
        el = bold_eps(a0, beads)
        print(f"n={n}: bold eps has {len(el)} words, closed: {not bar_total(el)}")
    for n in range(3):
        print(f"n={n}: circular element closed: {verify_circular_closure(n).ok}")
    for labels in ((2, 3), (2, 3, 5), (7, 3, 2)):
        p = necklace_period(labels)
        print(f"period at {labels}: {p.value:+.3e}")


if __name__ == "__main__":
    main()
