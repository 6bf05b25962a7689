#!/usr/bin/env python3
"""Census of the implication order between canonical statement classes.

Enumerates every canonical form over a small ground set, decides implication
for all ordered pairs, and for each failed implication builds the separating
distribution, tallying which counterexample template the planner reached for.
Useful for eyeballing how the implication lattice and the witness case split
behave as the ground set grows.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass

from cmikit import enumerate_canonical, implies, render_cmi, witness_non_implication


@dataclass
class Config:
    n: int = 3
    max_blocks: int = 3
    show_edges: bool = False


def parse_args(argv: list[str] | None) -> Config:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=3, help="ground-set size (0..5)")
    parser.add_argument("--max-blocks", type=int, default=3, help="part bound (0..4)")
    parser.add_argument(
        "--show-edges",
        action="store_true",
        help="print every non-trivial implication edge",
    )
    args = parser.parse_args(argv)
    return Config(args.n, args.max_blocks, args.show_edges)


def main(argv: list[str] | None = None) -> int:
    cfg = parse_args(argv)
    forms = enumerate_canonical(cfg.n, cfg.max_blocks)
    statements = [c.as_cmi() for c in forms]
    print(f"canonical classes over n={cfg.n}, max_blocks={cfg.max_blocks}: {len(forms)}")

    edges = 0
    templates: Counter[str] = Counter()
    for a, ka in enumerate(statements):
        for b, kb in enumerate(statements):
            if a == b:
                continue
            if implies(ka, kb):
                edges += 1
                if cfg.show_edges:
                    print(f"  {render_cmi(ka)}  =>  {render_cmi(kb)}")
            else:
                templates[witness_non_implication(ka, kb).template] += 1

    pairs = len(statements) * (len(statements) - 1)
    print(f"ordered pairs: {pairs}, implication edges: {edges}")
    print("witness templates for the failures:")
    for name, count in sorted(templates.items(), key=lambda kv: -kv[1]):
        print(f"  {name:6s} {count}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
