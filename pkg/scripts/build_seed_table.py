#!/usr/bin/env python3
"""Build the seed table of reduced linkage classes and print the merges.

Each row is one isomorphism class of simple constituents; rows merge when
pairs in different groups of equal order are linked, and every merge
carries a transported-witness edge.

Example:
    python3 scripts/build_seed_table.py --max-order 8 --out seeds.json
"""

import argparse
import sys
from dataclasses import dataclass

from sbw import catalog, classify, jsonio


@dataclass
class SeedConfig:
    max_order: int = 8
    out: str = ""
    verbose: bool = False


def parse_args(argv) -> SeedConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=8)
    ap.add_argument("--out", default="", help="write the table JSON here")
    ap.add_argument("--verbose", action="store_true",
                    help="print every row, not only the merged ones")
    ns = ap.parse_args(argv)
    return SeedConfig(max_order=ns.max_order, out=ns.out, verbose=ns.verbose)


def describe(row) -> str:
    gids = ", ".join(sorted({e.gid for e in row.entries}))
    e0 = row.entries[0]
    return (f"row {row.class_id:3d}  order {row.order}  [{gids}]  "
            f"|Gamma| = {e0.gamma_order}, {e0.irreducibles} irreducibles")


def main(argv=None) -> int:
    cfg = parse_args(argv)
    cat = catalog.default_catalog().restrict(cfg.max_order)
    table = classify.seeds(cat)
    merged = [r for r in table.rows if len({e.gid for e in r.entries}) > 1]
    print(f"{len(table.rows)} seed rows over {len(cat.entries)} groups "
          f"(order <= {cfg.max_order}); {len(merged)} merged across groups")
    shown = table.rows if cfg.verbose else merged
    for row in shown:
        print(describe(row))
        for w in row.witnesses:
            print(f"      witness: {w[0]} {w[1]}  <->  {w[2]} {w[3]}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(jsonio.seeds_to_json(table)) + "\n")
        print(f"wrote {cfg.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
