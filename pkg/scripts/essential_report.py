#!/usr/bin/env python3
"""Print the essential-quotient breakdown for one or more groups.

For each group: the covering dimension, the blockwise verdicts, and the
dimension and simple count of the essential quotient.  With --oracle the
prediction is checked against a brute-force rational span (|G| <= 6).

Example:
    python3 scripts/essential_report.py C2 C3 S3 --oracle
"""

import argparse
import sys

from sbw import catalog, classify


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("gids", nargs="+", metavar="GROUP",
                    help="catalog ids, e.g. C2 S3 D8")
    ap.add_argument("--oracle", action="store_true")
    ns = ap.parse_args(argv)
    cat = catalog.default_catalog()
    for gid in ns.gids:
        G = cat.by_id(gid).group
        rep = classify.essential_report(G, cat)
        print(f"{gid}: covering dim {rep.covering_dim}, "
              f"essential dim {rep.essential_dim}, "
              f"{rep.simple_count} simple constituents")
        for b in rep.blocks:
            K, P = b.members[0]
            print(f"    ({K.elems}, {P.elems}) x{b.n}: dim {b.dim}, "
                  f"|Gamma| {b.gamma_order}, irr {b.irreducibles}, "
                  f"{b.verdict} [{b.rule}]")
        if ns.oracle:
            orc = classify.ideal_span_oracle(G, cat)
            print(f"    oracle: full {orc.full_dim}, span rank "
                  f"{orc.span_rank}, essential {orc.essential_dim}, "
                  f"agreement {orc.support_ok and orc.rank_ok}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
