#!/usr/bin/env python3
"""Run the property suites and print a per-suite timing summary.

Example:
    python3 scripts/run_verify.py --max-order 6
    python3 scripts/run_verify.py --suite mackey --suite gamma --out report.json
"""

import argparse
import sys
import time
from dataclasses import dataclass, field

from sbw import catalog, jsonio, verify


@dataclass
class RunConfig:
    suites: list = field(default_factory=lambda: sorted(verify.SUITES))
    max_order: int = 8
    timings: bool = False
    out: str = ""


def parse_args(argv) -> RunConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", action="append", choices=sorted(verify.SUITES),
                    help="run one suite (repeatable); default is all")
    ap.add_argument("--max-order", type=int, default=8)
    ap.add_argument("--timings", action="store_true",
                    help="include per-check seconds in the JSON report")
    ap.add_argument("--out", default="", help="write the JSON report here")
    ns = ap.parse_args(argv)
    cfg = RunConfig(max_order=ns.max_order, timings=ns.timings, out=ns.out)
    if ns.suite:
        cfg.suites = ns.suite
    return cfg


def main(argv=None) -> int:
    cfg = parse_args(argv)
    cat = catalog.default_catalog()
    all_checks = []
    worst = 0
    for name in cfg.suites:
        t0 = time.perf_counter()
        report = verify.run_suites([name], max_order=cfg.max_order,
                                   catalog=cat)
        dt = time.perf_counter() - t0
        bad = [c for c in report.checks if not c.ok]
        status = "ok" if not bad else f"{len(bad)} FAILED"
        print(f"{name:12s} {len(report.checks):5d} checks  "
              f"{dt:7.2f}s  {status}")
        for c in bad:
            print(f"    FAIL {c.name}: {c.detail}")
        all_checks.extend(report.checks)
        worst = max(worst, len(bad))
    if cfg.out:
        merged = verify.VerifyReport(checks=tuple(all_checks),
                                     max_order=cfg.max_order)
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(verify.report_to_json(
                merged, include_seconds=cfg.timings)) + "\n")
        print(f"wrote {cfg.out}")
    total_ok = sum(1 for c in all_checks if c.ok)
    print(f"total: {total_ok}/{len(all_checks)} checks passed")
    return 0 if worst == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
