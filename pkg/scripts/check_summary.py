"""Run the verification suites and print a per-suite summary table."""

import argparse
from collections import defaultdict
from fractions import Fraction

from gjs.verify import SUITES, SuiteConfig, run_suites


def main(cfg: SuiteConfig) -> int:
    report = run_suites(cfg)
    by_suite = defaultdict(list)
    for record in report.records:
        by_suite[record.suite].append(record)
    for suite, records in by_suite.items():
        gated = [r for r in records if r.gating]
        passed = sum(r.passed for r in gated)
        elapsed = sum(r.elapsed for r in records)
        print(f"{suite:22s} {passed}/{len(gated)} gating checks pass, {elapsed:6.2f}s")
        for r in records:
            if not r.gating or not r.passed:
                status = "reported" if not r.gating else "FAILED"
                print(f"    {status:8s} {r.name}: residual {r.residual} {r.detail}")
    print("all gating checks pass" if report.passed else "gating failures present")
    return 0 if report.passed else 1


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--delta", type=Fraction, default=Fraction(5, 2))
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--suite", action="append", choices=SUITES)
    args = parser.parse_args()
    raise SystemExit(main(SuiteConfig(delta=args.delta, seed=args.seed, suites=tuple(args.suite or SUITES))))
