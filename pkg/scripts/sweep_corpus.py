"""Run the corpus sweep and print per-check counts and timing."""

import argparse
import json
import time

from gyrotopo.corpus import run_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--no-products", action="store_true")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    start = time.perf_counter()
    report, sweep = run_sweep(args.workers, products=not args.no_products)
    elapsed = time.perf_counter() - start
    if args.json:
        print(json.dumps({"report": report.to_dict(), "seconds": elapsed}, indent=2, sort_keys=True))
    else:
        for name, count in sorted(sweep.counts.items()):
            print(f"{name:32s} {count:6d}")
        print(f"violations: {len(sweep.violations)}")
        for v in sweep.violations[:10]:
            print("  ", v)
        print(f"seconds: {elapsed:.1f}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
