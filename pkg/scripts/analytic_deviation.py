"""Max identity deviation of the analytic models against sample radius."""

import argparse

from gyrotopo.analytic import AnalyticConfig, analytic_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--radii", type=float, nargs="+", default=[0.5, 0.8, 0.9, 0.95, 0.99])
    args = ap.parse_args()
    print(f"{'model':9s} {'radius':>7s} {'max_dev':>10s} {'passed':>7s}")
    ok = True
    for model in ("mobius", "einstein"):
        for radius in args.radii:
            r = analytic_suite(AnalyticConfig(model=model, samples=args.samples, seed=args.seed, radius=radius))
            ok &= r.passed
            print(f"{model:9s} {radius:7.3f} {r.details['max_deviation']:10.2e} {str(r.passed):>7s}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
