#!/usr/bin/env python3
"""Chart the achievable-rate landscape and sanity-check the tail bounds.

Prints the zeta / r_star threshold curves over a theta grid, marks the
knee where zeta leaves its plateau at 1, and compares the Chernoff
binomial tail bounds (strong and weak, both sides) against Monte Carlo
tail frequencies for one (T, p) point.
"""

from __future__ import annotations

import argparse

import numpy as np

from pooltest import (
    THETA_KNEE,
    chernoff_lower,
    chernoff_upper,
    chernoff_weak_lower,
    chernoff_weak_upper,
    threshold_curve,
    write_threshold_csv,
)


def print_curve() -> None:
    thetas = [0.05, 0.15, 0.25, 0.35, THETA_KNEE, 0.45, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95]
    print(f"knee at theta = {THETA_KNEE:.12f}  (zeta leaves the value 1 here)")
    print(f"{'theta':>8} {'zeta':>10} {'r_star':>10}  regime")
    for pt in threshold_curve(thetas):
        if pt.theta <= THETA_KNEE:
            regime = "zeta = 1, individual-testing rate dominates"
        elif pt.theta < 0.5:
            regime = "zeta < 1 but still above ln 2"
        else:
            regime = "r_star pinned at ln 2"
        print(f"{pt.theta:>8.4f} {pt.zeta:>10.6f} {pt.r_star:>10.6f}  {regime}")


def check_tails(T: int, p: float, delta: float, samples: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    draws = rng.binomial(T, p, size=samples)
    mu = T * p
    lo = (draws <= (1 - delta) * mu).mean()
    hi = (draws >= (1 + delta) * mu).mean()

    print(f"\nBinomial({T}, {p}) tails at delta={delta}, {samples:,} samples:")
    print(f"  P[X <= {(1 - delta) * mu:.1f}]  mc={lo:.5f}  "
          f"strong<={chernoff_lower(T, p, delta):.5f}  weak<={chernoff_weak_lower(T, p, delta):.5f}")
    print(f"  P[X >= {(1 + delta) * mu:.1f}]  mc={hi:.5f}  "
          f"strong<={chernoff_upper(T, p, delta):.5f}  weak<={chernoff_weak_upper(T, p, delta):.5f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--csv", default=None, help="also write the curve over a dense grid here")
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    print_curve()
    check_tails(T=400, p=0.08, delta=0.5, samples=args.samples, seed=args.seed)

    if args.csv:
        write_threshold_csv(np.linspace(0.01, 0.99, 99), args.csv)
        print(f"\nwrote dense curve to {args.csv}")


if __name__ == "__main__":
    main()
