#!/usr/bin/env python3
"""Measure decoder error probability as the test budget grows.

Runs the Monte Carlo harness at several test counts around the
information-theoretic budget k log2(n/k) / ln 2, reporting exact-recovery
error frequency with Wilson intervals for the dd and subset decoders.
Then sweeps the rate at a high defective density to show how often
defectives get masked, and finishes with one delete-then-decode
pipeline experiment.
"""

from __future__ import annotations

import argparse
import math

from pooltest import (
    Criterion,
    DesignSpec,
    ExperimentConfig,
    masking_sweep,
    run_experiment,
)


def budget_sweep(n: int, k: int, trials: int, seed: int) -> None:
    base = k * math.log2(n / k) / math.log(2)
    print(f"n={n}, k={k}: baseline budget {base:.0f} tests")
    print(f"{'mult':>5} {'T':>5}   {'dd P_err [95% CI]':<26} {'subset(0.1) P_err [95% CI]'}")
    for mult in (0.6, 0.8, 1.0, 1.2, 1.4):
        T = math.ceil(base * mult)
        cells = []
        for decoder, crit in (("dd", Criterion.exact()), ("subset", Criterion.subset(0.1))):
            cfg = ExperimentConfig(
                n=n, k=k, T=T, trials=trials, master_seed=seed,
                design=DesignSpec("ncc"), decoder=decoder, criterion=crit,
                eta_minus=0.1 if decoder == "subset" else None,
            )
            s = run_experiment(cfg)
            cells.append(f"{s.p_error:.3f} [{s.wilson_low:.3f}, {s.wilson_high:.3f}]")
        print(f"{mult:>5.1f} {T:>5}   {cells[0]:<26} {cells[1]}")


def masking_demo(n: int, theta: float, trials: int, seed: int) -> None:
    ln2 = math.log(2)
    rows = masking_sweep(n, theta, [0.8 * ln2, 1.0 * ln2, 1.2 * ln2],
                         DesignSpec("ncc"), trials=trials, master_seed=seed)
    print(f"\nmasking at n={n}, theta={theta} (higher rate = fewer tests):")
    for r in rows:
        print(f"  rate {r['rate']:.3f} (T={r['tests']}): "
              f"mean masked defectives {r['mean_masked_def']:.2f}, "
              f"mean masked non-defectives {r['mean_masked_nondef']:.2f}")


def pipeline_demo(n: int, k: int, trials: int, seed: int) -> None:
    base = k * math.log2(n / k) / math.log(2)
    cfg = ExperimentConfig(
        n=n, k=k, T=math.ceil(base * 1.4), trials=trials, master_seed=seed,
        design=DesignSpec("bernoulli"), decoder="pipeline",
        criterion=Criterion.subset(0.2), alpha=0.05, inner="dd",
    )
    s = run_experiment(cfg)
    print(f"\npipeline (delete 5% of items, dd on the rest, criterion subset(0.2)), T={cfg.T}:")
    print(f"  {s.line()}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--k", type=int, default=10)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=21)
    args = ap.parse_args()

    budget_sweep(args.n, args.k, args.trials, args.seed)
    masking_demo(n=1024, theta=0.8, trials=args.trials, seed=args.seed)
    pipeline_demo(args.n, args.k, trials=max(20, args.trials // 4), seed=args.seed)


if __name__ == "__main__":
    main()
