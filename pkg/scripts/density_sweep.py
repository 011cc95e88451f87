"""Share of random band metrics with trivial isometry group, over point counts and seeds."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from fractions import Fraction

from isoforge.rigidify import density_trial


@dataclass
class DensityConfig:
    points: list[int] = field(default_factory=lambda: [3, 4, 5, 6, 7])
    trials: int = 500
    seeds: list[int] = field(default_factory=lambda: [0, 1, 2])
    eps: Fraction = Fraction(1, 10)


def run(cfg: DensityConfig) -> None:
    print("points seed trivial trials orders perturbed_trivial seconds")
    for m in cfg.points:
        for s in cfg.seeds:
            t0 = time.perf_counter()
            r = density_trial(m, cfg.trials, s, cfg.eps)
            print(m, s, r.trivial, r.trials, r.orders, r.perturbed_all_trivial,
                  f"{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, nargs="+")
    ap.add_argument("--trials", type=int)
    ap.add_argument("--seeds", type=int, nargs="+")
    args = ap.parse_args()
    cfg = DensityConfig()
    cfg.points = args.points or cfg.points
    cfg.trials = args.trials or cfg.trials
    cfg.seeds = args.seeds or cfg.seeds
    run(cfg)
