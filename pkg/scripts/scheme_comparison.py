"""Iterative versus direct orbit separation: runtime, corridor use and realized group."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from isoforge.groups import left_regular_action
from isoforge.metrics import isometries
from isoforge.rigidify import rigid_metric
from isoforge.zoo import zoo


@dataclass
class SchemeConfig:
    groups: tuple[str, ...] = ("cyclic:4", "sym:3", "dihedral:4", "quaternion", "alt:4", "IS:2", "sym:4")
    eps: tuple[Fraction, ...] = (Fraction(1, 10), Fraction(1, 1000))


def run(cfg: SchemeConfig) -> None:
    print("group scheme eps hull_order oracle_order corridor_hi digits seconds")
    for name in cfg.groups:
        A = left_regular_action(zoo(name))
        for eps in cfg.eps:
            for scheme in ("paper", "direct"):
                t0 = time.perf_counter()
                rep = rigid_metric(A, eps=eps, scheme=scheme, verify=False)
                found = len(isometries(rep.metric))
                dt = time.perf_counter() - t0
                digits = max(len(str(v.denominator)) for v in rep.metric.values())
                print(name, scheme, eps, rep.realized_group_order, found, rep.corridor[1], digits, f"{dt:.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+")
    args = ap.parse_args()
    cfg = SchemeConfig()
    if args.groups:
        cfg.groups = tuple(args.groups)
    run(cfg)
