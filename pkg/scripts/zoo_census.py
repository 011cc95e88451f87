"""Classify the zoo, print hull sizes, and check the case-C groups against each other."""

from __future__ import annotations

from dataclasses import dataclass

from isoforge.classify import biinvariant_only, classify, iso_singular_census, left_rigid_conditions
from isoforge.groups import structure_report
from isoforge.zoo import ZOO_NAMES, zoo


@dataclass
class CensusConfig:
    names: tuple[str, ...] = ZOO_NAMES + ("IS:3", "double:cyclic:8:4", "double:abelian:2,4:2")


def run(cfg: CensusConfig) -> None:
    groups = {n: zoo(n) for n in cfg.names}
    print(f"{'group':24} order exp case hull_e kappa biinv center_crit")
    for n, G in groups.items():
        c = classify(G)
        cond = left_rigid_conditions(G)
        print(f"{n:24} {G.order:5} {structure_report(G).exponent:3} {c.case!s:4} {len(c.hull_e):6} "
              f"{c.kappa_in_hull!s:5} {biinvariant_only(G)!s:5} {cond['center_trivial_or_non_boolean']}")
    rep = iso_singular_census(groups)
    print("case C:", ", ".join(rep.iso_singular))
    print("exponent 4:", rep.exponent_four, " same order => isomorphic:", rep.same_order_isomorphic)
    for a, b, ok in rep.pairs_checked:
        print(f"  {a} ~ {b}: {ok}")


if __name__ == "__main__":
    run(CensusConfig())
