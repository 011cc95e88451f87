"""Three-way classification of finite groups by the hull of their left translations."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Mapping

from .doubling import DoubleStructure, boolean_inner_structure, recognize_double
from .errors import RouteMismatch
from .groups import FiniteGroup, find_isomorphism, structure_report
from .hull import HullSet, hull_at_identity, kappa


class Case(enum.Enum):
    A_iso_group = "A"
    B_middle = "B"
    C_iso_singular = "C"

    def __str__(self) -> str:
        return self.value


_HULL_SIZE = {1: Case.A_iso_group, 2: Case.B_middle, 8: Case.C_iso_singular}


@dataclass(frozen=True)
class Classification:
    case: Case
    hull_e: HullSet
    structural_witness: DoubleStructure | None
    inner_witness: DoubleStructure | None
    kappa_in_hull: bool


def structural_case(G: FiniteGroup) -> tuple[Case, DoubleStructure | None, DoubleStructure | None]:
    if G.is_boolean():
        return Case.A_iso_group, None, None
    if G.is_abelian():
        return Case.B_middle, None, None
    ds = recognize_double(G)
    if ds is None:
        return Case.A_iso_group, None, None
    inner = boolean_inner_structure(ds)
    if inner is None:
        return Case.B_middle, ds, None
    return Case.C_iso_singular, ds, inner


def classify(G: FiniteGroup, budget: int | None = None) -> Classification:
    """Classify by group structure and by hull size; the two must agree."""
    by_structure, ds, inner = structural_case(G)
    hull_e = hull_at_identity(G, budget)
    by_hull = _HULL_SIZE.get(len(hull_e))
    if by_hull is None or by_hull != by_structure:
        raise RouteMismatch(
            f"{G.name or 'group'}: structure says {by_structure}, hull of size {len(hull_e)}"
        )
    k_in = kappa(G) in hull_e
    if k_in != (by_hull == Case.C_iso_singular or G.is_abelian()):
        raise RouteMismatch("inversion membership contradicts the case")
    return Classification(by_hull, hull_e, ds, inner, k_in)


def squares_or_commute(G: FiniteGroup) -> bool:
    """``x^2 == y^2`` or ``xy == yx`` for every pair."""
    return all(
        G.square(x) == G.square(y) or G.mul(x, y) == G.mul(y, x)
        for x, y in itertools.combinations(G, 2)
    )


def is_solvable(G: FiniteGroup) -> bool:
    H = frozenset(G)
    while len(H) > 1:
        comms = {G.mul(G.mul(G.inv(x), G.inv(y)), G.mul(x, y)) for x in H for y in H}
        D = G.generated(comms)
        if D == H:
            return False
        H = D
    return True


def admits_left_rigid(G: FiniteGroup, budget: int | None = None) -> bool:
    """Whether some left-invariant metric has exactly the left translations as isometries."""
    return classify(G, budget).case == Case.A_iso_group


def left_rigid_conditions(G: FiniteGroup) -> dict[str, object]:
    """Which of the named sufficient conditions hold for ``G``."""
    abelian = G.is_abelian()
    Z = G.center()
    center_boolean = all(G.square(z) == G.identity for z in Z)
    return {
        "boolean": G.is_boolean(),
        "non_solvable": not is_solvable(G),
        "center_trivial_or_non_boolean": (not abelian) and (len(Z) == 1 or not center_boolean),
        # every finite group is discrete, so the connectedness criterion never fires
        "connected": "not-applicable",
    }


def biinvariant_only(G: FiniteGroup, budget: int | None = None) -> bool:
    """Whether every left-invariant metric on ``G`` is also right-invariant."""
    if G.is_abelian():
        return True
    via_case = classify(G, budget).case == Case.C_iso_singular
    via_pairs = squares_or_commute(G)
    if via_case != via_pairs:
        raise RouteMismatch("case C and the square/commute predicate disagree")
    return via_case


@dataclass(frozen=True)
class CensusReport:
    cases: dict[str, Case]
    iso_singular: tuple[str, ...]
    exponent_four: bool
    same_order_isomorphic: bool
    pairs_checked: tuple[tuple[str, str, bool], ...]
    is_orders_ok: bool


def iso_singular_census(groups: Mapping[str, FiniteGroup]) -> CensusReport:
    cases = {name: classify(G).case for name, G in groups.items()}
    singular = tuple(n for n, c in cases.items() if c == Case.C_iso_singular)
    exp4 = all(structure_report(groups[n]).exponent == 4 for n in singular)
    pairs = []
    for a, b in itertools.combinations(singular, 2):
        if groups[a].order == groups[b].order:
            pairs.append((a, b, find_isomorphism(groups[a], groups[b]) is not None))
    is_ok = all(
        groups[n].order == 2 ** (int(n.split(":")[1]) + 2)
        for n in groups
        if n.startswith("IS:")
    )
    return CensusReport(
        cases=cases,
        iso_singular=singular,
        exponent_four=exp4,
        same_order_isomorphic=all(ok for *_, ok in pairs),
        pairs_checked=tuple(pairs),
        is_orders_ok=is_ok,
    )
