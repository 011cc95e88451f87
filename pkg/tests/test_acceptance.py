"""Acceptance criteria, one test each. Every test records a PASS/FAIL line that
is printed in the pytest summary; ``python3 tests/test_acceptance.py`` prints
the same lines directly."""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from isoforge.classify import biinvariant_only, classify, iso_singular_census
from isoforge.errors import ForbiddenCardinality
from isoforge.groups import (
    FiniteGroup, GroupAction, find_isomorphism, group_from_permutations, identity_perm,
    left_regular_action, make_action, right_regular_action, structure_report,
)
from isoforge.hull import in_hull, pair_classes, symmetrized_hull
from isoforge.metrics import (
    invariantize, is_invariant, is_isometry, isometries, metric_from_length, validate_metric,
)
from isoforge.perturb import break_symmetry, class_values, lip_bump, separate_orbits
from isoforge.rigidify import (
    density_trial, disjoint_union_rigid, intersect_isometry_groups, product_rigid, rigid_metric,
)
from isoforge.zoo import IS, ZOO_NAMES, zoo, zoo_action

from conftest import band_metric, check_bump, random_bump_case

RESULTS: list[str] = []
DENSITY_FLOOR = Fraction(95, 100)  # frozen after the first full run reported 500/500


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}"
    RESULTS.append(line + (f" ({detail})" if detail else ""))
    print(RESULTS[-1])
    assert ok, RESULTS[-1]


def _trivial_on(n: int) -> GroupAction:
    return GroupAction(FiniteGroup(((0,),), 0, "trivial"), (identity_perm(n),))


def _hull_group_action(name: str) -> GroupAction:
    _, action = group_from_permutations(symmetrized_hull(left_regular_action(zoo(name))).maps)
    return action


def _rigidity_suite() -> dict[str, GroupAction]:
    suite = {f"trivial on {n}": _trivial_on(n) for n in (3, 4, 5, 6)}
    for name in ("sym:3", "dihedral:4", "boolean:2", "sym:4"):
        suite[f"L({name})"] = left_regular_action(zoo(name))
    suite["hull L(cyclic:4)"] = _hull_group_action("cyclic:4")
    suite["hull L(quaternion)"] = _hull_group_action("quaternion")
    return suite


def test_01_rigidity_roundtrip():
    t0 = time.perf_counter()
    bad = []
    for label, action in _rigidity_suite().items():
        hull = set(symmetrized_hull(action).maps)
        for scheme in ("direct", "paper"):
            rep = rigid_metric(action, scheme=scheme, verify=True)
            if set(isometries(rep.metric)) != hull:
                bad.append(f"{label}/{scheme}")
    dt = time.perf_counter() - t0
    record(1, "oracle(rigid_metric) equals the hull elementwise", not bad and dt < 120,
           f"{dt:.1f}s, mismatches={bad}")


def test_02_corridor():
    bad = []
    rng = random.Random(2)
    for label, action in _rigidity_suite().items():
        seed = band_metric(action.degree, rng)
        for eps in (Fraction(1, 10), Fraction(1, 100)):
            rep = rigid_metric(action, seed=seed, eps=eps, verify=action.degree <= 16)
            base = invariantize(seed, action)
            if not (base <= rep.metric <= base.scaled(1 + eps)):
                bad.append(f"{label}@{eps}")
    record(2, "seed' <= rho <= (1+eps) seed' for eps in {1/10, 1/100}", not bad, f"violations={bad}")


EXPECTED_CASE = {
    "trivial": "A", "cyclic:2": "A", "boolean:2": "A", "boolean:3": "A", "sym:3": "A",
    "dihedral:4": "A", "alt:4": "A", "sym:4": "A", "dihedral:6": "A",
    "cyclic:3": "B", "cyclic:4": "B", "cyclic:5": "B", "cyclic:6": "B", "cyclic:7": "B",
    "cyclic:8": "B", "abelian:2,4": "B", "double:boolean:2:1": "B",
    "quaternion": "C", "IS:1": "C", "IS:2": "C", "double:cyclic:4:2": "C",
}


def test_03_trichotomy():
    t0 = time.perf_counter()
    wrong = []
    for name in ZOO_NAMES:
        c = classify(zoo(name))  # raises on any route mismatch
        if str(c.case) != EXPECTED_CASE[name] or len(c.hull_e) != {"A": 1, "B": 2, "C": 8}[str(c.case)]:
            wrong.append(name)
    dt = time.perf_counter() - t0
    record(3, "structural route equals hull route on the zoo", not wrong and dt < 60,
           f"{len(ZOO_NAMES)} groups, {dt:.1f}s, wrong={wrong}")


def test_04_is_family():
    iso = find_isomorphism(IS(1), zoo("quaternion")) is not None
    orders = all(IS(n).order == 2 ** (n + 2) for n in (1, 2, 3, 4))
    exp4 = all(structure_report(IS(n)).exponent == 4 for n in (1, 2))
    census = iso_singular_census({n: zoo(n) for n in ZOO_NAMES})
    ok = iso and orders and exp4 and census.same_order_isomorphic and census.exponent_four
    record(4, "IS(1) ~ Q8, |IS(n)| = 2^(n+2), exponent 4, same-order C groups isomorphic", ok,
           f"pairs={len(census.pairs_checked)}")


def test_05_lip_bump_properties():
    rng = random.Random(5)
    failures = 0
    for _ in range(200):
        rho, a, b, K, eps, forb = random_bump_case(rng)
        bump = lip_bump(rho, a, b, K, eps, forb)
        failures += not all(check_bump(rho, a, b, K, eps, bump))
    record(5, "(L1), (L2), (L3) on 200 random spaces", failures == 0, f"failures={failures}")


def test_06_orbit_separation():
    bad = []
    for name in ZOO_NAMES:
        action = zoo_action(name)
        d0 = invariantize(band_metric(action.degree, random.Random(6)), action) if action.degree > 1 else None
        if d0 is None:
            continue
        classes = pair_classes(action).classes
        groups = []
        for scheme in ("paper", "direct"):
            rho = separate_orbits(d0, action, Fraction(1, 10), scheme)
            vals = class_values(rho, classes)
            if len(set(vals)) != len(vals) or not is_invariant(rho, action):
                bad.append(f"{name}/{scheme}")
            groups.append(isometries(rho))
        if groups[0] != groups[1]:
            bad.append(f"{name}/schemes differ")
    record(6, "distinct class values, invariance, schemes agree", not bad, f"bad={bad}")


def _right_translation_outside_hull(G):
    L = left_regular_action(G)
    return next((r for r in right_regular_action(G).map if not in_hull(r, L)), None)


def test_07_biinvariance():
    true_set = [n for n in ZOO_NAMES if zoo(n).is_abelian()] + ["quaternion", "IS:2"]
    false_set = ["sym:3", "dihedral:4", "sym:4", "alt:4", "dihedral:6"]
    ok = all(biinvariant_only(zoo(n)) for n in true_set)
    ok &= not any(biinvariant_only(zoo(n)) for n in false_set)
    broken = 0
    for n in false_set:
        G = zoo(n)
        f = _right_translation_outside_hull(G)
        rho = break_symmetry(validate_metric([[0 if x == y else 1 for y in G] for x in G]), G, f, Fraction(1, 10))
        right = right_regular_action(G).map
        if is_invariant(rho, left_regular_action(G)) and any(not is_isometry(r, rho) for r in right):
            broken += 1
    ok &= broken == len(false_set)
    G = zoo("quaternion")
    R = right_regular_action(G)
    rng = random.Random(7)
    bi = 0
    for _ in range(100):
        val = {min(x, G.inv(x)): rng.randrange(1000, 2000) for x in G if x != G.identity}
        d = metric_from_length(G, [0 if x == G.identity else Fraction(val[min(x, G.inv(x))], 1000) for x in G])
        bi += is_invariant(d, R)
    ok &= bi == 100
    record(7, "bi-invariance split and right-translation witnesses", ok,
           f"broken={broken}/{len(false_set)}, Q8 bi-invariant={bi}/100")


def test_08_free_realization():
    t0 = time.perf_counter()
    ok = True
    for name, m in (("cyclic:2", 3), ("quaternion", 2)):
        G = zoo(name)
        rep, action = product_rigid(G, m, verify=True)
        iso = isometries(rep.metric)
        ident = identity_perm(action.degree)
        free = all(f[x] != x for f in iso if f != ident for x in range(action.degree))
        ok &= rep.verified and len(iso) == G.order and free
    nat = zoo_action("sym:3")
    rep = disjoint_union_rigid(nat, verify=True)
    iso = isometries(rep.metric)
    ident = identity_perm(rep.action.degree)
    # freeness on the copy of G (the points after X)
    free_on_g = all(f[x] != x for f in iso if f != ident for x in range(nat.degree, rep.action.degree))
    ok &= rep.verified and len(iso) == 6 and free_on_g
    dt = time.perf_counter() - t0
    record(8, "product and disjoint-union realizations", ok and dt < 60, f"{dt:.1f}s")


def test_09_exceptional_case():
    raised = False
    try:
        rigid_metric(_trivial_on(2))
    except ForbiddenCardinality:
        raised = True
    rng = random.Random(9)
    orders = {
        len(isometries(validate_metric([[0, v], [v, 0]])))
        for v in (Fraction(rng.randrange(1, 10**6), rng.randrange(1, 10**6)) for _ in range(50))
    }
    record(9, "trivial group on two points", raised and orders == {2}, f"orders={orders}")


def test_10_density():
    t0 = time.perf_counter()
    r = density_trial(5, 500, rng_seed=0)
    dt = time.perf_counter() - t0
    ok = r.fraction >= DENSITY_FLOOR and r.perturbed_all_trivial and dt < 30
    record(10, "density proxy on 5 points", ok, f"fraction={r.trivial}/{r.trials}, {dt:.1f}s")


def test_11_intersection_closure():
    G = zoo("sym:3")
    d1 = rigid_metric(left_regular_action(G)).metric
    A3 = [g for g in G if G.element_orders[g] in (1, 3)]
    H, members = G.subgroup(A3)
    others = {
        "R(S3)": rigid_metric(right_regular_action(G)).metric,
        "L(A3)": rigid_metric(make_action(H, [tuple(G.mul(members[h], x) for x in G) for h in H])).metric,
    }
    ok, detail = True, []
    for label, d2 in others.items():
        inter = intersect_isometry_groups([d1, d2])
        closed = len(symmetrized_hull(inter)) == inter.group.order
        rep = rigid_metric(inter, verify=True)
        exact = set(isometries(rep.metric)) == set(inter.map)
        ok &= closed and exact
        detail.append(f"{label}: order {inter.group.order}")
    record(11, "intersection of isometry groups is realized exactly", ok, ", ".join(detail))


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
