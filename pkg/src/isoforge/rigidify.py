"""Metrics whose full isometry group is a prescribed permutation group."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ForbiddenCardinality, ValidationError, VerificationFailed
from .groups import (
    FiniteGroup,
    GroupAction,
    Perm,
    group_from_permutations,
    identity_perm,
    left_regular_action,
)
from .hull import HullSet, pairwise_hull, symmetrized_hull
from .metrics import RationalMetric, discrete_metric, invariantize, isometries, validate_metric
from .perturb import Scheme, separate_orbits

DEFAULT_EPS = Fraction(1, 10)
VERIFY_DEGREE_LIMIT = 16


@dataclass(frozen=True)
class RigidityReport:
    metric: RationalMetric
    seed: RationalMetric  # invariantized seed the corridor refers to
    realized_group_order: int
    exact: bool
    corridor: tuple[Fraction, Fraction]
    verified: bool
    predicted: tuple[Perm, ...] = field(repr=False)
    action: GroupAction = field(repr=False)


def corridor(rho: RationalMetric, base: RationalMetric) -> tuple[Fraction, Fraction]:
    """``(min, max)`` of ``rho / base`` over distinct pairs."""
    ratios = [rho(x, y) / base(x, y) for x, y in base.pairs()]
    if not ratios:
        return Fraction(1), Fraction(1)
    return min(ratios), max(ratios)


def rigid_metric(
    action: GroupAction,
    seed: RationalMetric | None = None,
    eps: Fraction = DEFAULT_EPS,
    scheme: Scheme = "direct",
    verify: bool | None = None,
    demand_exact: bool = True,
    budget: int | None = None,
) -> RigidityReport:
    """Metric within ``(1 + eps)`` of the invariantized seed whose isometry group
    is the hull of the acting group.

    With one group element on two points no metric works, since the swap is
    always an isometry; that case raises unless ``demand_exact`` is off.
    """
    n, order = action.degree, action.group.order
    exceptional = (order, n) == (1, 2)
    if exceptional and demand_exact:
        raise ForbiddenCardinality("trivial group on two points is never an isometry group")
    if seed is not None and seed.degree != n:
        raise ValidationError("seed degree does not match the action")
    base = invariantize(seed if seed is not None else discrete_metric(n), action)
    rho = separate_orbits(base, action, eps, scheme)
    # on two points with the trivial group the realized group is the pairwise hull
    predicted = (pairwise_hull if exceptional else symmetrized_hull)(action, budget)
    if verify is None:
        verify = n <= VERIFY_DEGREE_LIMIT
    if verify:
        found = isometries(rho, budget)
        if set(found) != set(predicted.maps):
            raise VerificationFailed(
                f"oracle found {len(found)} isometries, hull predicts {len(predicted)}"
            )
    return RigidityReport(
        metric=rho,
        seed=base,
        realized_group_order=len(predicted),
        exact=len(predicted) == order,
        corridor=corridor(rho, base),
        verified=bool(verify),
        predicted=predicted.maps,
        action=action,
    )


@dataclass(frozen=True)
class FreeConditions:
    free_at_omega: bool
    effective_off_orbit: bool
    transitive: bool
    cardinality_ok: bool

    @property
    def applies(self) -> bool:
        return self.free_at_omega and self.effective_off_orbit and not self.transitive and self.cardinality_ok


def check_free_conditions(action: GroupAction, omega: int) -> FreeConditions:
    G = action.group
    orbit = action.orbit(omega)
    rest = [x for x in range(action.degree) if x not in orbit]
    return FreeConditions(
        free_at_omega=len(action.stabilizer(omega)) == 1,
        effective_off_orbit=all(
            g == G.identity or any(action.map[g][x] != x for x in rest) for g in G
        ),
        transitive=action.is_transitive(),
        cardinality_ok=(G.order, action.degree) != (1, 2),
    )


def product_action(G: FiniteGroup, m: int) -> GroupAction:
    """``a.(g, x) = (a g, x)`` on ``G x {0..m-1}``; point ``(g, x)`` has index ``g*m + x``."""
    return GroupAction(
        G,
        tuple(tuple(G.mul(a, i // m) * m + i % m for i in range(G.order * m)) for a in G),
    )


def union_action(action: GroupAction) -> GroupAction:
    """``X`` disjoint-union ``G``: ``a.x`` on ``X`` (indices first), left translation on ``G``."""
    G, n = action.group, action.degree
    return GroupAction(
        G, tuple(action.map[a] + tuple(n + G.mul(a, g) for g in G) for a in G)
    )


def _assert_hull_closed(action: GroupAction, budget: int | None) -> None:
    if len(symmetrized_hull(action, budget)) != action.group.order:
        raise ValidationError("constructed action is not hull-closed")


def product_rigid(
    G: FiniteGroup,
    m: int,
    eps: Fraction = DEFAULT_EPS,
    verify: bool | None = None,
    scheme: Scheme = "direct",
    budget: int | None = None,
) -> tuple[RigidityReport, GroupAction]:
    if m < 1:
        raise ValidationError("need at least one copy")
    if (G.order, G.order * m) == (1, 2):
        raise ForbiddenCardinality("trivial group on two points")
    action = product_action(G, m)
    _assert_hull_closed(action, budget)
    return rigid_metric(action, eps=eps, scheme=scheme, verify=verify, budget=budget), action


def disjoint_union_rigid(
    action: GroupAction,
    eps: Fraction = DEFAULT_EPS,
    verify: bool | None = None,
    scheme: Scheme = "direct",
    budget: int | None = None,
) -> RigidityReport:
    if action.degree < 2:
        raise ForbiddenCardinality("the acted-on space needs at least two points")
    big = union_action(action)
    _assert_hull_closed(big, budget)
    return rigid_metric(big, eps=eps, scheme=scheme, verify=verify, budget=budget)


def abelian_rigid(
    H: FiniteGroup,
    eps: Fraction = DEFAULT_EPS,
    verify: bool | None = None,
    scheme: Scheme = "direct",
    budget: int | None = None,
) -> RigidityReport:
    """Invariant metric on ``H`` whose isometries are ``x -> a x`` and ``x -> a x^-1``."""
    if not H.is_abelian():
        raise ValidationError("group must be abelian")
    return rigid_metric(left_regular_action(H), eps=eps, scheme=scheme, verify=verify, budget=budget)


def intersect_isometry_groups(metrics: Sequence[RationalMetric], budget: int | None = None) -> GroupAction:
    """The common isometries of several metrics on the same points, as an action."""
    common = set(isometries(metrics[0], budget))
    for d in metrics[1:]:
        common &= set(isometries(d, budget))
    _, action = group_from_permutations(sorted(common), "intersection")
    return action


def random_band_metric(m: int, rng: random.Random, denominator: int = 1000) -> RationalMetric:
    """Independent uniform values ``k/denominator`` in ``[1, 2)``; always a metric."""
    dist = [[Fraction(0)] * m for _ in range(m)]
    for x in range(m):
        for y in range(x + 1, m):
            v = Fraction(rng.randrange(denominator, 2 * denominator), denominator)
            dist[x][y] = dist[y][x] = v
    return validate_metric(dist)


@dataclass(frozen=True)
class DensityReport:
    points: int
    trials: int
    trivial: int
    orders: dict[int, int]
    perturbed_all_trivial: bool

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.trivial, self.trials) if self.trials else Fraction(0)


def density_trial(
    m: int, trials: int, rng_seed: int = 0, eps: Fraction = DEFAULT_EPS
) -> DensityReport:
    """Share of random band metrics with trivial isometry group, plus a check that
    each sample is ``eps``-close to a metric with trivial isometry group."""
    if m < 3:
        raise ValidationError("need at least three points")
    rng = random.Random(rng_seed)
    trivial_action = GroupAction(FiniteGroup(((0,),), 0, "trivial"), (identity_perm(m),))
    orders: Counter[int] = Counter()
    all_trivial = True
    for _ in range(trials):
        d = random_band_metric(m, rng)
        order = len(isometries(d))
        orders[order] += 1
        rep = rigid_metric(trivial_action, seed=d, eps=eps, verify=True)
        all_trivial &= rep.realized_group_order == 1
    return DensityReport(m, trials, orders[1], dict(sorted(orders.items())), all_trivial)
