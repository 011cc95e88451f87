"""Small exact perturbations of metrics that separate pair classes.

``lip_bump`` builds a nearly 1-Lipschitz function whose oscillation on one
chosen pair beats everything on a forbidden pair set; the other operations
feed it into ``max(rho, |u(x) - u(y)|)`` style updates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Iterable, Literal

from .errors import BudgetUnderflow, InfeasibleSeparation, NotOutsideHull, ValidationError
from .groups import FiniteGroup, Perm, left_regular_action
from .hull import in_hull, pair_classes
from .metrics import (
    MetricFunction,
    RationalMetric,
    dist_to_set,
    invariantize,
    is_invariant,
    is_isometry,
    lip_constant,
    validate_metric,
)

PairSet = Collection[tuple[int, int]]
Scheme = Literal["paper", "direct"]

_MAX_HALVINGS = 400
_BUDGET_FLOOR = Fraction(1, 10**300)


@dataclass(frozen=True)
class BumpResult:
    alpha: Fraction
    delta: Fraction
    u: MetricFunction
    lam: Fraction
    eps: Fraction  # after shrinking
    ball_a: frozenset[int]
    ball_b: frozenset[int]


def _ball(rho: RationalMetric, c: int, r: Fraction) -> frozenset[int]:
    return frozenset(y for y in range(rho.degree) if rho(c, y) <= r)


def lip_bump(
    rho: RationalMetric,
    a: int,
    b: int,
    K: PairSet,
    eps: Fraction,
    forbidden: Iterable[Fraction] = (),
) -> BumpResult:
    """Function ``u`` with Lip <= 1 + eps, ``|u(a') - u(b')| = alpha > rho(a', b')`` on
    the small balls around ``a`` and ``b``, and oscillation below ``alpha`` on ``K``.

    ``alpha`` avoids ``forbidden``; ``lam`` is the largest ``1 + 1/k`` that keeps
    the Lipschitz bound, which keeps the gap ``alpha - rho(a, b)`` linear in eps.
    """
    eps = Fraction(eps)
    K = set(K)
    forbidden = set(forbidden)
    if a == b:
        raise ValidationError("a and b must differ")
    if (a, b) in K:
        raise ValidationError("(a, b) must lie outside K")
    if not K:
        raise ValidationError("K must be nonempty")
    if any((y, x) not in K for x, y in K):
        raise ValidationError("K must be symmetric")
    if eps <= 0:
        raise ValidationError("eps must be positive")
    rab = rho(a, b)

    # shrink eps until the 2eps-balls around a, b avoid K and eps < min(1, rab)/4
    e = eps
    for _ in range(_MAX_HALVINGS):
        if e < min(Fraction(1), rab) / 4 and not any(
            rho(x, a) <= 2 * e and rho(y, b) <= 2 * e for x, y in K
        ):
            break
        e /= 2
    else:
        raise InfeasibleSeparation("no eps shrinking clears K from the balls")

    mu = rho.min_distance()
    delta = min(e, mu / 3) / 2
    for _ in range(_MAX_HALVINGS):
        c = rab - 2 * delta
        k_max = math.ceil(c / (2 * delta)) - 1  # 1 + 1/k > rab / c
        k_min = math.ceil((1 + delta) / (e - delta))  # (1 + 1/k)(1 + delta) <= 1 + e
        lam = None
        for k in range(max(k_min, 1), k_max + 1):
            if Fraction(k + 1, k) * c not in forbidden:
                lam = Fraction(k + 1, k)
                break
        if lam is not None:
            break
        delta /= 2
    else:
        raise InfeasibleSeparation("no admissible scaling found")

    A, B = _ball(rho, a, delta), _ball(rho, b, delta)
    dA, dB = dist_to_set(rho, A), dist_to_set(rho, B)
    u = MetricFunction(
        tuple(
            lam * (min(dA[y], c) - delta * min(dA[y], dB[y], c)) for y in range(rho.degree)
        )
    )
    result = BumpResult(lam * c, delta, u, lam, e, A, B)
    problems = bump_violations(result, rho, K, eps)
    if problems:
        raise InfeasibleSeparation("; ".join(problems))
    return result


def bump_violations(bump: BumpResult, rho: RationalMetric, K: PairSet, eps: Fraction) -> list[str]:
    """Which of the three bump properties fail; empty when all hold."""
    u, alpha = bump.u, bump.alpha
    out = []
    if lip_constant(u, rho) > 1 + eps or u.spread() > alpha:
        out.append("L1")
    if not all(abs(u[x] - u[y]) == alpha > rho(x, y) for x in bump.ball_a for y in bump.ball_b):
        out.append("L2")
    if not max(abs(u[x] - u[y]) for x, y in K) < alpha:
        out.append("L3")
    return out


def _oscillation_max(rho: RationalMetric, u: MetricFunction) -> RationalMetric:
    n = rho.degree
    return RationalMetric(
        tuple(
            tuple(max(rho(x, y), abs(u[x] - u[y])) for y in range(n)) for x in range(n)
        )
    )


def separate_pair_sets(
    rho: RationalMetric,
    K: PairSet,
    L: PairSet,
    eps: Fraction,
    forbidden: Iterable[Fraction] = (),
) -> RationalMetric:
    """Metric between ``rho`` and ``(1 + eps) rho`` with different maxima on ``K`` and ``L``."""
    K, L = set(K), set(L)
    if K & L:
        raise ValidationError("K and L must be disjoint")
    if any(x == y for x, y in L):
        raise ValidationError("L must be off-diagonal")
    sup_k = max(rho(x, y) for x, y in K)
    sup_l = max(rho(x, y) for x, y in L)
    if sup_k != sup_l:
        return rho
    a, b = min(L)
    bump = lip_bump(rho, a, b, K, eps, forbidden)
    return validate_metric(_oscillation_max(rho, bump.u).dist)


def class_values(rho: RationalMetric, classes) -> list[Fraction]:
    return [rho(*min(cls)) for cls in classes]


def separate_orbits(
    d0: RationalMetric,
    action,
    eps: Fraction,
    scheme: Scheme = "direct",
) -> RationalMetric:
    """Invariant metric within ``[d0, (1 + eps) d0]`` taking distinct values on
    distinct pair classes of ``action``. ``d0`` must be invariant."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValidationError("eps must be positive")
    if not is_invariant(d0, action):
        raise ValidationError("seed metric is not invariant under the action")
    classes = pair_classes(action).classes
    if len(classes) <= 1:
        return d0
    if scheme == "paper":
        rho = _separate_iterative(d0, action, classes, eps)
    elif scheme == "direct":
        rho = _separate_direct(d0, action, classes, eps)
    else:
        raise ValidationError(f"unknown scheme {scheme!r}")
    vals = class_values(rho, classes)
    if len(set(vals)) != len(vals):
        raise AssertionError("class values collide after separation")
    if not is_invariant(rho, action):
        raise AssertionError("separated metric is not invariant")
    return rho


def _separate_iterative(d0, action, classes, eps: Fraction) -> RationalMetric:
    N = len(classes) - 1

    def vals(d):
        return class_values(d, classes)

    def step(d, n, s_n):
        # resolve a clash of K_{n+1} against the earlier class it collides with
        v = vals(d)
        if v[n + 1] not in v[: n + 1]:
            return d
        s = v.index(v[n + 1])
        sep = separate_pair_sets(d, classes[s], classes[n + 1], s_n, forbidden=set(v))
        return invariantize(sep, action)

    s = [eps / 2]
    d = step(d0, 0, s[0])
    for n in range(1, N):
        v = vals(d)
        c_n = min(abs(v[j] - v[l]) for j, l in itertools.combinations(range(n + 1), 2))
        if c_n <= 0:
            raise AssertionError(f"classes collide at stage {n}")
        M = max([Fraction(1)] + v[: n + 2])
        s_n = min(s[-1], c_n) / (8 * M)
        prod = math.prod((1 + t for t in s), start=Fraction(1))
        while prod * (1 + s_n) >= 1 + eps:
            s_n /= 2
        if s_n < _BUDGET_FLOOR:
            raise BudgetUnderflow(f"budget collapsed at stage {n}")
        s.append(s_n)
        d = step(d, n, s_n)
    return d


def _separate_direct(d0, action, classes, eps: Fraction) -> RationalMetric:
    # d0 + eta * w with w in [1, 2) constant per class; w is itself a metric
    n_cls = len(classes)
    weights = [1 + Fraction(j, n_cls) for j in range(n_cls)]
    base = class_values(d0, classes)
    mu = d0.min_distance()
    k = 1
    while True:
        eta = eps * mu / (2 * k)
        v = [b + eta * w for b, w in zip(base, weights)]
        if len(set(v)) == n_cls:
            break
        k += 1
    cls_id = pair_classes(action).class_of
    n = d0.degree
    dist = tuple(
        tuple(
            d0(x, y) + (eta * weights[cls_id[x][y]] if x != y else 0) for y in range(n)
        )
        for x in range(n)
    )
    return validate_metric(dist)


def symmetry_witness(G: FiniteGroup, f: Perm) -> tuple[int, int] | None:
    """Smallest ordered pair ``(a, b)`` whose image under ``f`` leaves its pair class."""
    class_of = pair_classes(left_regular_action(G)).class_of
    for a, b in itertools.permutations(G, 2):
        if class_of[f[a]][f[b]] != class_of[a][b]:
            return a, b
    return None


def break_symmetry(d: RationalMetric, G: FiniteGroup, f: Perm, eps: Fraction) -> RationalMetric:
    """Left-invariant metric in ``[d, (1 + eps) d]`` for which ``f`` is not an isometry."""
    eps = Fraction(eps)
    L = left_regular_action(G)
    if in_hull(f, L):
        raise NotOutsideHull("f lies in the hull of the left translations")
    if not is_invariant(d, L):
        raise ValidationError("d must be left-invariant")
    if not is_isometry(f, d):
        return d
    a, b = symmetry_witness(G, f)
    pc = pair_classes(L)
    K = pc.classes[pc.class_of[a][b]]
    bump = lip_bump(d, f[a], f[b], K, eps, forbidden=d.values())
    u = bump.u
    n = d.degree
    osc = [
        [max(abs(u[p[x]] - u[p[y]]) for p in L.map) for y in range(n)] for x in range(n)
    ]
    rho = validate_metric([[max(d(x, y), osc[x][y]) for y in range(n)] for x in range(n)])
    if not rho(f[a], f[b]) > rho(a, b):
        raise AssertionError("symmetry not broken")
    return rho
