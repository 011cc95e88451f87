"""Exact rational metrics on ``{0..n-1}`` and the isometry-group oracle.

No floating point anywhere: equality of distance values decides which pairs
may be swapped by an isometry.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    AsymmetricEntry,
    NegativeOrZeroOffDiagonal,
    NonzeroDiagonal,
    SearchBudgetExceeded,
    TriangleViolation,
    ValidationError,
)
from .groups import FiniteGroup, GroupAction, Perm, group_from_permutations

DEFAULT_BUDGET = 10**7

Rational = Union[Fraction, int]


def default_budget() -> int:
    env = os.environ.get("ISOFORGE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class RationalMetric:
    dist: tuple[tuple[Fraction, ...], ...]

    @property
    def degree(self) -> int:
        return len(self.dist)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    def pairs(self) -> Iterable[tuple[int, int]]:
        """Unordered off-diagonal pairs ``x < y``."""
        return itertools.combinations(range(self.degree), 2)

    def values(self) -> set[Fraction]:
        return {self.dist[x][y] for x, y in self.pairs()}

    def min_distance(self) -> Fraction:
        return min((self.dist[x][y] for x, y in self.pairs()), default=Fraction(0))

    def __le__(self, other: "RationalMetric") -> bool:
        return all(a <= b for r, s in zip(self.dist, other.dist) for a, b in zip(r, s))

    def scaled(self, c: Rational) -> "RationalMetric":
        return RationalMetric(tuple(tuple(v * c for v in row) for row in self.dist))


@dataclass(frozen=True)
class MetricFunction:
    """A real-valued (rational) function on the points."""

    values: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def spread(self) -> Fraction:
        return max(self.values) - min(self.values) if self.values else Fraction(0)


def validate_metric(matrix: Sequence[Sequence[Rational]]) -> RationalMetric:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValidationError("distance matrix is not square")
    d = tuple(tuple(Fraction(v) for v in row) for row in matrix)
    for x in range(n):
        if d[x][x] != 0:
            raise NonzeroDiagonal(f"d({x},{x}) = {d[x][x]}")
    for x, y in itertools.combinations(range(n), 2):
        if d[x][y] != d[y][x]:
            raise AsymmetricEntry(f"d({x},{y}) = {d[x][y]} but d({y},{x}) = {d[y][x]}")
        if d[x][y] <= 0:
            raise NegativeOrZeroOffDiagonal(f"d({x},{y}) = {d[x][y]}")
    for x, z in itertools.combinations(range(n), 2):
        for y in range(n):
            if d[x][z] > d[x][y] + d[y][z]:
                raise TriangleViolation(
                    f"triangle ({x},{z},{y}): {d[x][z]} > {d[x][y]} + {d[y][z]}"
                )
    return RationalMetric(d)


def discrete_metric(n: int) -> RationalMetric:
    one, zero = Fraction(1), Fraction(0)
    return RationalMetric(tuple(tuple(zero if x == y else one for y in range(n)) for x in range(n)))


def word_metric(G: FiniteGroup, gens: Sequence[int]) -> RationalMetric:
    """Left-invariant word metric ``d(x, y) = |x^-1 y|`` for a symmetric closure of ``gens``."""
    S = set(gens) | {G.inv(s) for s in gens}
    length = {G.identity: 0}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in S:
            y = G.mul(x, s)
            if y not in length:
                length[y] = length[x] + 1
                queue.append(y)
    if len(length) != G.order:
        raise ValidationError("elements do not generate the group")
    return RationalMetric(
        tuple(tuple(Fraction(length[G.mul(G.inv(x), y)]) for y in G) for x in G)
    )


def metric_from_length(G: FiniteGroup, length: Sequence[Rational]) -> RationalMetric:
    """``d(x, y) = length[x^-1 y]``; validated."""
    return validate_metric([[length[G.mul(G.inv(x), y)] for y in G] for x in G])


def lip_constant(f: Union[MetricFunction, Sequence[int]], d: RationalMetric) -> Fraction:
    """Exact Lipschitz constant of a real function or a self-map (a permutation)."""
    n = d.degree
    if n < 2:
        return Fraction(0)
    if isinstance(f, MetricFunction):
        if f.degree != n:
            raise ValidationError("degree mismatch")
        return max(abs(f[x] - f[y]) / d(x, y) for x, y in d.pairs())
    if len(f) != n:
        raise ValidationError("degree mismatch")
    return max(d(f[x], f[y]) / d(x, y) for x, y in d.pairs())


def kuratowski(d: RationalMetric, b: int) -> MetricFunction:
    return MetricFunction(d.dist[b])


def dist_to_set(d: RationalMetric, A: Iterable[int]) -> MetricFunction:
    A = list(A)
    return MetricFunction(tuple(min(d(y, a) for a in A) for y in range(d.degree)))


def invariantize(rho: RationalMetric, action: GroupAction) -> RationalMetric:
    """Pointwise max over all translates ``(g.x, g.y)``."""
    if rho.degree != action.degree:
        raise ValidationError("degree mismatch")
    n = rho.degree
    out = [[Fraction(0)] * n for _ in range(n)]
    for x, y in itertools.combinations(range(n), 2):
        v = max(rho.dist[p[x]][p[y]] for p in action.map)
        out[x][y] = out[y][x] = v
    return RationalMetric(tuple(tuple(r) for r in out))


def is_invariant(rho: RationalMetric, action: GroupAction) -> bool:
    return all(
        rho.dist[p[x]][p[y]] == rho.dist[x][y] for p in action.map for x, y in rho.pairs()
    )


def lambda_distance(rho1: RationalMetric, rho2: RationalMetric, d: RationalMetric) -> Fraction:
    """Least ``C`` with ``|rho1 - rho2| <= C d``."""
    if not rho1.degree == rho2.degree == d.degree:
        raise ValidationError("degree mismatch")
    return max((abs(rho1(x, y) - rho2(x, y)) / d(x, y) for x, y in d.pairs()), default=Fraction(0))


def is_isometry(f: Sequence[int], d: RationalMetric) -> bool:
    return all(d(f[x], f[y]) == d(x, y) for x, y in d.pairs())


def refine_colors(d: RationalMetric) -> list[int]:
    """Stable point colouring by iterated (distance, neighbour colour) multisets."""
    n = d.degree
    sig = [tuple(sorted(d.dist[x])) for x in range(n)]
    colors = _relabel(sig)
    while True:
        sig = [
            (colors[x], tuple(sorted((d.dist[x][y], colors[y]) for y in range(n))))
            for x in range(n)
        ]
        new = _relabel(sig)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _relabel(sig: list) -> list[int]:
    keys = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [keys[s] for s in sig]


def isometries(d: RationalMetric, budget: int | None = None) -> list[Perm]:
    """All isometries, sorted. Colour refinement plus backtracking in colour classes."""
    budget = default_budget() if budget is None else budget
    n = d.degree
    if n == 0:
        return [()]
    colors = refine_colors(d)
    by_color: dict[int, list[int]] = {}
    for x, c in enumerate(colors):
        by_color.setdefault(c, []).append(x)
    # place small colour classes first: they branch least
    order = sorted(range(n), key=lambda x: (len(by_color[colors[x]]), colors[x], x))
    dist = d.dist
    image = [-1] * n
    used = [False] * n
    found: list[Perm] = []
    nodes = 0

    def extend(k: int) -> None:
        nonlocal nodes
        if k == n:
            found.append(tuple(image))
            return
        x = order[k]
        row = dist[x]
        for y in by_color[colors[x]]:
            if used[y]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"isometry search exceeded {budget} nodes")
            drow = dist[y]
            if all(drow[image[order[j]]] == row[order[j]] for j in range(k)):
                image[x] = y
                used[y] = True
                extend(k + 1)
                used[y] = False
                image[x] = -1

    extend(0)
    found.sort()
    return found


def naive_isometries(d: RationalMetric) -> list[Perm]:
    """Filter all n! permutations. Oracle for the pruned search; small n only."""
    return sorted(p for p in itertools.permutations(range(d.degree)) if is_isometry(p, d))


def isometry_group(d: RationalMetric, budget: int | None = None) -> tuple[FiniteGroup, GroupAction]:
    perms = isometries(d, budget)
    return group_from_permutations(perms, "Iso")
