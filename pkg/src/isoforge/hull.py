"""Pair-orbit classes and the symmetrized 2-hull of a permutation action."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SearchBudgetExceeded
from .groups import FiniteGroup, GroupAction, Perm, compose, invert, is_bijection, left_regular_action
from .metrics import default_budget


@dataclass(frozen=True)
class PairOrbitPartition:
    degree: int
    class_of: tuple[tuple[int, ...], ...]  # -1 on the diagonal
    classes: tuple[frozenset[tuple[int, int]], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def representative(self, j: int) -> tuple[int, int]:
        return min(self.classes[j])


@dataclass(frozen=True)
class HullSet:
    maps: tuple[Perm, ...]
    closed: bool

    def __len__(self) -> int:
        return len(self.maps)

    def __contains__(self, f) -> bool:
        return tuple(f) in set(self.maps)


def pair_classes(action: GroupAction) -> PairOrbitPartition:
    """Orbits of ordered off-diagonal pairs under the diagonal action and the swap.
    Class ids follow the lexicographically smallest member."""
    n = action.degree
    class_of = [[-1] * n for _ in range(n)]
    classes = []
    for x, y in _lex_pairs(n):
        if class_of[x][y] != -1:
            continue
        cid = len(classes)
        members = set()
        for p in action.map:
            members.add((p[x], p[y]))
            members.add((p[y], p[x]))
        for a, b in members:
            class_of[a][b] = cid
        classes.append(frozenset(members))
    return PairOrbitPartition(n, tuple(tuple(r) for r in class_of), tuple(classes))


def _lex_pairs(n: int):
    for x in range(n):
        for y in range(n):
            if x != y:
                yield x, y


def _backtrack(n: int, class_of, candidates: list[list[int]], budget: int) -> list[Perm]:
    image = [-1] * n
    found: list[Perm] = []
    nodes = 0

    def extend(x: int) -> None:
        nonlocal nodes
        if x == n:
            found.append(tuple(image))
            return
        row = class_of[x]
        for y in candidates[x]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"hull search exceeded {budget} nodes")
            # a repeated image lands on the diagonal (class -1) and is rejected here
            if all(class_of[image[z]][y] == row[z] for z in range(x)):
                image[x] = y
                extend(x + 1)
        image[x] = -1

    extend(0)
    for f in found:
        if not is_bijection(f):
            raise AssertionError(f"hull member {f} is not a bijection")
    found.sort()
    return found


def symmetrized_hull(action: GroupAction, budget: int | None = None) -> HullSet:
    """All maps ``u`` with ``{u(x), u(y)} = {f(x), f(y)}`` for some ``f`` in the
    group, for every pair of points including ``x == y``."""
    budget = default_budget() if budget is None else budget
    pc = pair_classes(action)
    n = action.degree
    candidates = [sorted(action.orbit(x)) for x in range(n)]
    maps = _backtrack(n, pc.class_of, candidates, budget)
    return HullSet(tuple(maps), len(maps) == action.group.order)


def pairwise_hull(action: GroupAction, budget: int | None = None) -> HullSet:
    """Hull membership tested on distinct pairs only (no orbit condition)."""
    budget = default_budget() if budget is None else budget
    pc = pair_classes(action)
    n = action.degree
    maps = _backtrack(n, pc.class_of, [list(range(n))] * n, budget)
    return HullSet(tuple(maps), len(maps) == action.group.order)


def in_hull(f: Perm, action: GroupAction) -> bool:
    """Direct membership test of the full definition."""
    pc = pair_classes(action)
    n = action.degree
    if any(f[x] not in action.orbit(x) for x in range(n)):
        return False
    return all(pc.class_of[f[x]][f[y]] == pc.class_of[x][y] for x, y in itertools.combinations(range(n), 2))


def hull_at_identity(G: FiniteGroup, budget: int | None = None) -> HullSet:
    """Hull members of ``L(G)`` fixing the identity.

    Such a map sends each ``x`` to ``x`` or ``x^-1`` and swaps or fixes each
    inverse pair as a unit, so the search runs over one orientation bit per
    pair ``{x, x^-1}`` with ``x != x^-1``.
    """
    budget = default_budget() if budget is None else budget
    class_of = pair_classes(left_regular_action(G)).class_of
    fixed = [x for x in G if G.inv(x) == x]
    reps = [x for x in G if x < G.inv(x)]
    image = list(range(G.order))
    placed = list(fixed)
    found: list[Perm] = []
    nodes = 0

    def consistent(new: list[int]) -> bool:
        for a in new:
            row = class_of[a]
            for b in placed:
                if a != b and class_of[image[a]][image[b]] != row[b]:
                    return False
        return True

    def extend(k: int) -> None:
        nonlocal nodes
        if k == len(reps):
            found.append(tuple(image))
            return
        x = reps[k]
        xi = G.inv(x)
        for flip in (False, True):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"hull search exceeded {budget} nodes")
            image[x], image[xi] = (xi, x) if flip else (x, xi)
            placed.extend((x, xi))
            if consistent([x, xi]):
                extend(k + 1)
            del placed[-2:]
        image[x], image[xi] = x, xi

    extend(0)
    found.sort()
    return HullSet(tuple(found), len(found) == 1)


def is_hull_closed(action: GroupAction, budget: int | None = None) -> bool:
    return len(symmetrized_hull(action, budget)) == action.group.order


def is_closed_under_composition(maps) -> bool:
    s = set(maps)
    return all(compose(f, g) in s for f in s for g in s) and all(invert(f) in s for f in s)


def kappa(G: FiniteGroup) -> Perm:
    """Inversion ``x -> x^-1`` as a permutation of the elements."""
    return G.inverses

