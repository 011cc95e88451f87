"""Finite groups as Cayley tables, permutation actions and isomorphism search.

Elements are opaque indices ``0..order-1``. Permutations are plain tuples of
point images; ``compose(f, g)`` is ``f o g`` (apply ``g`` first), which is also
the product convention used for every permutation group built here, so that
``map[g*h][x] == map[g][map[h][x]]``.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotEffective,
    NotHomomorphism,
    NotLatinSquare,
    OrderLimitExceeded,
    ValidationError,
)

Perm = tuple[int, ...]

DEFAULT_CLOSURE_CAP = 20000
DEFAULT_ISO_CAP = 200


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(f: Perm, g: Perm) -> Perm:
    """``f o g``: first ``g``, then ``f``."""
    return tuple(f[x] for x in g)


def invert(f: Perm) -> Perm:
    inv = [0] * len(f)
    for x, y in enumerate(f):
        inv[y] = x
    return tuple(inv)


def is_bijection(f: Sequence[int]) -> bool:
    return sorted(f) == list(range(len(f)))


@dataclass(frozen=True)
class FiniteGroup:
    """A group given by its Cayley table; ``table[g][h]`` is ``g*h``."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self):
        return iter(range(len(self.table)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def square(self, a: int) -> int:
        return self.table[a][a]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def is_abelian(self) -> bool:
        t = np.asarray(self.table)
        return bool((t == t.T).all())

    def is_boolean(self) -> bool:
        return all(self.square(a) == self.identity for a in self)

    def center(self) -> frozenset[int]:
        t = np.asarray(self.table)
        return frozenset(int(a) for a in np.flatnonzero((t == t.T).all(axis=1)))

    def squares(self) -> frozenset[int]:
        return frozenset(self.square(a) for a in self)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        """The subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.table[a][self.inv(b)] in s for a in s for b in s)

    def subgroup(self, elems: Iterable[int], name: str = "") -> tuple["FiniteGroup", tuple[int, ...]]:
        """Restrict to a subgroup; returns the group and the embedding (new -> old index)."""
        members = tuple(sorted(set(elems)))
        pos = {g: i for i, g in enumerate(members)}
        try:
            table = tuple(tuple(pos[self.table[a][b]] for b in members) for a in members)
        except KeyError:
            raise ValidationError("element set is not closed under the product") from None
        labels = tuple(self.label(g) for g in members) if self.labels else None
        return FiniteGroup(table, pos[self.identity], name, labels), members


def _check_shape(table: Sequence[Sequence[int]]) -> np.ndarray:
    n = len(table)
    if n == 0:
        raise ValidationError("empty Cayley table")
    if any(len(row) != n for row in table):
        raise ValidationError("Cayley table is not square")
    t = np.asarray(table, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        raise ValidationError("Cayley table entry out of range")
    return t


def group_from_cayley(
    table: Sequence[Sequence[int]],
    identity: int = 0,
    name: str = "",
    labels: Sequence[str] | None = None,
) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a ``FiniteGroup``.

    Checks run in the order identity, Latin square, associativity, inverses;
    the raised error names the first offending element or triple.
    """
    t = _check_shape(table)
    n = t.shape[0]
    if not 0 <= identity < n:
        raise NoIdentity(f"identity index {identity} out of range")
    idx = np.arange(n)
    bad_row = np.flatnonzero(t[identity] != idx)
    bad_col = np.flatnonzero(t[:, identity] != idx)
    if bad_row.size or bad_col.size:
        x = int(min(np.concatenate([bad_row, bad_col])))
        raise NoIdentity(f"{identity} is not an identity: fails at element {x}")
    for g in range(n):
        if len(set(t[g].tolist())) != n:
            raise NotLatinSquare(f"row {g} repeats an entry")
        if len(set(t[:, g].tolist())) != n:
            raise NotLatinSquare(f"column {g} repeats an entry")
    # (ab)c == a(bc), vectorised over all triples
    left = t[t[:, :, None], idx[None, None, :]]  # left[a,b,c] = (ab)c
    right = t[idx[:, None, None], t[None, :, :]]  # right[a,b,c] = a(bc)
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    for g in range(n):
        row = np.flatnonzero(t[g] == identity)
        if not row.size or t[int(row[0]), g] != identity:
            raise NoInverse(f"element {g} has no two-sided inverse")
    return FiniteGroup(
        tuple(tuple(int(v) for v in row) for row in t),
        identity,
        name,
        tuple(labels) if labels is not None else None,
    )


def validate_group(g: FiniteGroup) -> None:
    """Re-assert all group axioms on an existing table."""
    group_from_cayley(g.table, g.identity)


@dataclass(frozen=True)
class GroupAction:
    """``map[g][x]`` is ``g.x``."""

    group: FiniteGroup
    map: tuple[Perm, ...]

    @property
    def degree(self) -> int:
        return len(self.map[0]) if self.map else 0

    def act(self, g: int, x: int) -> int:
        return self.map[g][x]

    def perms(self) -> list[Perm]:
        return list(self.map)

    @cached_property
    def orbits(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        out = []
        for x in range(self.degree):
            if x in seen:
                continue
            orb = frozenset(p[x] for p in self.map)
            seen |= orb
            out.append(orb)
        return tuple(out)

    def orbit(self, x: int) -> frozenset[int]:
        for orb in self.orbits:
            if x in orb:
                return orb
        raise IndexError(x)

    def is_transitive(self) -> bool:
        return len(self.orbits) <= 1

    def stabilizer(self, x: int) -> frozenset[int]:
        return frozenset(g for g in self.group if self.map[g][x] == x)


def make_action(group: FiniteGroup, rows: Sequence[Sequence[int]]) -> GroupAction:
    """Validate an action table; non-effective input is rejected, never quotiented."""
    if len(rows) != group.order:
        raise ValidationError(f"action has {len(rows)} rows, group has order {group.order}")
    m = tuple(tuple(int(v) for v in r) for r in rows)
    degree = len(m[0])
    for g, row in enumerate(m):
        if len(row) != degree or not is_bijection(row):
            raise ValidationError(f"row {g} of the action is not a permutation")
    if m[group.identity] != identity_perm(degree):
        raise NotHomomorphism("identity does not act trivially")
    a = np.asarray(m, dtype=np.int64)
    t = np.asarray(group.table, dtype=np.int64)
    # a[g*h] == a[g][a[h]]
    lhs = a[t]  # [g,h,x]
    rhs = a[np.arange(group.order)[:, None, None], a[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        g, h, x = (int(v) for v in bad[0])
        raise NotHomomorphism(f"(g*h).x != g.(h.x) at g={g}, h={h}, x={x}")
    ident = identity_perm(degree)
    for g, row in enumerate(m):
        if g != group.identity and row == ident:
            raise NotEffective(f"element {g} acts trivially")
    return GroupAction(group, m)


def left_regular_action(G: FiniteGroup) -> GroupAction:
    """L(G): x -> a x."""
    return GroupAction(G, tuple(tuple(row) for row in G.table))


def right_regular_action(G: FiniteGroup) -> GroupAction:
    """x -> x a^{-1}; a left action by right translations."""
    return GroupAction(G, tuple(tuple(G.mul(x, G.inv(a)) for x in G) for a in G))


def group_from_permutations(
    perms: Iterable[Perm], name: str = "", cap: int = DEFAULT_CLOSURE_CAP
) -> tuple[FiniteGroup, GroupAction]:
    """Tabulate a set of permutations that is already closed; order as given."""
    perms = list(perms)
    if len(perms) > cap:
        raise OrderLimitExceeded(f"{len(perms)} elements exceed cap {cap}")
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ValidationError("duplicate permutations")
    try:
        table = tuple(tuple(index[compose(f, g)] for g in perms) for f in perms)
    except KeyError:
        raise ValidationError("permutation set is not closed under composition") from None
    degree = len(perms[0])
    G = FiniteGroup(table, index[identity_perm(degree)], name)
    return G, GroupAction(G, tuple(perms))


def group_from_generators(
    gens: Sequence[Perm], degree: int, name: str = "", cap: int = DEFAULT_CLOSURE_CAP
) -> tuple[FiniteGroup, GroupAction]:
    """Close ``gens`` under composition; elements in breadth-first discovery order."""
    gens = [tuple(s) for s in gens]
    for s in gens:
        if len(s) != degree or not is_bijection(s):
            raise ValidationError(f"generator {s} is not a permutation of {degree} points")
    e = identity_perm(degree)
    found = [e]
    seen = {e}
    queue = deque([e])
    while queue:
        f = queue.popleft()
        for s in gens:
            h = compose(s, f)
            if h not in seen:
                seen.add(h)
                found.append(h)
                if len(found) > cap:
                    raise OrderLimitExceeded(f"closure exceeds cap {cap}")
                queue.append(h)
    return group_from_permutations(found, name, cap)


@dataclass(frozen=True)
class StructureReport:
    abelian: bool
    boolean: bool
    exponent: int
    center: frozenset[int]
    squares: frozenset[int]


def structure_report(G: FiniteGroup) -> StructureReport:
    exponent = 1
    for k in G.element_orders:
        exponent = exponent * k // _gcd(exponent, k)
    return StructureReport(
        abelian=G.is_abelian(),
        boolean=G.is_boolean(),
        exponent=exponent,
        center=G.center(),
        squares=G.squares(),
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def index2_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups of index exactly 2, sorted by their sorted element tuples.

    Every such subgroup contains the subgroup ``N`` generated by all squares,
    and ``G/N`` is Boolean; index-2 subgroups are the kernels of the nonzero
    functionals on ``G/N`` viewed as a vector space over GF(2).
    """
    if G.order % 2:
        return []
    N = G.generated(G.squares())
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for g in G:
        if g in coset_of:
            continue
        cid = len(reps)
        reps.append(g)
        for n in N:
            coset_of[G.mul(g, n)] = cid
    # coordinates of cosets over a greedily chosen basis
    vec = {coset_of[G.identity]: 0}
    basis = 0
    for r in reps:
        c = coset_of[r]
        if c in vec:
            continue
        bit = 1 << basis
        basis += 1
        for c0, v0 in list(vec.items()):
            vec[coset_of[G.mul(reps[c0], r)]] = v0 | bit
    out = []
    for phi in range(1, 1 << basis):
        K = frozenset(g for g in G if bin(vec[coset_of[g]] & phi).count("1") % 2 == 0)
        out.append(K)
    return sorted(out, key=lambda s: tuple(sorted(s)))


def _fingerprint(G: FiniteGroup) -> tuple:
    return (
        G.order,
        tuple(sorted(Counter(G.element_orders).items())),
        len(G.center()),
        len(G.squares()),
    )


def generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generating set, preferring elements of large order."""
    gens: list[int] = []
    H = frozenset([G.identity])
    for g in sorted(G, key=lambda a: (-G.element_orders[a], a)):
        if g not in H:
            gens.append(g)
            H = G.generated(gens)
            if len(H) == G.order:
                break
    return gens


def find_isomorphism(
    G: FiniteGroup,
    H: FiniteGroup,
    pinned: dict[int, int] | None = None,
    cap: int = DEFAULT_ISO_CAP,
) -> dict[int, int] | None:
    """An isomorphism ``G -> H`` as an element map, or ``None``.

    ``pinned`` forces the images of some elements. Backtracks over images of a
    greedy generating set, closing the partial map after each choice so that
    inconsistencies are caught as early as possible. The first map found in
    index order of candidate images is returned.
    """
    if max(G.order, H.order) > cap:
        raise OrderLimitExceeded(f"isomorphism search above order {cap}")
    if _fingerprint(G) != _fingerprint(H):
        return None
    pinned = dict(pinned or {})
    for g, h in pinned.items():
        if G.element_orders[g] != H.element_orders[h]:
            return None
    gens = generating_set(G)
    zG, zH = G.center(), H.center()
    candidates = [
        [h for h in H if H.element_orders[h] == G.element_orders[s] and ((s in zG) == (h in zH))]
        for s in gens
    ]

    def close(images: list[int]) -> dict[int, int] | None:
        # extend gens[:k] -> images to the generated subgroup
        phi = {G.identity: H.identity}
        used = {H.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, t in zip(gens, images):
                    y = G.mul(x, s)
                    img = H.mul(phi[x], t)
                    if y in phi:
                        if phi[y] != img:
                            return None
                    else:
                        if img in used:
                            return None
                        phi[y] = img
                        used.add(img)
                        nxt.append(y)
            frontier = nxt
        for g, h in pinned.items():
            if g in phi and phi[g] != h:
                return None
        return phi

    def search(images: list[int]) -> dict[int, int] | None:
        k = len(images)
        if k == len(gens):
            phi = close(images)
            if phi is None or len(phi) != G.order:
                return None
            for a, b in itertools.product(G, repeat=2):
                if phi[G.mul(a, b)] != H.mul(phi[a], phi[b]):
                    return None
            return phi
        for h in candidates[k]:
            if close(images + [h]) is not None:
                found = search(images + [h])
                if found is not None:
                    return found
        return None

    if not gens:  # trivial groups
        phi = {G.identity: H.identity}
        return phi if all(phi.get(g) == h for g, h in pinned.items()) else None
    return search([])


def is_automorphism(G: FiniteGroup, f: Sequence[int]) -> bool:
    if not is_bijection(f):
        return False
    return all(f[G.mul(a, b)] == G.mul(f[a], f[b]) for a in G for b in G)
