"""The doubling construction ``H x_p {-1, 1}`` and its recognition.

Carrier convention: index ``i < |H|`` is ``(h_i, 1)`` and index ``|H| + i`` is
``(h_i, -1)``, so the copy of ``H`` is always the first half of the table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidBasePair, ValidationError
from .groups import (
    FiniteGroup,
    Perm,
    compose,
    find_isomorphism,
    index2_subgroups,
    invert,
    is_automorphism,
    left_regular_action,
)


@dataclass(frozen=True)
class BasePair:
    """An abelian group with a distinguished involution ``p``."""

    group: FiniteGroup
    p: int

    def __post_init__(self):
        H = self.group
        if not H.is_abelian():
            raise InvalidBasePair("base group must be abelian")
        if not 0 <= self.p < H.order:
            raise InvalidBasePair(f"p={self.p} out of range")
        if self.p == H.identity:
            raise InvalidBasePair("p must differ from the identity")
        if H.square(self.p) != H.identity:
            raise InvalidBasePair("p must be an involution")


@dataclass(frozen=True)
class DoubleStructure:
    """A witness that ``whole`` is a double: abelian index-2 ``subgroup`` with
    every outside element squaring to ``p_tilde``."""

    whole: FiniteGroup
    subgroup: frozenset[int]
    p_tilde: int

    def __post_init__(self):
        G, K, q = self.whole, self.subgroup, self.p_tilde
        if 2 * len(K) != G.order or not G.is_subgroup(K):
            raise ValidationError("subgroup must have index 2")
        if any(G.mul(a, b) != G.mul(b, a) for a in K for b in K):
            raise ValidationError("subgroup must be abelian")
        if q == G.identity or G.square(q) != G.identity:
            raise ValidationError("p_tilde must be an involution")
        if any(G.square(x) != q for x in G if x not in K):
            raise ValidationError("outside elements must square to p_tilde")

    def base_pair(self) -> BasePair:
        """The base pair ``(K, q)`` with ``whole`` isomorphic to its double."""
        K, members = self.whole.subgroup(self.subgroup)
        return BasePair(K, members.index(self.p_tilde))

    def outside(self) -> list[int]:
        return [x for x in self.whole if x not in self.subgroup]


def double(bp: BasePair, name: str = "") -> tuple[FiniteGroup, DoubleStructure]:
    H, p = bp.group, bp.p
    n = H.order

    def mul(a: int, b: int) -> int:
        x, j = (a, 1) if a < n else (a - n, -1)
        y, k = (b, 1) if b < n else (b - n, -1)
        if j == 1:
            z = H.mul(x, y)
        elif k == 1:
            z = H.mul(x, H.inv(y))
        else:
            z = H.mul(H.mul(x, H.inv(y)), p)
        return z if j * k == 1 else z + n

    table = tuple(tuple(mul(a, b) for b in range(2 * n)) for a in range(2 * n))
    labels = None
    if H.labels:
        labels = tuple(f"({l},1)" for l in H.labels) + tuple(f"({l},-1)" for l in H.labels)
    G = FiniteGroup(table, H.identity, name or f"double({H.name or 'H'})", labels)
    return G, DoubleStructure(G, frozenset(range(n)), p)


def recognize_double(G: FiniteGroup) -> DoubleStructure | None:
    """First index-2 abelian subgroup with a constant nontrivial involutive
    outside square, or ``None``."""
    for K in index2_subgroups(G):
        if any(G.mul(a, b) != G.mul(b, a) for a in K for b in K):
            continue
        outside_squares = {G.square(x) for x in G if x not in K}
        if len(outside_squares) != 1:
            continue
        (q,) = outside_squares
        if q != G.identity and G.square(q) == G.identity:
            return DoubleStructure(G, K, q)
    return None


def phi_automorphism(ds: DoubleStructure) -> Perm:
    """Fix the subgroup pointwise, send outside ``z`` to ``z * p_tilde``."""
    G = ds.whole
    phi = tuple(x if x in ds.subgroup else G.mul(x, ds.p_tilde) for x in G)
    if not is_automorphism(G, phi):
        raise AssertionError("phi is not an automorphism")
    L = left_regular_action(G).map
    phi_inv = invert(phi)
    for a in G:
        if compose(compose(phi, L[a]), phi_inv) != L[phi[a]]:
            raise AssertionError(f"conjugation law fails at {a}")
    return phi


def base_pair_isomorphic(a: BasePair, b: BasePair) -> bool:
    return find_isomorphism(a.group, b.group, pinned={a.p: b.p}) is not None


def boolean_inner_structure(ds: DoubleStructure) -> DoubleStructure | None:
    """For ``ds.subgroup`` with squares inside ``{e, p_tilde}``: its structure as a
    double of the Boolean subgroup ``{x : x^2 = e}``. ``None`` otherwise."""
    G, q = ds.whole, ds.p_tilde
    K = ds.subgroup
    if not {G.square(x) for x in K} <= {G.identity, q}:
        return None
    Kg, members = G.subgroup(K)
    Z = frozenset(i for i in Kg if Kg.square(i) == Kg.identity)
    if 2 * len(Z) != Kg.order:
        return None
    try:
        return DoubleStructure(Kg, Z, members.index(q))
    except ValidationError:
        return None
