"""Named small groups.

Grammar: ``trivial``, ``cyclic:n``, ``boolean:n``, ``abelian:n1,n2,...``,
``dihedral:n``, ``quaternion``, ``sym:n``, ``alt:n``, ``IS:n`` and
``double:<source>:<p-index>`` where ``<source>`` is a group file or a zoo name.
"""

from __future__ import annotations

import itertools
import os

from .doubling import BasePair, double
from .errors import UnknownName, ValidationError
from .groups import (
    FiniteGroup,
    GroupAction,
    group_from_cayley,
    group_from_generators,
    left_regular_action,
)

# curated census universe
ZOO_NAMES = (
    "trivial",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "cyclic:7",
    "cyclic:8",
    "boolean:2",
    "boolean:3",
    "abelian:2,4",
    "sym:3",
    "dihedral:4",
    "quaternion",
    "alt:4",
    "sym:4",
    "dihedral:6",
    "IS:1",
    "IS:2",
    "double:cyclic:4:2",
    "double:boolean:2:1",
)


def trivial() -> FiniteGroup:
    return FiniteGroup(((0,),), 0, "trivial")


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0, f"cyclic:{n}")


def abelian(*ns: int) -> FiniteGroup:
    """Direct product of cyclic groups; mixed-radix element indices."""
    elems = list(itertools.product(*(range(n) for n in ns)))
    index = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(index[tuple((a + b) % n for a, b, n in zip(x, y, ns))] for y in elems) for x in elems
    )
    return FiniteGroup(table, 0, "abelian:" + ",".join(map(str, ns)))


def boolean(n: int) -> FiniteGroup:
    """{-1,1}^n as bit vectors; bit ``i`` set means coordinate ``i+1`` is -1."""
    m = 1 << n
    return FiniteGroup(tuple(tuple(a ^ b for b in range(m)) for a in range(m)), 0, f"boolean:{n}")


_Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def quaternion() -> FiniteGroup:
    # unit products: index 0..3 = 1, i, j, k
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def split(a):
        return (1 if a % 2 == 0 else -1), a // 2

    def join(s, u):
        return 2 * u + (0 if s == 1 else 1)

    table = []
    for a in range(8):
        sa, ua = split(a)
        row = []
        for b in range(8):
            sb, ub = split(b)
            s, u = unit[(ua, ub)]
            row.append(join(sa * sb * s, u))
        table.append(row)
    return group_from_cayley(table, 0, "quaternion", _Q8_LABELS)


def _cycle(n: int, *pts: int) -> tuple[int, ...]:
    img = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        img[a] = b
    return tuple(img)


def sym_action(n: int) -> GroupAction:
    gens = [] if n < 2 else [_cycle(n, 0, 1)] + ([_cycle(n, *range(n))] if n > 2 else [])
    return group_from_generators(gens, n, f"sym:{n}")[1]


def alt_action(n: int) -> GroupAction:
    gens = [_cycle(n, i, i + 1, i + 2) for i in range(n - 2)]
    return group_from_generators(gens, n, f"alt:{n}")[1]


def dihedral_action(n: int) -> GroupAction:
    """Symmetries of the regular n-gon (order 2n), acting on its vertices."""
    if n < 3:
        raise ValidationError("dihedral:n needs n >= 3")
    rot = _cycle(n, *range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_generators([rot, ref], n, f"dihedral:{n}")[1]


def IS(n: int) -> FiniteGroup:
    """double(double(B(n), p(n)), p~(n)) with p(n) = (-1, 1, ..., 1)."""
    B = boolean(n)
    inner, ds = double(BasePair(B, 1))
    G, _ = double(BasePair(inner, ds.p_tilde), f"IS:{n}")
    return G


def _positive(text: str, name: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UnknownName(f"bad integer in {name!r}") from None
    if n < 1:
        raise UnknownName(f"parameter must be positive in {name!r}")
    return n


def zoo(name: str) -> FiniteGroup:
    """Build a named group."""
    if name.startswith("double:"):
        rest = name[len("double:"):]
        source, sep, p = rest.rpartition(":")
        if not sep or not source:
            raise UnknownName(f"expected double:<source>:<p-index>, got {name!r}")
        if os.path.exists(source):
            from .io import read_group

            H = read_group(source)
        else:
            H = zoo(source)
        try:
            pi = int(p)
        except ValueError:
            raise UnknownName(f"bad p-index in {name!r}") from None
        G, _ = double(BasePair(H, pi), name)
        return G
    head, _, arg = name.partition(":")
    if head == "trivial" and not arg:
        return trivial()
    if head == "quaternion" and not arg:
        return quaternion()
    if not arg:
        raise UnknownName(f"unknown group {name!r}")
    if head == "abelian":
        ns = [_positive(t, name) for t in arg.split(",")]
        return abelian(*ns)
    n = _positive(arg, name)
    if head == "cyclic":
        return cyclic(n)
    if head == "boolean":
        return boolean(n)
    if head == "IS":
        return IS(n)
    if head in ("sym", "alt", "dihedral"):
        return zoo_action(name).group
    raise UnknownName(f"unknown group {name!r}")


def zoo_action(name: str) -> GroupAction:
    """The natural permutation action where one exists, else the left regular one."""
    head, _, arg = name.partition(":")
    if head in ("sym", "alt", "dihedral") and arg:
        n = _positive(arg, name)
        if head == "sym":
            return sym_action(n)
        if head == "alt":
            if n < 3:
                raise UnknownName("alt:n needs n >= 3")
            return alt_action(n)
        return dihedral_action(n)
    return left_regular_action(zoo(name))


def curated_zoo() -> dict[str, FiniteGroup]:
    return {name: zoo(name) for name in ZOO_NAMES}
