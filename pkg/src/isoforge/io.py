"""Plain-text group, action and metric files.

Group: ``group <name> <order>``, ``identity <i>``, then one Cayley-table row per
element. Action: ``action <group-source> <degree>``, then one row per group
element. Metric: ``metric <degree>``, then the strict upper triangle row by
row. Lines starting with ``#`` are ignored; rationals are ``p/q`` in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .errors import ValidationError
from .groups import FiniteGroup, GroupAction, group_from_cayley, make_action
from .metrics import RationalMetric, validate_metric


def _lines(text: str) -> Iterator[list[str]]:
    for raw in text.splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            yield s.split()


def _header(lines: Iterator[list[str]], keyword: str) -> list[str]:
    try:
        head = next(lines)
    except StopIteration:
        raise ValidationError(f"empty file, expected '{keyword}' header") from None
    if head[0] != keyword:
        raise ValidationError(f"expected '{keyword}' header, got {head[0]!r}")
    return head


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ValidationError(f"not an integer: {tok!r}") from None


def _rows(lines: Iterator[list[str]], count: int, width: int) -> list[list[int]]:
    rows = []
    for toks in lines:
        if len(toks) != width:
            raise ValidationError(f"row {len(rows)} has {len(toks)} entries, expected {width}")
        rows.append([_int(t) for t in toks])
    if len(rows) != count:
        raise ValidationError(f"expected {count} rows, got {len(rows)}")
    return rows


def format_rational(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rational(tok: str) -> Fraction:
    if "." in tok or "e" in tok.lower():
        raise ValidationError(f"floats are not accepted: {tok!r}")
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational: {tok!r}") from None


def parse_group(text: str) -> FiniteGroup:
    lines = _lines(text)
    head = _header(lines, "group")
    if len(head) != 3:
        raise ValidationError("header must be 'group <name> <order>'")
    name, order = head[1], _int(head[2])
    ident = _header(lines, "identity")
    if len(ident) != 2:
        raise ValidationError("expected 'identity <index>'")
    table = _rows(lines, order, order)
    return group_from_cayley(table, identity=_int(ident[1]), name=name)


def format_group(G: FiniteGroup) -> str:
    name = "_".join((G.name or "G").split())
    out = [f"group {name} {G.order}", f"identity {G.identity}"]
    out += [" ".join(map(str, row)) for row in G.table]
    return "\n".join(out) + "\n"


def read_group(path: str | Path) -> FiniteGroup:
    return parse_group(Path(path).read_text(encoding="utf-8"))


def write_group(G: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(format_group(G), encoding="utf-8")


def load_group(source: str, base: Path | None = None) -> FiniteGroup:
    """``zoo:<name>`` or a group file path (relative paths resolve against ``base``)."""
    if source.startswith("zoo:"):
        from .zoo import zoo

        return zoo(source[4:])
    p = Path(source)
    if base is not None and not p.is_absolute():
        p = base / p
    return read_group(p)


def parse_action(text: str, base: Path | None = None) -> GroupAction:
    lines = _lines(text)
    head = _header(lines, "action")
    if len(head) != 3:
        raise ValidationError("header must be 'action <group-file> <degree>'")
    G = load_group(head[1], base)
    rows = _rows(lines, G.order, _int(head[2]))
    return make_action(G, rows)


def format_action(action: GroupAction, group_source: str) -> str:
    out = [f"action {group_source} {action.degree}"]
    out += [" ".join(map(str, row)) for row in action.map]
    return "\n".join(out) + "\n"


def read_action(path: str | Path) -> GroupAction:
    p = Path(path)
    return parse_action(p.read_text(encoding="utf-8"), p.parent)


def load_action(source: str) -> GroupAction:
    """``zoo:<name>`` gives the natural action of a zoo group; otherwise an action file."""
    if source.startswith("zoo:"):
        from .zoo import zoo_action

        return zoo_action(source[4:])
    return read_action(source)


def parse_metric(text: str) -> RationalMetric:
    lines = _lines(text)
    head = _header(lines, "metric")
    if len(head) != 2:
        raise ValidationError("header must be 'metric <degree>'")
    n = _int(head[1])
    vals = [parse_rational(t) for toks in lines for t in toks]
    if len(vals) != n * (n - 1) // 2:
        raise ValidationError(f"expected {n * (n - 1) // 2} upper-triangle entries, got {len(vals)}")
    dist = [[Fraction(0)] * n for _ in range(n)]
    it = iter(vals)
    for x in range(n):
        for y in range(x + 1, n):
            dist[x][y] = dist[y][x] = next(it)
    return validate_metric(dist)


def format_metric(d: RationalMetric) -> str:
    n = d.degree
    out = [f"metric {n}"]
    out += [" ".join(format_rational(d(x, y)) for y in range(x + 1, n)) for x in range(n - 1)]
    return "\n".join(out) + "\n"


def read_metric(path: str | Path) -> RationalMetric:
    return parse_metric(Path(path).read_text(encoding="utf-8"))


def write_metric(d: RationalMetric, path: str | Path) -> None:
    Path(path).write_text(format_metric(d), encoding="utf-8")
