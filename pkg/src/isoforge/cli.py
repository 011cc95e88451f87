"""Command-line entry point. Every report line is ``key=value``."""

from __future__ import annotations

import argparse
import contextlib
import io as _stdio
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import io
from .classify import classify, iso_singular_census
from .errors import IsoforgeError, SearchError, ValidationError
from .groups import left_regular_action, right_regular_action
from .hull import in_hull, symmetrized_hull
from .metrics import discrete_metric, is_isometry, isometries
from .perturb import break_symmetry
from .rigidify import (
    RigidityReport,
    abelian_rigid,
    density_trial,
    disjoint_union_rigid,
    product_rigid,
    rigid_metric,
)
from .zoo import ZOO_NAMES, zoo

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report: str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def _fraction(tok: str) -> Fraction:
    try:
        v = io.parse_rational(tok)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_int(tok: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {tok!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isoforge", description="Isometry groups of finite metric spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help: str, *flags: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        for f in flags:
            if f == "group":
                sp.add_argument("--group", required=True, help="zoo:<name> or group file")
            elif f == "action":
                sp.add_argument("--action", required=True, help="zoo:<name> or action file")
            elif f == "metric":
                sp.add_argument("--metric", help="metric file")
            elif f == "rigid":
                sp.add_argument("--epsilon", type=_fraction, default=Fraction(1, 10))
                sp.add_argument("--scheme", choices=("paper", "direct"), default="direct")
                sp.add_argument("--verify", action=argparse.BooleanOptionalAction, default=None)
                sp.add_argument("--out", help="write the metric here")
        sp.add_argument("--budget", type=_nonneg_int, help="search node budget")
        return sp

    add("classify", "three-way case of a group", "group")
    hp = add("hull", "symmetrized hull of an action")
    src = hp.add_mutually_exclusive_group(required=True)
    src.add_argument("--action")
    src.add_argument("--group", help="use the left regular action")
    rp = add("rigidify", "metric realizing the hull of an action", "action", "rigid")
    rp.add_argument("--metric", help="seed metric file")
    vp = add("verify", "isometry group of a metric file")
    vp.add_argument("--metric", required=True)
    vp.add_argument("--expect-order", type=_nonneg_int)
    vp.add_argument("--action", help="compare against the hull of this action")
    zp = add("zoo", "list zoo groups or export one")
    zp.add_argument("--group")
    zp.add_argument("--out")
    pp = add("product-rigid", "free action on G x {1..m}", "group", "rigid")
    pp.add_argument("--points", type=_nonneg_int, required=True, help="number of copies m")
    add("union-rigid", "action on X disjoint-union G", "action", "rigid")
    add("abelian-rigid", "regular action of an abelian group", "group", "rigid")
    dp = add("density", "share of random metrics with trivial isometry group")
    dp.add_argument("--points", type=_nonneg_int, default=5)
    dp.add_argument("--trials", type=_nonneg_int, default=500)
    dp.add_argument("--seed", type=int, default=0)
    dp.add_argument("--epsilon", type=_fraction, default=Fraction(1, 10))
    add("census", "case of every zoo group")
    bp = add("break-symmetry", "left-invariant metric with a non-isometric right translation", "group", "metric")
    bp.add_argument("--epsilon", type=_fraction, default=Fraction(1, 10))
    bp.add_argument("--out")
    return p


def _b(v: bool) -> str:
    return "true" if v else "false"


def _corridor(c: tuple[Fraction, Fraction]) -> str:
    return f"{io.format_rational(c[0])},{io.format_rational(c[1])}"


def _emit_metric(out: list[str], metric, path: str | None) -> None:
    if path:
        io.write_metric(metric, path)
        out.append(f"metric_file={path}")
    else:
        out.append(io.format_metric(metric).rstrip("\n"))


def _rigidity_lines(rep: RigidityReport, out: list[str], path: str | None) -> None:
    out += [
        f"order={rep.realized_group_order}",
        f"group_order={rep.action.group.order}",
        f"exact={_b(rep.exact)}",
        f"corridor={_corridor(rep.corridor)}",
        f"verified={_b(rep.verified)}",
    ]
    _emit_metric(out, rep.metric, path)


def _free(action) -> bool:
    G = action.group
    return all(action.map[g][x] != x for g in G if g != G.identity for x in range(action.degree))


def _dispatch(args, out: list[str]) -> int:
    cmd = args.command
    if cmd == "classify":
        G = io.load_group(args.group)
        c = classify(G)
        out += [
            f"case={c.case}",
            f"order={G.order}",
            f"hull_e={len(c.hull_e)}",
            f"kappa_in_hull={_b(c.kappa_in_hull)}",
        ]
    elif cmd == "hull":
        action = io.load_action(args.action) if args.action else left_regular_action(io.load_group(args.group))
        h = symmetrized_hull(action)
        out += [f"order={len(h)}", f"group_order={action.group.order}", f"closed={_b(h.closed)}"]
        out += ["map=" + " ".join(map(str, f)) for f in h.maps]
    elif cmd == "rigidify":
        action = io.load_action(args.action)
        seed = io.read_metric(args.metric) if args.metric else None
        rep = rigid_metric(action, seed, args.epsilon, args.scheme, args.verify)
        _rigidity_lines(rep, out, args.out)
    elif cmd == "verify":
        d = io.read_metric(args.metric)
        found = isometries(d)
        out.append(f"order={len(found)}")
        code = EXIT_OK
        if args.action:
            h = symmetrized_hull(io.load_action(args.action))
            match = set(found) == set(h.maps)
            out.append(f"hull_match={_b(match)}")
            code = code if match else EXIT_INVALID
        if args.expect_order is not None:
            ok = len(found) == args.expect_order
            out.append(f"expected={args.expect_order}")
            if not ok:
                out.append(f"mismatch=expected {args.expect_order} got {len(found)}")
                code = EXIT_INVALID
        return code
    elif cmd == "zoo":
        if args.group:
            G = io.load_group(args.group)
            if args.out:
                io.write_group(G, args.out)
                out.append(f"group_file={args.out}")
            else:
                out.append(io.format_group(G).rstrip("\n"))
        else:
            out += [f"name={n} order={zoo(n).order}" for n in ZOO_NAMES]
    elif cmd == "product-rigid":
        rep, action = product_rigid(io.load_group(args.group), args.points, args.epsilon, args.verify, args.scheme)
        out.append(f"free={_b(_free(action))}")
        _rigidity_lines(rep, out, args.out)
    elif cmd == "union-rigid":
        rep = disjoint_union_rigid(io.load_action(args.action), args.epsilon, args.verify, args.scheme)
        _rigidity_lines(rep, out, args.out)
    elif cmd == "abelian-rigid":
        rep = abelian_rigid(io.load_group(args.group), args.epsilon, args.verify, args.scheme)
        _rigidity_lines(rep, out, args.out)
    elif cmd == "density":
        r = density_trial(args.points, args.trials, args.seed, args.epsilon)
        out += [
            f"fraction={io.format_rational(r.fraction)}",
            f"trivial={r.trivial}",
            f"trials={r.trials}",
            "orders=" + ",".join(f"{k}:{v}" for k, v in r.orders.items()),
            f"perturbed_trivial={_b(r.perturbed_all_trivial)}",
        ]
    elif cmd == "census":
        groups = {n: zoo(n) for n in ZOO_NAMES}
        rep = iso_singular_census(groups)
        out += [f"case.{n}={c}" for n, c in rep.cases.items()]
        out += [
            "iso_singular=" + ",".join(rep.iso_singular),
            f"exponent_four={_b(rep.exponent_four)}",
            f"same_order_isomorphic={_b(rep.same_order_isomorphic)}",
            f"is_orders={_b(rep.is_orders_ok)}",
        ]
    elif cmd == "break-symmetry":
        G = io.load_group(args.group)
        L = left_regular_action(G)
        d = io.read_metric(args.metric) if args.metric else discrete_metric(G.order)
        f = next((p for p in right_regular_action(G).map if not in_hull(p, L)), None)
        if f is None:
            out.append("witness=none")
            raise ValidationError("every right translation lies in the hull")
        rho = break_symmetry(d, G, f, args.epsilon)
        out += [
            "witness=" + " ".join(map(str, f)),
            f"isometry={_b(is_isometry(f, rho))}",
        ]
        _emit_metric(out, rho, args.out)
    return EXIT_OK


@contextlib.contextmanager
def _budget_env(budget: int | None):
    if budget is None:
        yield
        return
    old = os.environ.get("ISOFORGE_BUDGET")
    os.environ["ISOFORGE_BUDGET"] = str(budget)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("ISOFORGE_BUDGET", None)
        else:
            os.environ["ISOFORGE_BUDGET"] = old


def run(argv: Sequence[str]) -> CommandOutcome:
    out: list[str] = []
    try:
        with contextlib.redirect_stderr(_stdio.StringIO()):
            args = build_parser().parse_args(list(argv))
    except _UsageError as e:
        return CommandOutcome(EXIT_USAGE, f"error=usage: {e}\n")
    except SystemExit as e:  # --help
        return CommandOutcome(EXIT_OK if not e.code else EXIT_USAGE, "")
    try:
        with _budget_env(args.budget):
            code = _dispatch(args, out)
    except SearchError as e:
        out.append(f"error=budget: {e}")
        code = EXIT_BUDGET
    except (IsoforgeError, OSError) as e:
        out.append(f"error={type(e).__name__}: {e}")
        code = EXIT_INVALID
    return CommandOutcome(code, "\n".join(out) + "\n" if out else "")


def main(argv: Sequence[str] | None = None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(outcome.report)
    return outcome.exit_code
