from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from isoforge.cli import run
from isoforge.errors import ValidationError
from isoforge.io import (
    format_action, format_group, format_metric, format_rational, parse_group, parse_metric,
    parse_rational, read_action, write_group,
)
from isoforge.groups import left_regular_action
from isoforge.zoo import zoo

from conftest import path_metric


def _kv(report: str) -> dict[str, str]:
    return dict(line.split("=", 1) for line in report.splitlines() if "=" in line)


@given(st.fractions(min_value=0).filter(lambda f: f.denominator < 10**6))
def test_rational_roundtrip(v):
    assert parse_rational(format_rational(v)) == v


def test_rational_rejects_floats():
    with pytest.raises(ValidationError):
        parse_rational("0.5")
    assert format_rational(Fraction(6, 4)) == "3/2" and format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("name", ["quaternion", "sym:3", "IS:1"])
def test_group_roundtrip(name):
    G = zoo(name)
    H = parse_group("# comment\n" + format_group(G))
    assert H.table == G.table and H.identity == G.identity


def test_group_parse_errors():
    with pytest.raises(ValidationError):
        parse_group("group g 2\nidentity 0\n0 1\n")
    with pytest.raises(ValidationError):
        parse_group("grp g 1\nidentity 0\n0\n")


@given(st.integers(1, 7), st.integers(0, 10**6))
def test_metric_roundtrip(n, seed):
    d = path_metric(n, random.Random(seed)) if n > 1 else parse_metric("metric 1\n")
    assert parse_metric(format_metric(d)) == d


def test_action_file_relative_group(tmp_path):
    G = zoo("sym:3")
    write_group(G, tmp_path / "s3.grp")
    (tmp_path / "l.act").write_text(format_action(left_regular_action(G), "s3.grp"))
    A = read_action(tmp_path / "l.act")
    assert A.map == left_regular_action(G).map


def test_cli_classify_quaternion():
    out = run(["classify", "--group", "zoo:quaternion"])
    assert out.exit_code == 0
    kv = _kv(out.report)
    assert kv["case"] == "C" and kv["hull_e"] == "8" and kv["kappa_in_hull"] == "true"


def test_cli_rigidify_verify_roundtrip(tmp_path):
    G = zoo("sym:3")
    write_group(G, tmp_path / "s3.grp")
    (tmp_path / "l.act").write_text(format_action(left_regular_action(G), "s3.grp"))
    m = tmp_path / "m.txt"
    out = run(["rigidify", "--action", str(tmp_path / "l.act"), "--epsilon", "1/10",
               "--scheme", "paper", "--verify", "--out", str(m)])
    kv = _kv(out.report)
    assert out.exit_code == 0 and kv["order"] == "6" and kv["exact"] == "true" and kv["verified"] == "true"
    again = run(["verify", "--metric", str(m), "--expect-order", "6", "--action", str(tmp_path / "l.act")])
    assert again.exit_code == 0 and _kv(again.report)["hull_match"] == "true"
    # byte-identical on rerun
    m2 = tmp_path / "m2.txt"
    run(["rigidify", "--action", str(tmp_path / "l.act"), "--scheme", "paper", "--out", str(m2)])
    assert m.read_bytes() == m2.read_bytes()


def test_cli_verify_two_points_mismatch(tmp_path):
    p = tmp_path / "two.txt"
    p.write_text("metric 2\n5/3\n")
    out = run(["verify", "--metric", str(p), "--expect-order", "1"])
    assert out.exit_code == 1 and _kv(out.report)["order"] == "2"


def test_cli_exit_codes(tmp_path):
    assert run(["nonsense"]).exit_code == 3
    assert run(["rigidify", "--action", "zoo:sym:3", "--epsilon", "0.1"]).exit_code == 3
    assert run(["classify"]).exit_code == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("metric 3\n1 1\n3\n")
    assert run(["verify", "--metric", str(bad)]).exit_code == 1
    assert run(["classify", "--group", "zoo:nosuch"]).exit_code == 1
    assert run(["rigidify", "--action", "zoo:sym:4", "--budget", "3"]).exit_code == 2


def test_cli_density_and_census_deterministic():
    a = run(["density", "--points", "5", "--trials", "30", "--seed", "4"])
    b = run(["density", "--points", "5", "--trials", "30", "--seed", "4"])
    assert a == b and a.exit_code == 0 and "fraction" in _kv(a.report)
    c = run(["census"])
    kv = _kv(c.report)
    assert kv["case.IS:2"] == "C" and kv["exponent_four"] == "true"


def test_cli_constructions():
    kv = _kv(run(["product-rigid", "--group", "zoo:cyclic:2", "--points", "3"]).report)
    assert kv["order"] == "2" and kv["free"] == "true"
    kv = _kv(run(["union-rigid", "--action", "zoo:sym:3"]).report)
    assert kv["order"] == "6"
    kv = _kv(run(["abelian-rigid", "--group", "zoo:cyclic:4"]).report)
    assert kv["order"] == "8" and kv["exact"] == "false"
    kv = _kv(run(["hull", "--group", "zoo:quaternion"]).report)
    assert kv["order"] == "64" and kv["closed"] == "false"
    out = run(["break-symmetry", "--group", "zoo:dihedral:4"])
    assert out.exit_code == 0 and _kv(out.report)["isometry"] == "false"
    assert run(["break-symmetry", "--group", "zoo:quaternion"]).exit_code == 1
    assert "order=24" in run(["zoo"]).report
