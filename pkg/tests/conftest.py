from __future__ import annotations

import itertools
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

from isoforge.metrics import RationalMetric, validate_metric

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_ZOO = ["trivial", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:6", "boolean:2", "abelian:2,4",
             "sym:3", "dihedral:4", "quaternion", "alt:4", "IS:1", "double:boolean:2:1"]


def brute_hull(action) -> set:
    """Every permutation satisfying the hull definition literally: for all x, y
    (including x == y) some group element agrees with u on {x, y} as a set."""
    n = action.degree
    out = set()
    for u in itertools.permutations(range(n)):
        if all(
            any({u[x], u[y]} == {p[x], p[y]} for p in action.map)
            for x in range(n) for y in range(x, n)
        ):
            out.add(u)
    return out


def band_metric(n: int, rng: random.Random, den: int = 12) -> RationalMetric:
    """Random values in [1, 2); any such matrix is a metric."""
    d = [[Fraction(0)] * n for _ in range(n)]
    for x, y in itertools.combinations(range(n), 2):
        d[x][y] = d[y][x] = Fraction(rng.randrange(den, 2 * den), den)
    return validate_metric(d)


def path_metric(n: int, rng: random.Random) -> RationalMetric:
    """Shortest paths of a random complete weighted graph; spread-out values."""
    w = [[Fraction(0)] * n for _ in range(n)]
    for x, y in itertools.combinations(range(n), 2):
        w[x][y] = w[y][x] = Fraction(rng.randrange(1, 40), rng.randrange(1, 6))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if w[i][k] + w[k][j] < w[i][j]:
                    w[i][j] = w[i][k] + w[k][j]
    return validate_metric(w)


def check_bump(rho, a, b, K, eps, bump):
    """(L1)-(L3) evaluated from the raw definitions."""
    u, alpha, n = bump.u, bump.alpha, rho.degree
    lip = max(abs(u[x] - u[y]) / rho(x, y) for x in range(n) for y in range(n) if x != y)
    l1 = lip <= 1 + eps and max(u.values) - min(u.values) <= alpha
    Ba = [x for x in range(n) if rho(a, x) <= bump.delta]
    Bb = [y for y in range(n) if rho(b, y) <= bump.delta]
    l2 = all(abs(u[x] - u[y]) == alpha and alpha > rho(x, y) for x in Ba for y in Bb)
    l3 = max(abs(u[x] - u[y]) for x, y in K) < alpha
    return l1, l2, l3


def random_bump_case(rng: random.Random):
    n = rng.randint(3, 8)
    rho = path_metric(n, rng) if rng.random() < 0.5 else band_metric(n, rng, rng.choice([4, 12, 60]))
    a, b = rng.sample(range(n), 2)
    others = [(x, y) for x in range(n) for y in range(n) if x < y and {x, y} != {a, b}]
    picked = rng.sample(others, rng.randint(1, min(4, len(others))))
    K = {(x, y) for x, y in picked} | {(y, x) for x, y in picked}
    eps = Fraction(1, rng.choice([2, 3, 10, 100, 1000]))
    forbidden = {rho(x, y) for x, y in rho.pairs()}
    return rho, a, b, K, eps, forbidden


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
