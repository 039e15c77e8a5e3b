"""Acceptance gate: one test per criterion, each timed against its limit.

Every test prints a single ``ACCEPTANCE #k PASS|FAIL`` line (visible with
``pytest -s`` or in the terminal summary) and fails on a wrong result or an
exceeded time budget.
"""
import math
import os
import random
import time
from fractions import Fraction as F

import pytest

from ramlab import checks
from ramlab.conductor import delta_from_profile, profile_kummer_char, profile_LQ, swan_at
from ramlab.plfun import pl_breakpoints, pl_eventual_slope
from ramlab.ramify import ClassFun, delta_value, jumps_lower, phi_upper, ram_from_kummer, swan_nat

SEED = int(os.environ.get("RAMLAB_SEED", "0"))
LINES = []


def rng(k):
    return random.Random(f"acceptance:{SEED}:{k}")


@pytest.fixture
def gate(capsys):
    def run(num, name, limit, body):
        t0 = time.perf_counter()
        problems = body()
        elapsed = time.perf_counter() - t0
        if elapsed >= limit:
            problems = list(problems) + [f"took {elapsed:.2f}s, limit {limit}s"]
        status = "FAIL" if problems else "PASS"
        line = f"ACCEPTANCE #{num:<2} {status} {name} ({elapsed:.2f}s, limit {limit}s)"
        if problems:
            line += ": " + "; ".join(map(str, problems[:3]))
        LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert not problems, line
    return run


def _suite(result):
    return [] if result.passed else [f"{result.name}: {result.detail}"]


def test_01_kummer_wild_fixture(gate):
    def body():
        bad = []
        for p in (2, 3, 5):
            for rho in (F(0), F(1, 2), F(3)):
                rp = ram_from_kummer(p, p, rho)
                jumps = jumps_lower(rp)
                if len(jumps) != 1:
                    bad.append(f"p={p}: jumps {jumps}")
                    continue
                if phi_upper(rp, jumps[0]).flat != F(p, p - 1):
                    bad.append(f"p={p} rho={rho}: {phi_upper(rp, jumps[0])}")
        return bad
    gate(1, "kummer wild fixture: upper jump flat part p/(p-1)", 1, body)


def test_02_swan_vanishing_for_kummer(gate):
    def body():
        bad = []
        for p in (2, 3, 5, 7):
            for n in range(1, 25):
                if swan_nat(ram_from_kummer(n, p)) != ClassFun.zero(ram_from_kummer(n, p).group):
                    bad.append(f"swan_nat n={n} p={p}")
            for j in range(4):
                pr = profile_kummer_char(p, j)
                for rho in checks.rational_grid(40, 8):
                    if swan_at(pr, rho) != 0:
                        bad.append(f"swan_at p={p} j={j} rho={rho}")
        return bad
    gate(2, "swan vanishing for Kummer sheaves", 1, body)


# (p, nq, mq) -> (breakpoints, slopes) for l = 1; zero until 1/(q(p-1)), then slope n
SCHEDULES = {
    (3, 1, 1): ([F(1, 2)], [0, 1]),
    (3, 1, 2): ([F(1)], [0, 1]),
    (5, 3, 1): ([F(1, 12)], [0, 3]),
    (3, 2, 3): ([F(3, 4)], [0, 2]),
}


def test_03_delta_schedule(gate):
    def body():
        bad = []
        for (p, nq, mq), (bps, slopes) in SCHEDULES.items():
            for l in (1, 2, 3):
                d = delta_from_profile(profile_LQ(nq, mq, p, l))
                if pl_breakpoints(d) != bps or d.slopes() != [l * s for s in slopes] or d(0) != 0:
                    bad.append(f"q={nq}/{mq} p={p} l={l}: {d}")
                if pl_eventual_slope(d) != l * nq:
                    bad.append(f"eventual slope q={nq}/{mq} l={l}")
        return bad
    gate(3, "delta schedule of the model sheaves", 1, body)


def test_04_convexity_and_monotone_swan(gate):
    gate(4, "convexity and monotone Swan conductor", 10,
         lambda: _suite(checks.check_profiles(rng(4), trials=200)))


def test_05_beta_oracle(gate):
    gate(5, "break function against eventual slopes of f_qc", 30,
         lambda: _suite(checks.check_beta(rng(5), trials=200)))


def test_06_fuehrer_cross_check(gate):
    def body():
        bad = _suite(checks.check_fuehrer_oracle(max_n=12))
        for p in (2, 3, 5):
            for rho in (F(0), F(1, 2), F(1), F(2)):
                if delta_value(ram_from_kummer(p, p, rho)) != p:
                    bad.append(f"n=p={p} rho={rho}")
                for n in range(1, 13):
                    if math.gcd(n, p) == 1 and delta_value(ram_from_kummer(n, p, rho)) != 0:
                        bad.append(f"tame n={n} p={p}")
        return bad
    gate(6, "Fuehrer cross-check against the discriminant oracle", 1, body)


def test_07_break_decomposition(gate):
    def body():
        settings = {(k, ell) for k, _, ell in checks.BREAK_SETTINGS}
        if settings != {(2, 3), (2, 5), (4, 3), (4, 5), (3, 5), (9, 5)}:
            return [f"unexpected settings {settings}"]
        return _suite(checks.check_breakdec(rng(7), trials=100, max_dim=6))
    gate(7, "break decomposition suite", 60, body)


def test_08_tensor_rule(gate):
    def body():
        return (_suite(checks.check_tensor_breaks(rng(8), trials=100))
                + _suite(checks.check_tensor_profiles(rng(80), trials=100)))
    gate(8, "tensor rule for breaks and profiles", 30, body)


def test_09_gauss_valuation_properties(gate):
    def body():
        return (_suite(checks.check_gauss_multiplicative(rng(9), trials=1000))
                + _suite(checks.check_ultrametric(rng(90), trials=1000)))
    gate(9, "Gauss valuation multiplicativity and strict ultrametric", 10, body)


def test_10_riemann_step(gate):
    gate(10, "unit decomposition and p-th root shrink vs exact scan", 5,
         lambda: _suite(checks.check_riemann_step(rng(10), trials=50)))


def test_summary():
    if not LINES:
        pytest.skip("no criteria ran in this session")
    print("\n" + "\n".join(LINES))
    assert all(" PASS " in line for line in LINES)
