import random
from fractions import Fraction as F

import pytest

from ramlab import checks
from ramlab.laurent import LaurentVal, RadiusInterval
from ramlab.ramify import delta_value, ram_from_kummer


@pytest.mark.parametrize("n, p, want", [(1, 2, 0), (2, 2, 2), (4, 2, 8), (6, 2, 6), (8, 2, 24),
                                        (9, 3, 18), (12, 3, 12), (5, 5, 5), (10, 5, 10), (7, 3, 0)])
def test_fuehrer_oracle_values(n, p, want):
    for rho in (F(0), F(1, 2), F(2)):
        assert checks.fuehrer_oracle(n, p, rho) == want
        assert delta_value(ram_from_kummer(n, p, rho)) == want


def test_shrink_oracle_examples():
    I = RadiusInterval(0, 1)
    assert checks.shrink_oracle(LaurentVal(), I, 3) == (0, False)
    assert checks.shrink_oracle(LaurentVal({-1: 1}), I, 3) == (F(1, 2), True)
    assert checks.shrink_oracle(LaurentVal({0: F(1, 4)}), I, 3) == "impossible"
    assert checks.shrink_oracle(LaurentVal({-1: 0}), I, 2) == "impossible"
    assert checks.shrink_oracle(LaurentVal({1: 0}), RadiusInterval(2, 2), 2) == (0, False)
    assert checks.shrink_oracle(LaurentVal({1: -2}), RadiusInterval(2, 2), 2) == "impossible"


def test_possible_sum_respects_strict_inequality():
    rng = random.Random(0)
    f, g = LaurentVal({0: 1, 2: 0}), LaurentVal({0: 1, 1: 3})
    for _ in range(50):
        h = checks.possible_sum(f, g, rng)
        assert h.as_dict()[2] == 0 and h.as_dict()[1] == 3
        assert h.as_dict().get(0, 99) >= 1


def test_ultrametric_suite_detects_a_wrong_sum(monkeypatch):
    # negative control: a "sum" that always lowers valuations must be caught
    monkeypatch.setattr(checks, "possible_sum",
                        lambda f, g, rng: LaurentVal({k: v - 1 for k, v in (f + g).terms}))
    assert not checks.check_ultrametric(random.Random(1), trials=50).passed


def test_riemann_suite_detects_a_wrong_shrink(monkeypatch):
    from ramlab import laurent
    real = laurent.pth_root_shrink
    monkeypatch.setattr(checks, "pth_root_shrink", lambda h, iv, p: (real(h, iv, p)[0] + 1, True))
    assert not checks.check_riemann_step(random.Random(2), trials=50).passed


def test_rational_grid():
    assert checks.rational_grid(4, 3) == [0, 1, 2, 3]


@pytest.mark.parametrize("seed", [1, 2])
def test_quick_suites_pass(seed):
    fast = [n for n in checks.SUITES if n not in ("beta", "breakdec")]
    results = checks.run_all(seed, fast)
    assert [r.name.split(".")[0] for r in results]
    assert all(r.passed for r in results), [r.to_json() for r in results if not r.passed]


def test_run_all_is_reproducible():
    a = [r.to_json() for r in checks.run_all(3, ["plfun", "riemann_step"])]
    b = [r.to_json() for r in checks.run_all(3, ["riemann_step", "plfun"])]
    assert a == b
