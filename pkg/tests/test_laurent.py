from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from conftest import fr, small_rats
from ramlab.laurent import (
    Impossible,
    LaurentVal,
    NotUnit,
    RadiusInterval,
    Side,
    gauss_val,
    pth_root_shrink,
    spectral_value,
    sup_val,
    unit_decompose,
)
from ramlab.valgroup import INF, DomainError, GammaVal

laurents = st.dictionaries(st.integers(-4, 4), small_rats, min_size=1, max_size=5).map(LaurentVal)
sides = st.sampled_from([Side.INNER, Side.OUTER])
I01 = RadiusInterval(0, 1)


def test_gauss_examples():
    assert gauss_val(LaurentVal({2: 0, 0: 2}), 0, Side.INNER) == GammaVal(0, 2)
    assert gauss_val(LaurentVal({1: 0}), F(1, 2), Side.INNER) == GammaVal(F(1, 2), 1)
    assert gauss_val(LaurentVal({0: 1, 1: 0}), 1, Side.INNER) == GammaVal(1, 0)
    # on the outer side the tie breaks the other way
    assert gauss_val(LaurentVal({0: 1, 1: 0}), 1, Side.OUTER) == GammaVal(1, -1)
    assert gauss_val(LaurentVal(), 0) is INF


def test_sup_examples():
    assert sup_val(LaurentVal({1: 0}), I01) == 0
    assert sup_val(LaurentVal({-1: 1}), I01) == 0
    assert sup_val(LaurentVal(), I01) is INF


def test_spectral_examples():
    rho, n = F(2, 3), 4
    assert spectral_value([(n, GammaVal(rho, 1))]) == GammaVal(rho / n, F(1, n))
    assert spectral_value([(1, GammaVal(0, 1)), (2, GammaVal(2, 0))]) == GammaVal(0, 1)
    assert spectral_value([]) is INF
    assert spectral_value([(1, INF), (2, GammaVal(2, 2))]) == GammaVal(1, 1)
    with pytest.raises(ValueError):
        spectral_value([(0, GammaVal())])


def test_unit_decompose_examples():
    d = unit_decompose(LaurentVal({3: 0}), I01)
    assert (d.n, d.c, d.h) == (3, 0, LaurentVal())
    d = unit_decompose(LaurentVal({1: 0, 0: 2}), I01)
    assert (d.n, d.c, d.h) == (1, 0, LaurentVal({-1: 2}))
    with pytest.raises(NotUnit):
        unit_decompose(LaurentVal({1: 0, 0: 0}), I01)
    with pytest.raises(NotUnit):
        # dominant monomial switches inside the annulus
        unit_decompose(LaurentVal({0: F(1, 2), 1: 0}), I01)


def test_shrink_examples():
    assert pth_root_shrink(LaurentVal(), I01, 3) == (0, False)
    assert pth_root_shrink(LaurentVal({-1: 1}), I01, 3) == (F(1, 2), True)
    with pytest.raises(Impossible):
        pth_root_shrink(LaurentVal({0: F(1, 4)}), I01, 3)
    with pytest.raises(Impossible):
        # would need to shrink past the middle
        pth_root_shrink(LaurentVal({-1: 0}), I01, 2)
    assert pth_root_shrink(LaurentVal({1: 5, -1: 5}), I01, 2) == (0, False)


def test_interval_validation():
    with pytest.raises(DomainError):
        RadiusInterval(1, 0)
    assert RadiusInterval(1, 3).half_width == 1


def test_tropical_product_and_sum():
    f, g = LaurentVal({0: 1, 1: 0}), LaurentVal({0: 0, -1: 2})
    assert f * g == LaurentVal({1: 0, 0: 1, -1: 3})
    assert f + g == LaurentVal({1: 0, 0: 0, -1: 2})
    with pytest.raises(ValueError):
        LaurentVal([(1, 0), (1, 2)])


@given(laurents)
def test_json_round_trip(f):
    assert LaurentVal.from_json(f.to_json()) == f


@given(laurents, laurents, small_rats, sides)
def test_multiplicative_generic(f, g, rho, side):
    s = side.value
    vals = sorted(GammaVal(a + b + (i + j) * rho, s * (i + j)) for i, a in f.terms for j, b in g.terms)
    assume(len(vals) < 2 or vals[0] != vals[1])
    assert gauss_val(f * g, rho, side) == gauss_val(f, rho, side) + gauss_val(g, rho, side)


@given(laurents, small_rats, small_rats)
def test_sup_is_min_over_circles(f, a, b):
    lo, hi = min(a, b), max(a, b)
    iv = RadiusInterval(lo, hi)
    # a PL concave function of rho: minimum at an endpoint, so any interior circle is not smaller
    mid = (lo + hi) / 2
    assert sup_val(f, iv) <= sup_val(f, RadiusInterval(mid, mid))
    assert sup_val(f, iv) == min(sup_val(f, RadiusInterval(lo, lo)), sup_val(f, RadiusInterval(hi, hi)))


@given(laurents, small_rats)
def test_inner_outer_share_flat_part(f, rho):
    assert gauss_val(f, rho, Side.INNER).flat == gauss_val(f, rho, Side.OUTER).flat


@given(laurents, fr(0, 2, 4), fr(0, 2, 4), st.sampled_from([2, 3, 5]))
def test_shrink_is_tight(h, lo, width, p):
    h = LaurentVal({k: v for k, v in h.terms if k != 0})
    iv = RadiusInterval(lo, lo + width)
    try:
        sigma, strict = pth_root_shrink(h, iv, p)
    except Impossible:
        return
    t = F(1, p - 1)
    eps = F(1, 1000) * (iv.half_width - sigma) if iv.half_width > sigma else 0
    if not strict:
        assert sup_val(h, iv) > t
    elif eps:
        assert sup_val(h, RadiusInterval(lo + sigma + eps, lo + width - sigma - eps)) > t
        assert not sup_val(h, RadiusInterval(lo + sigma, lo + width - sigma)) > t
