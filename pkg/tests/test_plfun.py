from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import fr
from ramlab.conductor import delta_LQ
from ramlab.plfun import (
    PLFun,
    emit_plot_csv,
    pl_add,
    pl_breakpoints,
    pl_eval,
    pl_eventual_slope,
    pl_is_convex,
    pl_left_slope,
    pl_max,
    pl_right_slope,
    plot_rows,
)



@st.composite
def plfuns(draw):
    n = draw(st.integers(0, 4))
    gaps = draw(st.lists(fr(F(1, 6), 3, 6), min_size=n, max_size=n))
    slopes = draw(st.lists(fr(-3, 3, 4), min_size=n + 1, max_size=n + 1))
    xs, acc = [], F(0)
    for g in gaps:
        acc += g
        xs.append(acc)
    return PLFun(draw(fr(-3, 3, 4)), list(zip(xs, slopes)), slopes[-1])


def test_eval_examples():
    d = delta_LQ(1, 1, 3)
    assert pl_eval(d, F(3, 2)) == 1
    assert pl_eval(PLFun(), F(17, 3)) == 0
    assert pl_eval(PLFun.linear(2, -1), 2) == 0


def test_max_of_lines():
    m = pl_max(PLFun.constant(1), PLFun.linear(0, 1))
    assert pl_breakpoints(m) == [1]
    assert m.slopes() == [0, 1]


def test_slopes_at_break():
    d = delta_LQ(1, 1, 3)
    assert pl_right_slope(d, F(1, 2)) == 1
    assert pl_left_slope(d, F(1, 2)) == 0


def test_convexity_examples():
    for nq, mq, p in [(1, 1, 3), (1, 2, 3), (3, 1, 5), (2, 3, 3), (9, 2, 3), (4, 1, 2)]:
        assert pl_is_convex(delta_LQ(nq, mq, p))
    assert not pl_is_convex(PLFun(0, [(1, 1)], 0))


def test_canonical_form_merges_equal_slopes():
    assert PLFun(0, [(1, 2), (3, 2)], 2) == PLFun.linear(0, 2)
    assert PLFun(1, [(1, 0)], 0) == PLFun.constant(1)


def test_invalid_breakpoints():
    with pytest.raises(ValueError):
        PLFun(0, [(2, 1), (1, 0)], 0)
    with pytest.raises(ValueError):
        PLFun(0, [(0, 1)], 0)


def test_shift():
    f = PLFun(0, [(F(1, 2), 0)], 1)
    assert f.shift(1) == PLFun(0, [(F(3, 2), 0)], 1)
    assert f.shift(0) == f


def test_plot_rows():
    assert plot_rows(delta_LQ(1, 1, 3)) == [(0, 0), (F(1, 2), 0), (F(3, 2), 1)]
    assert plot_rows(PLFun()) == [(0, 0), (1, 0)]
    assert plot_rows(PLFun.constant(F(3, 2))) == [(0, F(3, 2)), (1, F(3, 2))]


def test_emit_csv(tmp_path):
    path = tmp_path / "d.csv"
    text = emit_plot_csv(delta_LQ(1, 1, 3), path)
    assert text == "x,y\n0,0\n1/2,0\n3/2,1\n"
    assert path.read_text() == text


@given(plfuns(), plfuns(), fr(0, 10, 7))
def test_pointwise_operations(f, g, x):
    assert pl_add(f, g)(x) == f(x) + g(x)
    assert pl_max(f, g)(x) == max(f(x), g(x))
    assert f.scale(F(-2, 3))(x) == F(-2, 3) * f(x)


@given(plfuns(), plfuns())
def test_convexity_closed(f, g):
    if f.is_convex() and g.is_convex():
        assert (f + g).is_convex()
        assert pl_max(f, g).is_convex()


@given(plfuns(), fr(0, 10, 7))
def test_slopes_consistent(f, x):
    h = F(1, 10**6)
    assert f(x + h) - f(x) == pl_right_slope(f, x) * h
    if x > h:
        assert f(x) - f(x - h) == pl_left_slope(f, x) * h


@given(plfuns())
def test_eventual_data(f):
    x = f.linearity_onset + 5
    assert f(x) == pl_eventual_slope(f) * x + f.eventual_intercept


@given(plfuns())
def test_json_round_trip(f):
    assert PLFun.from_json(f.to_json()) == f
