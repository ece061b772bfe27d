import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from formalarcs.errors import NotRegular, SearchExhausted, ZeroSeries
from formalarcs.field import QQ, Field
from formalarcs.series import Ring, apply_linear_change, random_series
from formalarcs.weierstrass import (integer_vectors, regular_order, regularize, wdivide,
                                    wdivide_graded, wprepare)


def instance(seed, fld):
    return oracles.division_instance(random.Random(seed), fld, Ring, random_series, regularize,
                                     apply_linear_change)


def test_cusp_regular_orders():
    R = Ring(QQ, 2, 8)
    x, y = R.var(0), R.var(1)
    f = x ** 2 - y ** 3
    assert regular_order(f, 0) == 2
    assert regular_order(f, 1) == 3
    with pytest.raises(NotRegular):
        regular_order(x * y, 0)
    with pytest.raises(ZeroSeries):
        regular_order(R.zero(), 0)


def test_integer_vectors_order():
    vs = list(integer_vectors(2, 1))
    assert vs[0] == (0, 0)
    assert vs[1:4] == [(0, 1), (0, -1), (1, 0)]
    assert len(vs) == 9


def test_regularize_xy():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    A = regularize(x * y, 0)
    assert not A.is_identity()
    assert regular_order(apply_linear_change(x * y, A), 0) == 2


def test_regularize_can_exhaust():
    F = Field(2)
    R = Ring(F, 2, 6)
    x, y = R.var(0), R.var(1)
    # x*y*(x + y) vanishes on every point of F_2^2
    with pytest.raises(SearchExhausted):
        regularize(x * y * (x + y), 0, search_bound=3)


def test_division_needs_regular_divisor():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    with pytest.raises(NotRegular):
        wdivide(y, x * y + x ** 3, 0)  # regular of order 3 in x, but total order 2
    q, r = wdivide(y ** 3, x ** 2 - y ** 3, 0)
    assert r == y ** 3 and q.is_zero()


def test_division_example():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    q, r = wdivide(x ** 3, x ** 2 - y ** 3, 0)
    assert q == x
    assert r == x * y ** 3


@pytest.mark.parametrize("fld", [QQ, Field(10007)])
@pytest.mark.parametrize("seed", range(15))
def test_fixed_point_matches_graded_oracle(seed, fld):
    f, g, d = instance(seed, fld)
    q1, r1 = wdivide(g, f, d)
    q2, r2 = wdivide_graded(g, f, d)
    assert r1 == r2
    assert oracles.check_division(g, f, q1, r1, d)
    assert oracles.check_division(g, f, q2, r2, d)


@given(st.integers(0, 10 ** 6), st.sampled_from([QQ, Field(10007), Field(101)]))
@settings(max_examples=40, deadline=None)
def test_division_identity_property(seed, fld):
    f, g, d = instance(seed, fld)
    q, r = wdivide(g, f, d)
    assert oracles.check_division(g, f, q, r, d)


@given(st.integers(0, 10 ** 6), st.sampled_from([QQ, Field(10007)]))
@settings(max_examples=40, deadline=None)
def test_preparation_property(seed, fld):
    f, _, d = instance(seed, fld)
    fact = wprepare(f, d)
    assert fact.unit.constant_term() != 0
    cs = fact.coefficients()
    assert cs[-1] == 1 and all(c.constant_term() == 0 for c in cs[:-1])
    assert oracles.clean(oracles.mul(fact.unit.terms, fact.wpoly.terms, f.trunc, fld.p),
                         f.trunc, fld.p) == f.terms


def test_preparation_cusp():
    R = Ring(QQ, 2, 8)
    x, y = R.var(0), R.var(1)
    f = (x ** 2 - y ** 3) * (R.one() + x + y)
    fact = wprepare(f, 0)
    assert fact.order_k == 2
    assert fact.is_valid_for(f)
