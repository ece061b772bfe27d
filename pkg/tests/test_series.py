from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import rings, series
from formalarcs.errors import (DimensionMismatch, MismatchedRing, NotPolynomial,
                               SubstitutionNotFinite)
from formalarcs.field import QQ, Field
from formalarcs.series import (LinearChange, Ring, TruncatedSeries, apply_linear_change,
                               random_series, substitute, translate_point)


def pair(draw_ring=rings()):
    return draw_ring.flatmap(lambda R: st.tuples(series(R), series(R)))


@given(pair())
@settings(max_examples=80, deadline=None)
def test_product_matches_naive_expansion(fg):
    f, g = fg
    want = oracles.mul(f.terms, g.terms, f.trunc, f.field.p)
    assert (f * g).terms == want


@given(rings().flatmap(lambda R: st.tuples(series(R), series(R), series(R))))
@settings(max_examples=60, deadline=None)
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == f.ring.zero()


@given(rings().flatmap(lambda R: series(R)))
@settings(max_examples=60, deadline=None)
def test_inverse_of_unit(f):
    u = f + f.ring.const(1 - f.constant_term() + 2) if f.constant_term() == 0 else f
    if u.constant_term() == 0:
        return
    assert u * u.inverse() == u.ring.one()


def test_truncation_drops_and_flags():
    R = Ring(QQ, 2, 3)
    x, y = R.var(0), R.var(1)
    f = x ** 2 * y
    assert not f.lossy
    g = f * x
    assert g.is_zero() and g.lossy
    assert TruncatedSeries(R, {(4, 0): 1}).lossy


def test_order_and_components():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    f = x ** 2 - y ** 3 + x * y
    assert f.order() == 2
    assert f.homogeneous_component(2) == x ** 2 + x * y
    assert f.degree_in(1) == 3
    assert f.to_str(["x", "y"]) == "x^2 + x*y - y^3"


def test_fp_arithmetic_reduces():
    F = Field(7)
    R = Ring(F, 1, 4)
    x = R.var(0)
    f = (x + R.const(3)) * R.const(5)
    assert f.terms == {(1,): 5, (0,): 1}
    assert R.const(Fraction(1, 2)).constant_term() == 4


def test_mismatched_rings_rejected():
    a = Ring(QQ, 2, 4).var(0)
    b = Ring(QQ, 2, 5).var(0)
    with pytest.raises(MismatchedRing):
        a + b


def test_substitution_matches_sympy(rng):
    import sympy
    R = Ring(QQ, 2, 6)
    S = Ring(QQ, 2, 6)
    s0, s1 = sympy.symbols("z0:2")
    for _ in range(20):
        f = random_series(R, rng, 5, max_degree=3)
        ims = [random_series(S, rng, 3, min_degree=1, max_degree=2) for _ in range(2)]
        got = substitute(f, ims)
        expr = oracles.to_sympy(f.terms, (oracles.to_sympy(ims[0].terms, (s0, s1)),
                                          oracles.to_sympy(ims[1].terms, (s0, s1))))
        want = oracles.clean(oracles.from_sympy(expr, (s0, s1)), 6, 0)
        assert got.terms == want


def test_substitution_guards():
    R = Ring(QQ, 2, 4)
    x, y = R.var(0), R.var(1)
    with pytest.raises(SubstitutionNotFinite):
        substitute(x * y, [x + R.one(), y])
    with pytest.raises(DimensionMismatch):
        substitute(x, [x])


def test_linear_change_round_trip(rng):
    R = Ring(QQ, 3, 5)
    for _ in range(50):
        f = random_series(R, rng, 6)
        rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            rows[i][i] += 5  # diagonally dominant, so invertible
        A = LinearChange.from_matrix(rows)
        assert apply_linear_change(apply_linear_change(f, A), A.inverted()) == f


def test_translate_point():
    R = Ring(QQ, 2, 4)
    x, y = R.var(0), R.var(1)
    f = x ** 2 - y ** 3
    g = translate_point(f, (1, 2))
    assert g.constant_term() == 1 - 8
    assert g.evaluate((-1, -2)) == 0
    with pytest.raises(NotPolynomial):
        translate_point(x * y ** 4, (1, 0))


def test_evaluate_requires_polynomial():
    R = Ring(QQ, 1, 2)
    f = TruncatedSeries(R, {(3,): 1, (1,): 1})
    assert f.evaluate((0,)) == 0
    with pytest.raises(NotPolynomial):
        f.evaluate((1,))
