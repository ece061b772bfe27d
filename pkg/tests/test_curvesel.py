import random
from dataclasses import replace

import pytest
import sympy

import oracles
from formalarcs.curvesel import curve_select, verify_certificate
from formalarcs.elimination import IdealPresentation
from formalarcs.errors import (AlgebraicExtensionRequired, MathematicalFailure, NoBranchAvoidsZ,
                               NotPolynomial, PointNotOnN)
from formalarcs.field import QQ, Field
from formalarcs.series import Ring, TruncatedSeries, random_series


def ideal(R, *gens):
    return IdealPresentation(R, list(gens))


def cusp(fld=QQ, T=8):
    R = Ring(fld, 2, T)
    x, y = R.var(0), R.var(1)
    return R, ideal(R, x ** 2 - y ** 3), ideal(R, x, y)


def coeffs(series):
    return {k: c for (k,), c in series.terms.items()}


def test_cusp_arc():
    R, N, Z = cusp()
    arc, cert = curve_select(N, Z, (0, 0), 12)
    assert arc.orders() == [3, 2]
    assert [coeffs(c) for c in arc.components] == [{3: 1}, {2: 1}]
    assert arc.ramification_index == 2
    assert verify_certificate(N, Z, (0, 0), arc, cert).ok


def test_cusp_pullback_by_sympy():
    R, N, Z = cusp()
    arc, _ = curve_select(N, Z, (0, 0), 12)
    s = sympy.Symbol("s")
    x_s, y_s = (oracles.to_sympy({(k,): c for k, c in coeffs(c).items()}, (s,)) for c in arc.components)
    assert sympy.expand(x_s ** 2 - y_s ** 3) == 0


def test_cusp_over_fp():
    R, N, Z = cusp(Field(10007))
    arc, cert = curve_select(N, Z, (0, 0), 12)
    assert arc.orders() == [3, 2]
    assert verify_certificate(N, Z, (0, 0), arc, cert).ok


def test_translated_base_point():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    one, two = R.const(1), R.const(2)
    N = ideal(R, (x - one) ** 2 - (y - two) ** 3)
    Z = ideal(R, x - one, y - two)
    arc, cert = curve_select(N, Z, (1, 2), 10)
    assert [c.constant_term() for c in arc.components] == [1, 2]
    assert verify_certificate(N, Z, (1, 2), arc, cert).ok


def test_point_not_on_n():
    R, N, Z = cusp()
    with pytest.raises(PointNotOnN):
        curve_select(N, Z, (1, 0), 6)


def test_truncated_input_rejected():
    R = Ring(QQ, 2, 3)
    x, y = R.var(0), R.var(1)
    with pytest.raises(NotPolynomial):
        curve_select(ideal(R, x ** 2 - TruncatedSeries(R, {(0, 4): 1})), ideal(R, x, y), (0, 0), 6)


def test_zero_dimensional_n():
    R = Ring(QQ, 2, 4)
    x, y = R.var(0), R.var(1)
    with pytest.raises(NoBranchAvoidsZ):
        curve_select(ideal(R, x, y), ideal(R, R.one() + x), (0, 0), 4)


def test_extension_required():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    with pytest.raises(AlgebraicExtensionRequired):
        curve_select(ideal(R, x ** 2 + y ** 2), ideal(R, x, y), (0, 0), 8)


@pytest.mark.parametrize("K,expected", [(2, 2), (3, 6), (4, 12)])
def test_root_tower_orders(K, expected):
    R = Ring(QQ, K, 12)
    xs = [R.var(i) for i in range(K)]
    N = ideal(R, *[xs[0] - xs[k - 1] ** k for k in range(2, K + 1)])
    Z = ideal(R, *xs)
    arc, cert = curve_select(N, Z, [0] * K, 12)
    assert arc.orders()[0] == expected
    assert verify_certificate(N, Z, [0] * K, arc, cert).ok


def test_refinement_extends():
    R, N, Z = cusp()
    short, _ = curve_select(N, Z, (0, 0), 12)
    long, _ = curve_select(N, Z, (0, 0), 24)
    for a, b in zip(short.components, long.components):
        assert b.truncate(12) == a


def test_tampered_certificate_fails():
    R, N, Z = cusp()
    arc, cert = curve_select(N, Z, (0, 0), 12)
    U = arc.components[0].ring
    bent = replace(arc, components=(arc.components[0] + U.var(0) ** 5, arc.components[1]))
    assert not verify_certificate(N, Z, (0, 0), bent, cert).ok
    wrong_witness = replace(cert, witness_index=1)
    assert not verify_certificate(N, Z, (0, 0), arc, wrong_witness).ok


def test_random_hypersurfaces_sound():
    """Every certificate found on random hypersurfaces passes the checker; failures are clean."""
    rng = random.Random(1)
    found = 0
    for i in range(100):
        fld = QQ if i % 2 else Field(10007)
        n = rng.randint(2, 3)
        R = Ring(fld, n, 6)
        f = random_series(R, rng, rng.randint(2, 4), max_coeff=4, min_degree=1, max_degree=4)
        if f.is_zero():
            continue
        N, Z = ideal(R, f), ideal(R, *[R.var(j) for j in range(n)])
        try:
            arc, cert = curve_select(N, Z, [0] * n, 10)
        except MathematicalFailure:
            continue
        assert verify_certificate(N, Z, [0] * n, arc, cert).ok
        found += 1
    assert found >= 90
