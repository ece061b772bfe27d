import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formalarcs.errors import AlgebraicExtensionRequired
from formalarcs.field import QQ, Field
from formalarcs.puiseux import puiseux_lift, ramify
from formalarcs.series import Ring, TruncatedSeries

TS = 12


def lift(coeff_dicts, fld=QQ, ts=TS):
    R = Ring(fld, 1, ts)
    return puiseux_lift([TruncatedSeries(R, {(k,): c for k, c in d.items()}) for d in coeff_dicts], ts)


def as_dict(series):
    return {k: c for (k,), c in series.terms.items()}


def residual_vanishes(coeff_dicts, root, e, fld, ts):
    """P(y(u)) with s = u^e, expanded by hand with Python dicts, is 0 below u^(ts+1)."""
    y = as_dict(root)
    acc = {}
    for j in reversed(range(len(coeff_dicts))):
        prod = {}
        for a, ca in acc.items():
            for b, cb in y.items():
                if a + b <= ts:
                    prod[a + b] = fld.add(prod.get(a + b, fld.zero), fld.mul(ca, cb))
        for k, c in coeff_dicts[j].items():
            if k * e <= ts:
                prod[k * e] = fld.add(prod.get(k * e, fld.zero), fld(c))
        acc = prod
    return all(v == 0 for v in acc.values())


def test_cusp_branches():
    roots = lift([{3: -1}, {}, {0: 1}])
    assert [(as_dict(y), e) for y, e in roots] == [({3: 1}, 2), ({3: -1}, 2)]


def test_simple_root():
    roots = lift([{2: -1}, {0: 1}])
    assert [(as_dict(y), e) for y, e in roots] == [({2: 1}, 1)]


def test_unramified_double():
    roots = lift([{6: -1}, {}, {0: 1}])
    assert sorted((tuple(as_dict(y).items()), e) for y, e in roots) == [(((3, -1),), 1), (((3, 1),), 1)]


def test_repeated_branch():
    # (x^3 - s^4)^2
    roots = lift([{8: 1}, {}, {}, {4: -2}, {}, {}, {0: 1}])
    assert roots and all(e == 3 for _, e in roots)
    assert as_dict(roots[0][0]) == {4: 1}


def test_extension_required_over_q():
    with pytest.raises(AlgebraicExtensionRequired) as info:
        lift([{2: -2}, {}, {0: 1}])
    assert info.value.polynomial == [-2, 0, 1]


def test_same_polynomial_splits_mod_7():
    roots = lift([{2: -2}, {}, {0: 1}], Field(7))
    assert [as_dict(y) for y, _ in roots] == [{1: 3}, {1: 4}]


def test_ramify():
    R = Ring(QQ, 1, 6)
    s = R.var(0)
    assert ramify(s + s ** 2, 3) == s ** 3 + s ** 6


@given(st.integers(0, 10 ** 6), st.sampled_from([QQ, Field(10007)]))
@settings(max_examples=40, deadline=None)
def test_residual_property(seed, fld):
    """Product of (y - b_i(s)) with random positive-order b_i: every returned root is a root."""
    rng = random.Random(seed)
    ts = 10
    factors = []
    for _ in range(rng.randint(1, 3)):
        b = {k: rng.randint(-3, 3) for k in range(1, 4)}
        factors.append(b)
    poly = [{0: 1}]  # lowest degree in y first
    for b in factors:
        new = [dict() for _ in range(len(poly) + 1)]
        for j, c in enumerate(poly):
            for k, v in c.items():  # y * c
                new[j + 1][k] = new[j + 1].get(k, 0) + v
                for kb, vb in b.items():  # -b * c
                    if k + kb <= ts:
                        new[j][k + kb] = new[j].get(k + kb, 0) - v * vb
        poly = new
    poly = [{k: fld(v) for k, v in c.items() if fld(v) != 0} for c in poly]
    roots = lift(poly, fld, ts)
    assert roots
    for root, e in roots:
        assert residual_vanishes(poly, root, e, fld, ts)
