import random

import pytest

import oracles
from formalarcs.corpus import ELIMINATION_CORPUS
from formalarcs.elimination import (IdealPresentation, determinant_and_last_column_cofactors,
                                    project_chain, resultant_with_cofactors)
from formalarcs.errors import BudgetExhausted, PointNotOnN, ZIsEverything
from formalarcs.field import QQ
from formalarcs.parser import build_poly, parse_script
from formalarcs.series import Ring, random_series


def corpus_ideals(ring_line, N, Z):
    sc = parse_script(f"{ring_line}\nideal N = {', '.join(N)}\nideal Z = {', '.join(Z)}\njets N order 0")
    R = sc.ring()
    make = lambda name: IdealPresentation(R, [build_poly(p, R, sc.variables) for p in sc.ideals[name]])
    return make("N"), make("Z")


def test_determinant_small():
    R = Ring(QQ, 1, 4)
    c = R.const
    det, cof = determinant_and_last_column_cofactors([[c(1), c(2)], [c(3), c(4)]])
    assert det == c(-2)
    assert cof == [c(-3), c(1)]


def _poly_in_x(R, rng, degree, monic, min_degree):
    x = R.var(0)
    out = x ** degree if monic else R.zero()
    for j in range(degree + (0 if monic else 1)):
        c = random_series(R, rng, 2, 3, min_degree, 2)
        c = R.zero() + type(c)(R, {e: v for e, v in c.terms.items() if e[0] == 0})
        out = out + c * x ** j
    return out


def test_resultant_matches_sympy():
    rng = random.Random(7)
    R = Ring(QQ, 3, 40)  # large T: nothing is truncated
    checked = 0
    while checked < 25:
        k = rng.randint(2, 3)
        P = _poly_in_x(R, rng, k, True, 1)
        r = _poly_in_x(R, rng, rng.randint(1, k - 1), False, 0)
        if r.degree_in(0) < 1:
            continue
        cert = resultant_with_cofactors(P, r, 0)
        assert cert.check()
        assert cert.resultant.terms == oracles.resultant(P.terms, r.terms, 3, 0)
        checked += 1


def test_remainder_free_of_variable_is_kept():
    R = Ring(QQ, 2, 8)
    x, y = R.var(0), R.var(1)
    cert = resultant_with_cofactors(x ** 2 - y ** 3, y ** 2, 0)
    assert cert.resultant == y ** 2 and cert.check()


@pytest.mark.parametrize("case", ELIMINATION_CORPUS, ids=lambda c: c[0] + " " + c[1][0])
def test_corpus_membership(case):
    N, Z = corpus_ideals(*case)
    chain = project_chain(N, Z)
    certs = list(chain.certificates())
    assert certs
    assert all(c.check() for c in certs)


def test_cusp_chain():
    N, Z = corpus_ideals(*ELIMINATION_CORPUS[0])
    chain = project_chain(N, Z)
    assert [s.var for s in chain.steps] == [0]
    assert chain.final_base_vars == [1]
    R = N.ring
    y = R.var(1)
    assert {-(y ** 3), y} <= set(chain.image_Z)


def test_chain_errors():
    R = Ring(QQ, 2, 6)
    x, y = R.var(0), R.var(1)
    with pytest.raises(ZIsEverything):
        project_chain(IdealPresentation(R, [x]), IdealPresentation(R, [x]))
    with pytest.raises(PointNotOnN):
        project_chain(IdealPresentation(R, [x + R.one()]), IdealPresentation(R, [y]))
    with pytest.raises(BudgetExhausted):
        project_chain(IdealPresentation(R, [x, y]), IdealPresentation(R, [x]), budget=1)
