import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from formalarcs.field import Field
from formalarcs.series import Ring, TruncatedSeries

FIELDS = [Field(0), Field(10007), Field(101)]


@st.composite
def series(draw, ring=None, max_terms=8, min_degree=0):
    if ring is None:
        ring = draw(rings())
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        e = tuple(draw(st.lists(st.integers(0, ring.trunc), min_size=ring.nvars, max_size=ring.nvars)))
        if not min_degree <= sum(e) <= ring.trunc:
            continue
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4)) if ring.field.is_rational else 1
        terms[e] = Fraction(num, den)
    return TruncatedSeries(ring, terms)


@st.composite
def rings(draw, max_vars=3, max_trunc=6):
    fld = draw(st.sampled_from(FIELDS))
    return Ring(fld, draw(st.integers(1, max_vars)), draw(st.integers(1, max_trunc)))


@pytest.fixture
def rng():
    return random.Random(20261018)
