"""Regularity, regularizing changes, Weierstrass division and preparation.

All routines work modulo m^(T+1).  Division requires ``f`` to be regular in
x_d of order k *equal to its total order*; that is what :func:`regularize`
arranges, and it is what makes truncating intermediates at degree T sound
(no step of the division lowers total degree).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import MismatchedRing, NotRegular, SearchExhausted, ZeroSeries
from .series import LinearChange, TruncatedSeries, apply_linear_change

DEFAULT_SEARCH_BOUND = 10


def regular_order(f: TruncatedSeries, d: int) -> int:
    """Order of f(0, .., x_d, .., 0); raises NotRegular when that restriction vanishes."""
    if f.is_zero():
        raise ZeroSeries(f"series is zero modulo m^{f.trunc + 1}")
    axis = f.restrict_to_axis(d)
    if axis.is_zero():
        raise NotRegular(f"series is not regular in variable {d}")
    return axis.order()


def _ranked_values(bound):
    # 0, 1, -1, 2, -2, ...
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def integer_vectors(m, bound):
    """Integer vectors of length m by increasing max-norm, lexicographic within a norm.

    Coordinates are compared in the order 0 < 1 < -1 < 2 < -2 < ...
    """
    for norm in range(bound + 1):
        values = list(_ranked_values(norm))
        for v in product(values, repeat=m):
            if max(map(abs, v), default=0) == norm:
                yield v


def regularize(f: TruncatedSeries, d: int, search_bound=DEFAULT_SEARCH_BOUND, active=None) -> LinearChange:
    """An invertible change A with f o A regular in x_d of order ord(f).

    A sends e_d to v, where v[d] = 1, v vanishes off ``active`` and
    f_k(v) != 0 for the lowest form f_k.  Candidates are searched with
    :func:`integer_vectors`; v = e_d (the identity) comes first.  Over Q or
    F_p with p large compared to ``search_bound`` a nonzero form of degree k
    cannot vanish on the whole box once 2*search_bound + 1 > k.
    """
    if f.is_zero():
        raise ZeroSeries(f"series is zero modulo m^{f.trunc + 1}")
    n, fld = f.nvars, f.field
    active = sorted(set(range(n) if active is None else active) | {d})
    k = f.order()
    fk = f.homogeneous_component(k)
    others = [i for i in active if i != d]
    for w in integer_vectors(len(others), search_bound):
        v = [0] * n
        v[d] = 1
        for i, c in zip(others, w):
            v[i] = c
        if fk.evaluate(v) != 0:
            A = LinearChange.from_direction(n, d, v, fld)
            # k is recomputed rather than trusted
            assert regular_order(apply_linear_change(f, A), d) == k
            return A
    raise SearchExhausted(f"no regularizing direction with max-norm <= {search_bound}")


def _split(h: TruncatedSeries, d: int, k: int):
    """h = x_d^k * quo + rem with deg_{x_d}(rem) < k."""
    quo, rem = {}, {}
    for e, c in h.terms.items():
        if e[d] >= k:
            quo[e[:d] + (e[d] - k,) + e[d + 1:]] = c
        else:
            rem[e] = c
    return TruncatedSeries._raw(h.ring, quo, h.lossy), TruncatedSeries._raw(h.ring, rem, h.lossy)


def _check_divisor(f, d):
    k = regular_order(f, d)
    if k != f.order():
        raise NotRegular(
            f"series is regular of order {k} in variable {d} but has total order {f.order()}; regularize first"
        )
    return k


def _drop_above(h, degree):
    return TruncatedSeries._raw(h.ring, {e: c for e, c in h.terms.items() if sum(e) <= degree}, True)


def wdivide(g: TruncatedSeries, f: TruncatedSeries, d: int):
    """Weierstrass division g = q*f + r (mod m^(T+1)) with deg_{x_d} r < k.

    Fixed-point iteration: write f = x_d^k u + p and peel x_d^k-multiples
    off the running remainder.  With x_d of weight 1 and the other variables
    of weight 2, every round raises the weighted order by at least one, so
    the loop ends within 2T + 1 rounds.  ``q`` is returned modulo
    m^(T-k+1), which is all the identity determines.
    """
    if g.ring != f.ring:
        raise MismatchedRing(f"{g.ring} vs {f.ring}")
    k = _check_divisor(f, d)
    u, p = _split(f, d, k)
    u_inv = u.inverse()
    ring = f.ring
    q, r, h = ring.zero(), ring.zero(), g
    for _ in range(2 * ring.trunc + 2):
        if h.is_zero():
            break
        hq, hr = _split(h, d, k)
        r = r + hr
        step = hq * u_inv
        q = q + step
        h = -(step * p)
    else:
        raise AssertionError("Weierstrass division failed to stabilize")
    q = _drop_above(q, ring.trunc - k) if q.degree() > ring.trunc - k else q
    return q, r


def _divide_form(h, fk, d, k):
    """Homogeneous long division of the form h by the x_d-regular form fk."""
    fld = h.field
    lead = fk.terms[tuple(k if i == d else 0 for i in range(h.nvars))]
    quo = h.ring.zero()
    while True:
        big = [e for e in h.terms if e[d] >= k]
        if not big:
            return quo, h
        e = max(big, key=lambda e: e[d])
        c = fld.div(h.terms[e], lead)
        mono = h.ring.monomial(e[:d] + (e[d] - k,) + e[d + 1:], c)
        quo = quo + mono
        h = h - mono * fk


def wdivide_graded(g: TruncatedSeries, f: TruncatedSeries, d: int):
    """Weierstrass division by a degree-by-degree linear solve.

    An independent route to the same (q, r) as :func:`wdivide`: at each
    degree D the unknown forms q_(D-k) and r_D satisfy
    f_k * q_(D-k) + r_D = (g - q f)_D, which long division by the lowest
    form f_k solves uniquely.
    """
    if g.ring != f.ring:
        raise MismatchedRing(f"{g.ring} vs {f.ring}")
    k = _check_divisor(f, d)
    fk = f.homogeneous_component(k)
    ring = f.ring
    q, r = ring.zero(), ring.zero()
    for D in range(ring.trunc + 1):
        residual = (g - q * f - r).homogeneous_component(D)
        qD, rD = _divide_form(residual, fk, d, k)
        q, r = q + qD, r + rD
    return q, r


@dataclass(frozen=True)
class WeierstrassFactorization:
    """unit * wpoly == f (mod m^(T+1)) with wpoly a Weierstrass polynomial in x_d."""

    unit: TruncatedSeries
    wpoly: TruncatedSeries
    distinguished_var: int
    order_k: int

    def coefficients(self):
        """Coefficients c_0..c_k of wpoly in x_d (c_k == 1)."""
        cs = self.wpoly.coefficients_in(self.distinguished_var)
        cs += [self.wpoly.ring.zero()] * (self.order_k + 1 - len(cs))
        return cs

    def is_valid_for(self, f):
        cs = self.coefficients()
        return (
            self.unit.constant_term() != 0
            and len(cs) == self.order_k + 1
            and cs[-1] == 1
            and all(c.constant_term() == 0 for c in cs[:-1])
            and self.unit * self.wpoly == f
        )


def wprepare(f: TruncatedSeries, d: int) -> WeierstrassFactorization:
    """Weierstrass preparation f = unit * wpoly, from the division of x_d^k by f."""
    k = _check_divisor(f, d)
    ring = f.ring
    xk = ring.var(d) ** k
    q, r = wdivide(xk, f, d)
    # only the part of the unit below degree T-k+1 is determined
    unit = q.inverse()
    if unit.degree() > ring.trunc - k:
        unit = _drop_above(unit, ring.trunc - k)
    wpoly = xk - r
    return WeierstrassFactorization(unit, wpoly, d, k)
