"""Newton-Puiseux roots of a monic polynomial over K[[s]] (truncated).

Univariate series are handled here as dense coefficient lists, lowest degree
first; a list of length n is known modulo s^n.  A root is returned as a pair
(y, e): y is a series in u where s = u^e.  The guarantee is on the residual:
P(y(u)) == 0 modulo u^(e * prec) when the coefficients were known modulo
s^prec.  That is the quantity certificates check, and it is what survives
repeated roots, where the root itself is only determined to lower precision.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import AlgebraicExtensionRequired, TruncationTooCoarse
from .series import Ring, TruncatedSeries

MAX_DEPTH = 64


def _ord(a):
    return next((i for i, c in enumerate(a) if c != 0), None)


def _mul(a, b, n, fld):
    out = [fld.zero] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n - i]):
            if y != 0:
                out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return out


def _add(a, b, n, fld):
    a = a + [fld.zero] * (n - len(a))
    b = b + [fld.zero] * (n - len(b))
    return [fld.add(x, y) for x, y in zip(a[:n], b[:n])]


def _inverse(a, n, fld):
    inv0 = fld.inv(a[0])
    out = [inv0] + [fld.zero] * (n - 1)
    for i in range(1, n):
        acc = fld.zero
        for j in range(1, min(i, len(a) - 1) + 1):
            acc = fld.add(acc, fld.mul(a[j], out[i - j]))
        out[i] = fld.neg(fld.mul(acc, inv0))
    return out


def _horner(a, y, n, fld):
    acc = [fld.zero] * n
    for coeff in reversed(a):
        acc = _add(_mul(acc, y, n, fld), coeff, n, fld)
    return acc


def _derivative_coeffs(a, fld):
    return [[fld.mul(fld(j), c) for c in a[j]] for j in range(1, len(a))]


def _newton_simple_root(a, prec, fld):
    """The unique root of positive order when a_1 is a unit and ord(a_0) >= 1."""
    da = _derivative_coeffs(a, fld)
    y = [fld.zero] * prec
    for _ in range(prec + 1):
        val = _horner(a, y, prec, fld)
        if not any(val):
            return y
        der = _horner(da, y, prec, fld)
        step = _mul(val, _inverse(der, prec, fld), prec, fld)
        y = [fld.sub(u, v) for u, v in zip(y, step)]
    raise AssertionError("Newton iteration did not converge")


def _lower_hull(points):
    """Lower convex hull of points sorted by x, left to right."""
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _roots(a, prec, fld, depth, obstructions):
    if depth > MAX_DEPTH:
        raise TruncationTooCoarse("Newton-Puiseux recursion too deep for the requested order")
    a = [(list(c) + [fld.zero] * prec)[:prec] for c in a]
    ords = [_ord(c) for c in a]
    m = next((j for j, o in enumerate(ords) if o == 0), None)
    if m is None:
        raise TruncationTooCoarse("no coefficient is a unit at this order; the Newton polygon is degenerate")
    if m == 0:
        return []
    results = []
    if ords[0] is None:
        results.append(([], 1))
    elif m == 1:
        return [(_newton_simple_root(a, prec, fld), 1)]
    points = [(j, ords[j]) for j in range(m + 1) if ords[j] is not None]
    hull = _lower_hull(points)
    for (j1, o1), (j2, o2) in zip(hull, hull[1:]):
        gamma = Fraction(o1 - o2, j2 - j1)
        p, q = gamma.numerator, gamma.denominator
        V = q * o1 + p * j1
        char = [fld.zero] * (j2 - j1 + 1)
        for j in range(j1, j2 + 1):
            if ords[j] is not None and q * ords[j] + p * j == V:
                char[j - j1] = a[j][ords[j]]
        roots, obstr = fld.roots(char)
        obstructions.extend(obstr)
        for c, _mult in roots:
            b, new_prec = _transform(a, c, p, q, V, prec, fld)
            for y1, e1 in _roots(b, new_prec, fld, depth + 1, obstructions):
                shift = p * e1
                y = [fld.zero] * shift + _add([c], list(y1), max(1, len(y1)), fld)
                results.append((y, q * e1))
    return results


def _transform(a, c, p, q, V, prec, fld):
    """Coefficients of u^(-V) P(u^p (c + y1)) with s = u^q, as a polynomial in y1."""
    n_big = q * prec
    spread = []
    for j, aj in enumerate(a):
        row = [fld.zero] * n_big
        for i, v in enumerate(aj):
            idx = q * i + p * j
            if idx < n_big:
                row[idx] = v
        spread.append(row)
    new_prec = n_big - V
    out = []
    for i in range(len(a)):
        acc = [fld.zero] * n_big
        for j in range(i, len(a)):
            w = fld.mul(fld(comb(j, i)), fld.pow(c, j - i))
            if w != 0:
                acc = [fld.add(x, fld.mul(w, y)) for x, y in zip(acc, spread[j])]
        assert not any(acc[:V]), "points below the Newton polygon"
        out.append(acc[V:])
    return out, new_prec


def puiseux_roots(coeffs, prec, fld):
    """All roots of positive order of sum_j coeffs[j] y^j, coefficients as lists.

    Returns ``(roots, obstructions)``; roots are ``(y, e)`` ordered by Newton
    polygon edge (increasing slope) and then by the field's fixed order on
    the root of each characteristic polynomial.
    """
    obstructions = []
    roots = _roots(coeffs, prec, fld, 0, obstructions)
    return roots, obstructions


def _to_list(f: TruncatedSeries, n):
    out = [f.field.zero] * n
    for (k,), c in f.terms.items():
        if k < n:
            out[k] = c
    return out


def series_from_list(values, ring: Ring):
    return TruncatedSeries(ring, {(i,): c for i, c in enumerate(values) if i <= ring.trunc})


def puiseux_lift(coeffs, ts):
    """Roots of a monic polynomial with univariate series coefficients.

    ``coeffs`` are 1-variable TruncatedSeries c_0..c_k (c_k == 1, the others
    of positive order).  Returns ``[(root, e)]`` with the root a series in
    the new parameter u (s = u^e) truncated at order ``ts``; substituting it
    gives P == 0 modulo u^(ts+1).
    """
    fld = coeffs[0].field
    ring = Ring(fld, 1, ts)
    lists = [_to_list(c, ts + 1) for c in coeffs]
    roots, obstructions = puiseux_roots(lists, ts + 1, fld)
    if not roots:
        if obstructions:
            raise AlgebraicExtensionRequired(
                "the Newton polygon needs a root outside the coefficient field", obstructions[0]
            )
        raise TruncationTooCoarse("no root of positive order found at this truncation")
    return [(series_from_list(y, ring), e) for y, e in roots]


def ramify(f: TruncatedSeries, e: int):
    """f(s) -> f(u^e), truncated in the same ring."""
    if e == 1:
        return f
    return TruncatedSeries(f.ring, {(k * e,): c for (k,), c in f.terms.items()})
