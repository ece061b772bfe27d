"""Reference computations that share no code with the library.

Series are handled as plain ``{exponent tuple: coefficient}`` dicts and
products as naive double loops; resultants and root checks go through sympy.
"""
from fractions import Fraction

import sympy


def reduce(c, p):
    if p == 0:
        return Fraction(c)
    c = Fraction(c)
    return c.numerator * pow(c.denominator, -1, p) % p


def clean(terms, T, p):
    out = {}
    for e, c in terms.items():
        c = reduce(c, p)
        if c != 0 and sum(e) <= T:
            out[tuple(e)] = c
    return out


def add(a, b, p):
    out = dict(a)
    for e, c in b.items():
        out[e] = reduce(out.get(e, 0) + c, p)
    return {e: c for e, c in out.items() if c != 0}


def mul(a, b, T, p):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if sum(e) <= T:
                out[e] = reduce(out.get(e, 0) + c1 * c2, p)
    return {e: c for e, c in out.items() if c != 0}


def to_sympy(terms, syms):
    expr = sympy.Integer(0)
    for e, c in terms.items():
        mono = sympy.Integer(1)
        for s, k in zip(syms, e):
            mono *= s ** k
        expr += sympy.Rational(c.numerator, c.denominator) * mono if isinstance(c, Fraction) else c * mono
    return expr


def from_sympy(expr, syms, p=0):
    poly = sympy.Poly(sympy.expand(expr), *syms)
    out = {}
    for e, c in poly.terms():
        c = Fraction(int(c.p), int(c.q))
        v = reduce(c, p)
        if v != 0:
            out[tuple(e)] = v
    return out


def resultant(f_terms, g_terms, nvars, d):
    """Res_{x_d}(f, g) by sympy, as a dict."""
    syms = sympy.symbols(f"z0:{nvars}")
    res = sympy.resultant(to_sympy(f_terms, syms), to_sympy(g_terms, syms), syms[d])
    return from_sympy(res, syms)


# hand-expanded jet equations of the cusp x^2 - y^3: coefficient of t^j
# in (a0 + a1 t + a2 t^2 + a3 t^3)^2 - (b0 + b1 t + b2 t^2 + b3 t^3)^3
CUSP_JETS = {
    0: "x_0^2 - y_0^3",
    1: "2*x_0*x_1 - 3*y_0^2*y_1",
    2: "2*x_0*x_2 + x_1^2 - 3*y_0^2*y_2 - 3*y_0*y_1^2",
    3: "2*x_0*x_3 + 2*x_1*x_2 - 3*y_0^2*y_3 - 6*y_0*y_1*y_2 - y_1^3",
}


def division_instance(rng, fld, ring_cls, random_series, regularize, apply_linear_change):
    """A random (f, g, d) with f regularized in x_d; n <= 4, T <= 12."""
    n = rng.randint(1, 4)
    T = rng.randint(2, 12)
    R = ring_cls(fld, n, T)
    while True:
        f = random_series(R, rng, rng.randint(2, 6), min_degree=1, max_degree=min(T, 4))
        if not f.is_zero():
            break
    g = random_series(R, rng, rng.randint(1, 8))
    d = rng.randrange(n)
    A = regularize(f, d)
    return apply_linear_change(f, A), apply_linear_change(g, A), d


def check_division(g, f, q, r, d):
    """g == q*f + r mod m^(T+1) by naive expansion, and deg_{x_d} r < ord f."""
    p, T = f.field.p, f.trunc
    k = min(sum(e) for e in f.terms)
    lhs = add(mul(q.terms, f.terms, T, p), r.terms, p)
    ok_identity = clean(lhs, T, p) == clean(g.terms, T, p)
    ok_degree = all(e[d] < k for e in r.terms)
    return ok_identity and ok_degree
