"""Truncated multivariate power series K[[x_1..x_n]] / m^(T+1).

A series stores its nonzero terms sparsely, keyed by exponent tuples of
length ``nvars``.  Every operation truncates at total degree ``T``.  A series
that has lost terms to truncation is flagged ``lossy``; only non-lossy series
are exact polynomials, and some operations (translation by a nonzero point,
evaluation) refuse lossy input.

A series with no terms of degree <= T is *zero modulo m^(T+1)*, not zero.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import DimensionMismatch, MismatchedRing, NotPolynomial, SubstitutionNotFinite
from .field import QQ, Field


@dataclass(frozen=True)
class Ring:
    field: Field
    nvars: int
    trunc: int

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("a ring needs at least one variable")
        if self.trunc < 0:
            raise ValueError("truncation order must be nonnegative")

    def zero(self):
        return TruncatedSeries(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        return TruncatedSeries(self, {(0,) * self.nvars: self.field(c)})

    def var(self, i):
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        e = [0] * self.nvars
        e[i] = 1
        return TruncatedSeries(self, {tuple(e): self.field.one})

    def monomial(self, exps, c=1):
        return TruncatedSeries(self, {tuple(exps): self.field(c)})

    def with_trunc(self, trunc):
        return Ring(self.field, self.nvars, trunc)


def _deg(e):
    return sum(e)


class TruncatedSeries:
    """An immutable truncated power series.  See the module docstring."""

    __slots__ = ("ring", "terms", "lossy", "_by_degree")

    def __init__(self, ring: Ring, terms, lossy=False):
        field, n, T = ring.field, ring.nvars, ring.trunc
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != n or any(k < 0 for k in e):
                raise DimensionMismatch(f"exponent {e} does not fit {n} variables")
            c = field(c)
            if c == 0:
                continue
            if sum(e) > T:
                lossy = True
                continue
            clean[e] = c
        self._init(ring, clean, lossy)

    def _init(self, ring, terms, lossy):
        self.ring = ring
        self.terms = terms
        self.lossy = lossy
        self._by_degree = None
        return self

    @classmethod
    def _raw(cls, ring, terms, lossy=False):
        # Trusted constructor: terms already reduced, nonzero and within T.
        return cls.__new__(cls)._init(ring, terms, lossy)

    # --- basic queries ----------------------------------------------------

    @property
    def field(self):
        return self.ring.field

    @property
    def nvars(self):
        return self.ring.nvars

    @property
    def trunc(self):
        return self.ring.trunc

    def is_zero(self):
        """True when the series is zero modulo m^(T+1)."""
        return not self.terms

    def order(self):
        return min(map(_deg, self.terms), default=math.inf)

    def degree(self):
        return max(map(_deg, self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def degree_in(self, d):
        return max((e[d] for e in self.terms), default=-1)

    def support_vars(self):
        return sorted({i for e in self.terms for i, k in enumerate(e) if k})

    def is_polynomial(self):
        return not self.lossy

    def _sorted_by_degree(self):
        if self._by_degree is None:
            items = sorted(((_deg(e), e, c) for e, c in self.terms.items()), key=lambda t: t[0])
            self._by_degree = ([t[0] for t in items], items)
        return self._by_degree

    # --- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.ring.const(other)
        if other.ring != self.ring:
            raise MismatchedRing(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(out.get(e, f.zero), c)
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return TruncatedSeries._raw(self.ring, out, self.lossy or other.lossy)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return TruncatedSeries._raw(self.ring, {e: f.neg(c) for e, c in self.terms.items()}, self.lossy)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        f = self.field
        c = f(c)
        if c == 0:
            return TruncatedSeries._raw(self.ring, {}, self.lossy)
        return TruncatedSeries._raw(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()}, self.lossy)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        other = self._check(other)
        T = self.trunc
        f = self.field
        p = f.p
        if not self.terms or not other.terms:
            return TruncatedSeries._raw(self.ring, {}, self.lossy or other.lossy)
        gdeg, gitems = other._sorted_by_degree()
        out = {}
        get = out.get
        for e1, c1 in self.terms.items():
            d1 = _deg(e1)
            stop = bisect_right(gdeg, T - d1)
            for i in range(stop):
                _, e2, c2 = gitems[i]
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        lossy = self.lossy or other.lossy or self.degree() + other.degree() > T
        return TruncatedSeries._raw(self.ring, out, lossy)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self):
        """Multiplicative inverse of a unit, by Newton iteration mod m^(T+1)."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        inv = self.ring.const(self.field.inv(c0))
        two = self.ring.const(2)
        prec = 1
        while prec <= self.trunc:
            inv = inv * (two - self * inv)
            prec *= 2
        # The inverse of a non-constant unit is never a polynomial.
        return TruncatedSeries._raw(self.ring, inv.terms, self.lossy or len(self.terms) > 1)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # --- structural operations --------------------------------------------

    def homogeneous_component(self, d):
        return TruncatedSeries._raw(self.ring, {e: c for e, c in self.terms.items() if _deg(e) == d})

    def truncate(self, trunc):
        """The same series viewed modulo m^(trunc+1) (trunc may be larger only for polynomials)."""
        if trunc > self.trunc and self.lossy:
            raise NotPolynomial("cannot raise the truncation order of a truncated series")
        ring = self.ring.with_trunc(trunc)
        kept = {e: c for e, c in self.terms.items() if _deg(e) <= trunc}
        return TruncatedSeries._raw(ring, kept, self.lossy or len(kept) < len(self.terms))

    def coefficients_in(self, d):
        """Coefficients c_j (free of x_d) with self = sum_j c_j x_d^j."""
        out = [dict() for _ in range(self.degree_in(d) + 1)]
        for e, c in self.terms.items():
            j = e[d]
            out[j][e[:d] + (0,) + e[d + 1:]] = c
        return [TruncatedSeries._raw(self.ring, t, self.lossy) for t in out]

    def restrict_to_axis(self, d):
        """f(0, ..., x_d, ..., 0) as a series in the same ring."""
        return TruncatedSeries._raw(
            self.ring,
            {e: c for e, c in self.terms.items() if all(k == 0 for i, k in enumerate(e) if i != d)},
        )

    def evaluate(self, point):
        """Exact value at a point of K^n; requires an exact polynomial unless the point is 0."""
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, ring has {self.nvars}")
        f = self.field
        pt = [f(a) for a in point]
        if self.lossy and any(pt):
            raise NotPolynomial("cannot evaluate a truncated series away from the origin")
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for a, k in zip(pt, e):
                if k:
                    v = f.mul(v, f.pow(a, k))
            total = f.add(total, v)
        return total

    # --- display ----------------------------------------------------------

    def sorted_terms(self):
        """Terms by increasing total degree, then decreasing exponent tuple."""
        return sorted(self.terms.items(), key=lambda ec: (_deg(ec[0]), tuple(-k for k in ec[0])))

    def to_str(self, names=None):
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        f = self.field
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if f.is_rational and c < 0:
                sign, mag = "-", -c
            else:
                sign, mag = "+", c
            coef = f.render(mag)
            if not mono:
                body = coef
            elif coef == "1":
                body = mono
            else:
                body = f"{coef}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        tail = f" mod m^{self.trunc + 1}" if self.lossy else ""
        return f"<TruncatedSeries {self.to_str()}{tail} (T={self.trunc}, {self.field.describe()})>"


# --- module level operations ------------------------------------------------

def series_arith(f, g, op):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def homogeneous_component(f, d):
    return f.homogeneous_component(d)


def substitute(f, images, strict=True):
    """Compose f with ``images`` (one series per variable, all in one ring).

    Each image must have order >= 1 so that every output coefficient is a
    finite sum; with ``strict=False`` images with constant terms are allowed
    provided ``f`` is an exact polynomial.
    """
    if len(images) != f.nvars:
        raise DimensionMismatch(f"{len(images)} images for {f.nvars} variables")
    if not images:
        raise DimensionMismatch("no images")
    target = images[0].ring
    for im in images:
        if im.ring != target:
            raise MismatchedRing("substitution images must share a ring")
    if target.field != f.field:
        raise MismatchedRing("substitution changes the coefficient field")
    has_const = any(im.constant_term() != 0 for im in images)
    if has_const:
        if strict:
            raise SubstitutionNotFinite("an image has a nonzero constant term")
        if f.lossy:
            raise NotPolynomial("constant-term substitution into a truncated series")

    powers = [[target.one()] for _ in images]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * images[i])
        return cache[k]

    # Build monomials incrementally in sorted order so shared prefixes are reused.
    result = target.zero()
    prefix_cache = {}
    for e, c in sorted(f.terms.items()):
        key = ()
        acc = target.one()
        for i, k in enumerate(e):
            key = key + (k,)
            hit = prefix_cache.get(key)
            if hit is None:
                if k:
                    acc = acc * power(i, k)
                prefix_cache[key] = acc
            else:
                acc = hit
        result = result + acc.scale(c)
        if len(prefix_cache) > 4096:
            prefix_cache.clear()
    lossy = f.lossy or result.lossy
    return TruncatedSeries._raw(target, result.terms, lossy)


@dataclass(frozen=True)
class LinearChange:
    """An invertible linear substitution x = A y, stored with its exact inverse."""

    matrix: tuple
    inverse: tuple
    field: Field = QQ

    @property
    def n(self):
        return len(self.matrix)

    @classmethod
    def identity(cls, n, field=QQ):
        eye = tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))
        return cls(eye, eye, field)

    @classmethod
    def from_matrix(cls, rows, field=QQ):
        A = [[field(c) for c in row] for row in rows]
        n = len(A)
        if any(len(row) != n for row in A):
            raise DimensionMismatch("linear change needs a square matrix")
        M = [row[:] + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A)]
        for col in range(n):
            piv = next((r for r in range(col, n) if M[r][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            M[col], M[piv] = M[piv], M[col]
            inv = field.inv(M[col][col])
            M[col] = [field.mul(v, inv) for v in M[col]]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    fac = M[r][col]
                    M[r] = [field.sub(a, field.mul(fac, b)) for a, b in zip(M[r], M[col])]
        inverse = tuple(tuple(row[n:]) for row in M)
        return cls(tuple(tuple(r) for r in A), inverse, field)

    @classmethod
    def from_direction(cls, n, d, v, field=QQ):
        """The change sending the d-th basis vector to v (requires v[d] == 1)."""
        v = [field(c) for c in v]
        if len(v) != n:
            raise DimensionMismatch("direction vector has the wrong length")
        if v[d] != 1:
            raise ValueError("direction must have coordinate 1 at the distinguished index")
        A = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
        B = [row[:] for row in A]
        for i in range(n):
            if i != d:
                A[i][d] = v[i]
                B[i][d] = field.neg(v[i])
        return cls(tuple(map(tuple, A)), tuple(map(tuple, B)), field)

    def inverted(self):
        return LinearChange(self.inverse, self.matrix, self.field)

    def is_identity(self):
        return self == LinearChange.identity(self.n, self.field)

    def column(self, j):
        return tuple(row[j] for row in self.matrix)


def apply_linear_change(f, A: LinearChange):
    """f o A, i.e. the series y -> f(A y)."""
    if A.n != f.nvars:
        raise DimensionMismatch(f"{A.n}x{A.n} change on {f.nvars} variables")
    if A.field != f.field:
        raise MismatchedRing("linear change over a different field")
    ring = f.ring
    images = []
    for row in A.matrix:
        terms = {}
        for j, c in enumerate(row):
            if c != 0:
                e = [0] * ring.nvars
                e[j] = 1
                terms[tuple(e)] = c
        images.append(TruncatedSeries._raw(ring, terms))
    out = substitute(f, images)
    return TruncatedSeries._raw(ring, out.terms, f.lossy)


def translate_point(f, a):
    """f(x + a): moves the point a to the origin.  Requires an exact polynomial."""
    if len(a) != f.nvars:
        raise DimensionMismatch(f"point has {len(a)} coordinates, ring has {f.nvars}")
    fld = f.field
    a = [fld(c) for c in a]
    if not any(a):
        return f
    if f.lossy:
        raise NotPolynomial("translation of a truncated series by a nonzero point is undefined")
    # deg f <= T and translation preserves degree, so nothing is truncated.
    ring = f.ring
    images = [ring.var(i) + ring.const(c) for i, c in enumerate(a)]
    out = substitute(f, images, strict=False)
    return TruncatedSeries._raw(ring, out.terms, False)


def random_series(ring, rng, nterms, max_coeff=5, min_degree=0, max_degree=None):
    """A random sparse series (for tests and experiments)."""
    max_degree = ring.trunc if max_degree is None else max_degree
    terms = {}
    for _ in range(nterms):
        d = rng.randint(min_degree, max_degree)
        e = [0] * ring.nvars
        for _ in range(d):
            e[rng.randrange(ring.nvars)] += 1
        c = rng.randint(-max_coeff, max_coeff)
        if ring.field.is_rational and rng.random() < 0.2:
            c = Fraction(c, rng.randint(1, 4))
        terms[tuple(e)] = c
    return TruncatedSeries(ring, terms)


def all_exponents(nvars, max_degree):
    """Every exponent tuple of total degree <= max_degree, in degree order."""
    for d in range(max_degree + 1):
        for e in iproduct(range(d + 1), repeat=nvars):
            if sum(e) == d:
                yield e
