"""Exact coefficient fields: the rationals and prime fields F_p.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator); elements of F_p are plain ints in ``range(p)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy


def _is_prime(p):
    return p >= 2 and sympy.isprime(p)


@dataclass(frozen=True)
class Field:
    """A coefficient field. ``p == 0`` means Q."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"F_{self.p}: modulus must be prime")

    @property
    def is_rational(self):
        return self.p == 0

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, value):
        """Coerce an int, Fraction or field element into this field."""
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else a * b % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        return a ** k if self.p == 0 else pow(a, k, self.p)

    def sort_key(self, a):
        """Fixed total order used to make root choices deterministic.

        Over Q: by absolute value, positive before negative. Over F_p: by
        representative in ``range(p)``.
        """
        if self.p == 0:
            return (abs(a), a < 0)
        return (a,)

    def numden(self, a):
        if self.p == 0:
            return a.numerator, a.denominator
        return a, 1

    def render(self, a):
        if self.p == 0:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def describe(self):
        return "Q" if self.p == 0 else f"F {self.p}"

    def roots(self, coeffs):
        """Roots in the field of a univariate polynomial.

        ``coeffs`` are field elements, lowest degree first. Returns
        ``(roots, obstructions)`` where ``roots`` is a list of
        ``(root, multiplicity)`` in :meth:`sort_key` order and
        ``obstructions`` lists the irreducible factors of degree > 1, each as a
        coefficient list lowest degree first.
        """
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) <= 1:
            return [], []
        x = sympy.Symbol("x")
        top_first = [sympy.Rational(*self.numden(c)) if self.p == 0 else int(c)
                     for c in reversed(coeffs)]
        if self.p == 0:
            poly = sympy.Poly(top_first, x, domain=sympy.QQ)
        else:
            poly = sympy.Poly(top_first, x, modulus=self.p)
        _, factors = poly.factor_list()
        roots, obstructions = [], []
        for fac, mult in factors:
            cs = fac.all_coeffs()
            if fac.degree() == 1:
                a1, a0 = (self._from_sympy(c) for c in cs)
                roots.append((self.neg(self.div(a0, a1)), mult))
            else:
                obstructions.append([self._from_sympy(c) for c in reversed(cs)])
        roots.sort(key=lambda rm: self.sort_key(rm[0]))
        return roots, obstructions

    def _from_sympy(self, c):
        if self.p == 0:
            c = sympy.Rational(c)
            return Fraction(int(c.p), int(c.q))
        return int(c) % self.p


QQ = Field(0)
