"""Finite projections: eliminating a distinguished variable and iterating.

Image ideals are under-approximated by Sylvester resultants.  Every emitted
resultant carries cofactors A, B with Res = A*P + B*r, so membership in the
ideal is checked by expansion rather than trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExhausted, MismatchedRing, NotRegular, PointNotOnN, ZIsEverything
from .series import LinearChange, Ring, TruncatedSeries, apply_linear_change
from .weierstrass import (DEFAULT_SEARCH_BOUND, WeierstrassFactorization, regularize, wdivide,
                          wprepare)


class IdealPresentation:
    """A finite list of generators in one ring; generators that are 0 mod m^(T+1) are dropped."""

    def __init__(self, ring: Ring, generators=()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise MismatchedRing(f"generator over {g.ring}, ideal over {ring}")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __repr__(self):
        return f"IdealPresentation({', '.join(g.to_str() for g in self.generators) or '<empty>'})"

    def map(self, fn):
        gens = [fn(g) for g in self.generators]
        ring = gens[0].ring if gens else self.ring
        return IdealPresentation(ring, gens)


# --- resultants -------------------------------------------------------------

def sylvester_matrix(p_coeffs, r_coeffs):
    """Sylvester matrix of P (degree k) and r (degree m), coefficients lowest first.

    Rows 0..m-1 hold x^(m-1-i) P, rows m..m+k-1 hold x^(k-1-j) r; column c
    stands for x^(k+m-1-c).
    """
    k, m = len(p_coeffs) - 1, len(r_coeffs) - 1
    size = k + m
    zero = p_coeffs[0].ring.zero()
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(p_coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(k):
        row = [zero] * size
        for j, c in enumerate(reversed(r_coeffs)):
            row[i + j] = c
        rows.append(row)
    return rows


def determinant_and_last_column_cofactors(M):
    """det(M) and the cofactors C_(i, last) by a subset DP over rows.

    Division free, so it works over the truncated series ring.  dp[mask] is the
    signed sum over assignments of the first popcount(mask) columns to the
    rows in ``mask``.
    """
    n = len(M)
    ring = M[0][0].ring
    if n == 0:
        return ring.one(), []
    dp = {0: ring.one()}
    for col in range(n - 1):
        nxt = {}
        for mask, val in dp.items():
            for r in range(n):
                if mask >> r & 1 or M[r][col].is_zero():
                    continue
                term = val * M[r][col]
                if bin(mask >> (r + 1)).count("1") & 1:
                    term = -term
                key = mask | 1 << r
                nxt[key] = nxt[key] + term if key in nxt else term
        dp = nxt
    full = (1 << n) - 1
    cof = []
    det = ring.zero()
    for r in range(n):
        mask = full & ~(1 << r)
        val = dp.get(mask, ring.zero())
        if bin(mask >> (r + 1)).count("1") & 1:
            val = -val
        cof.append(val)
        det = det + val * M[r][n - 1]
    return det, cof


@dataclass(frozen=True)
class ResultantCertificate:
    """Res_{x_d}(P, r) with cofactors: resultant == a_cof*P + b_cof*r."""

    resultant: TruncatedSeries
    a_cof: TruncatedSeries
    b_cof: TruncatedSeries
    wpoly: TruncatedSeries
    remainder: TruncatedSeries
    var: int

    def check(self):
        return self.a_cof * self.wpoly + self.b_cof * self.remainder == self.resultant


def resultant_with_cofactors(wpoly, r, d) -> ResultantCertificate:
    """Resultant in x_d of a monic P and a remainder r with deg r < deg P."""
    ring = wpoly.ring
    pc = wpoly.coefficients_in(d)
    if r.is_zero():
        z = ring.zero()
        return ResultantCertificate(z, z, z, wpoly, r, d)
    rc = r.coefficients_in(d)
    k, m = len(pc) - 1, len(rc) - 1
    if m == 0:
        # Res = r^k; r itself is already free of x_d and has the same radical
        return ResultantCertificate(r, ring.zero(), ring.one(), wpoly, r, d)
    M = sylvester_matrix(pc, rc)
    det, cof = determinant_and_last_column_cofactors(M)
    x = ring.var(d)
    a_cof = ring.zero()
    for i in range(m):
        a_cof = a_cof + cof[i] * x ** (m - 1 - i)
    b_cof = ring.zero()
    for j in range(k):
        b_cof = b_cof + cof[m + j] * x ** (k - 1 - j)
    return ResultantCertificate(det, a_cof, b_cof, wpoly, r, d)


def eliminate_variable(ideal: IdealPresentation, fact: WeierstrassFactorization, d: int, source=None,
                       combine=True):
    """Push the generators of ``ideal`` down along the x_d projection.

    Each generator (except index ``source``, the one ``fact`` came from) is
    reduced to its Weierstrass remainder r and replaced by Res_{x_d}(P, r).
    When ``combine`` is set and two or more remainders are nonzero, the
    resultant of sum_j (j+1) r_j is appended: a single generator's resultant
    is zero as soon as it vanishes on one branch of P, a combination usually
    is not.  Returns the image ideal and the resultant certificates (one per
    resultant, including those that are zero).
    """
    if fact.distinguished_var != d:
        raise NotRegular(f"factorization is in variable {fact.distinguished_var}, not {d}")
    out, certs, rems = [], [], []
    for i, g in enumerate(ideal):
        if i == source:
            continue
        _, r = wdivide(g, fact.wpoly, d)
        cert = resultant_with_cofactors(fact.wpoly, r, d)
        certs.append(cert)
        out.append(cert.resultant)
        if not r.is_zero():
            rems.append(r)
    if combine and len(rems) >= 2:
        mix = ideal.ring.zero()
        for j, r in enumerate(rems):
            mix = mix + r.scale(ideal.ring.field(j + 1))
        if not mix.is_zero():
            cert = resultant_with_cofactors(fact.wpoly, mix, d)
            certs.append(cert)
            out.append(cert.resultant)
    return IdealPresentation(ideal.ring, out), certs


def evaluate_at_zero(f: TruncatedSeries, S):
    """Substitute 0 for every variable index in S."""
    S = set(S)
    return TruncatedSeries._raw(
        f.ring, {e: c for e, c in f.terms.items() if not any(e[i] for i in S)}, f.lossy
    )


# --- projection chains --------------------------------------------------------

@dataclass(frozen=True)
class ProjectionStep:
    change: LinearChange
    var: int
    factorization: WeierstrassFactorization
    source: int
    n_certificates: tuple
    z_certificates: tuple


@dataclass
class ProjectionChain:
    steps: list
    final_base_vars: list
    image_Z: IdealPresentation
    caveats: list = field(default_factory=list)

    def certificates(self):
        for step in self.steps:
            yield from step.n_certificates
            yield from step.z_certificates

    def digest(self):
        return [
            {
                "var": s.var,
                "k": s.factorization.order_k,
                "direction": [s.change.column(s.var)[i] for i in range(s.change.n)],
                "source": s.source,
            }
            for s in self.steps
        ]


def _pick_generator(ideal):
    # minimal order, ties broken by position
    return min(range(len(ideal)), key=lambda i: (ideal[i].order(), i))


def project_chain(N: IdealPresentation, Z: IdealPresentation, budget: Optional[int] = None,
                  search_bound=DEFAULT_SEARCH_BOUND) -> ProjectionChain:
    """Iterate regularize / prepare / eliminate until the image of N is everything.

    The distinguished variable of each step is the lowest-indexed variable
    not yet eliminated; regularizing changes only mix the remaining
    variables, so earlier steps are left untouched.
    """
    if N.ring != Z.ring:
        raise MismatchedRing("N and Z must live in the same ring")
    n = N.ring.nvars
    budget = n if budget is None else budget
    active = list(range(n))
    steps, caveats = [], []
    cur_N, cur_Z = N, Z
    while len(cur_N):
        if len(steps) >= budget:
            raise BudgetExhausted(f"projection did not finish within {budget} steps")
        if not active:
            raise BudgetExhausted("all variables eliminated but the image of N is still proper")
        i = _pick_generator(cur_N)
        f = cur_N[i]
        if f.order() == 0:
            raise PointNotOnN("the image of N contains a unit: N does not pass through the base point")
        d = active[0]
        A = regularize(f, d, search_bound, active)
        if not A.is_identity():
            cur_N = cur_N.map(lambda g: apply_linear_change(g, A))
            cur_Z = cur_Z.map(lambda g: apply_linear_change(g, A))
            f = cur_N[i]
        fact = wprepare(f, d)
        new_N, n_certs = eliminate_variable(cur_N, fact, d, source=i)
        new_Z, z_certs = eliminate_variable(cur_Z, fact, d)
        for c in n_certs + z_certs:
            if c.resultant.is_zero() and not c.remainder.is_zero():
                caveats.append(f"step {len(steps)}: a resultant vanished modulo m^{N.ring.trunc + 1}")
        steps.append(ProjectionStep(A, d, fact, i, tuple(n_certs), tuple(z_certs)))
        active = active[1:]
        cur_N, cur_Z = new_N, new_Z
    if not len(cur_Z):
        raise ZIsEverything(
            f"the projected Z has no generator that is nonzero modulo m^{N.ring.trunc + 1}: "
            "Z contains N at this truncation order"
        )
    return ProjectionChain(steps, active, cur_Z, caveats)
