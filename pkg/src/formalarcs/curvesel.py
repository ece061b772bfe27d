"""Certified curve selection: an arc through a point of N whose generic point avoids Z.

Pipeline: translate the base point to the origin, project N finitely onto a
coordinate subspace (:func:`project_chain`), choose a line there that is not
contained in the projection of Z, and lift the line back up the chain by
Newton-Puiseux against each step's Weierstrass polynomial.  Branches are
explored depth first in a fixed order; the first one whose arc kills every
generator of N and keeps some generator of Z alive (modulo s^(T_s+1)) wins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .elimination import IdealPresentation, ProjectionChain, project_chain
from .errors import (AlgebraicExtensionRequired, MathematicalFailure, MismatchedRing,
                     NoBranchAvoidsZ, NotPolynomial, PointNotOnN, SearchExhausted,
                     TruncationTooCoarse,
                     ZIsEverything)
from .puiseux import puiseux_lift, ramify
from .series import Ring, TruncatedSeries, substitute, translate_point
from .weierstrass import DEFAULT_SEARCH_BOUND, integer_vectors

DEFAULT_TS_CAP = 48


@dataclass(frozen=True)
class Arc:
    """alpha(s) = (components[0](s), ...), where the line parameter was t = s^e."""

    ring: Ring
    components: tuple
    ramification_index: int
    ts: int

    def orders(self):
        return [(c - c.constant_term()).order() for c in self.components]


@dataclass
class Certificate:
    base_point: tuple
    vanishing_orders: list
    witness_index: int
    witness: TruncatedSeries
    chain_summary: dict
    trunc_orders: tuple


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))

    @property
    def ok(self):
        return bool(self.checks) and all(p for _, p, _ in self.checks)

    def lines(self):
        return [f"{'PASS' if p else 'FAIL'} {name}" + (f": {detail}" if detail else "")
                for name, p, detail in self.checks]


def select_line(Zr: IdealPresentation, base_vars, search_bound=DEFAULT_SEARCH_BOUND):
    """Direction v (zero off ``base_vars``) with g_k0(v) != 0 for the lowest-order generator g."""
    if not len(Zr):
        raise ZIsEverything("the projected Z has no nonzero generator")
    base_vars = list(base_vars)
    if not base_vars:
        raise NoBranchAvoidsZ("N is zero-dimensional at the base point: no non-constant arc exists")
    g = min(Zr, key=lambda h: h.order())
    g0 = g.homogeneous_component(g.order())
    n = Zr.ring.nvars
    for w in integer_vectors(len(base_vars), search_bound):
        if not any(w):
            continue
        v = [0] * n
        for i, c in zip(base_vars, w):
            v[i] = c
        if g0.evaluate(v) != 0:
            return tuple(Zr.ring.field(c) for c in v)
    raise SearchExhausted(f"no line direction with max-norm <= {search_bound}")


def default_ts(chain: ProjectionChain, T, cap=DEFAULT_TS_CAP):
    prod = math.prod(step.factorization.order_k for step in chain.steps)
    return max(1, min(2 * T * prod, cap))


def _require_polynomials(ideal, what):
    for g in ideal:
        if g.lossy:
            raise NotPolynomial(f"{what} generator {g.to_str()} is a truncated series, not a polynomial")


class _Search:
    def __init__(self, chain, N0, Z0, U):
        self.chain = chain
        self.N0 = N0
        self.Z0 = Z0
        self.U = U
        self.failure = None
        self.failure_depth = -1

    def fail(self, depth, exc):
        if depth > self.failure_depth or (
            depth == self.failure_depth and isinstance(exc, AlgebraicExtensionRequired)
        ):
            self.failure, self.failure_depth = exc, depth

    def run(self, comps, e, idx, depth):
        steps = self.chain.steps
        if idx < 0:
            return self.leaf(comps, e, depth)
        step = steps[idx]
        d = step.var
        coeffs = [substitute(c, comps) for c in step.factorization.coefficients()]
        try:
            roots = puiseux_lift(coeffs, self.U.trunc)
        except (AlgebraicExtensionRequired, TruncationTooCoarse) as exc:
            self.fail(depth, exc)
            return None
        for root, e1 in roots:
            lifted = [ramify(c, e1) for c in comps]
            lifted[d] = root
            A = step.change.matrix
            mapped = []
            for row in A:
                acc = self.U.zero()
                for coef, c in zip(row, lifted):
                    if coef != 0:
                        acc = acc + c.scale(coef)
                mapped.append(acc)
            found = self.run(mapped, e * e1, idx - 1, depth + 1)
            if found is not None:
                return found
        return None

    def leaf(self, comps, e, depth):
        orders = []
        for i, g in enumerate(self.N0):
            pb = substitute(g, comps)
            if not pb.is_zero():
                self.fail(depth, NoBranchAvoidsZ(
                    f"branch leaves N: generator {i} pulls back with order {pb.order()}"))
                return None
            orders.append(self.U.trunc + 1)
        for j, z in enumerate(self.Z0):
            pb = substitute(z, comps)
            if not pb.is_zero():
                return comps, e, orders, j, pb
        self.fail(depth, NoBranchAvoidsZ(
            f"every Z generator vanishes along the branch modulo s^{self.U.trunc + 1}"))
        return None


def curve_select(N: IdealPresentation, Z: IdealPresentation, a, ts: Optional[int] = None,
                 search_bound=DEFAULT_SEARCH_BOUND, max_steps=None):
    """Return (Arc, Certificate) with alpha(0) = a, alpha in N and alpha not in Z mod s^(ts+1)."""
    ring = N.ring
    if Z.ring != ring:
        raise MismatchedRing("N and Z must live in the same ring")
    _require_polynomials(N, "N")
    _require_polynomials(Z, "Z")
    fld = ring.field
    a = tuple(fld(c) for c in a)
    if len(a) != ring.nvars:
        raise PointNotOnN(f"base point has {len(a)} coordinates, ring has {ring.nvars}")
    for i, g in enumerate(N):
        if g.evaluate(a) != 0:
            raise PointNotOnN(f"N generator {i} ({g.to_str()}) does not vanish at the base point")

    def working(T):
        W = ring.with_trunc(T)
        Nw = IdealPresentation(W, [translate_point(g.truncate(T), a) for g in N])
        Zw = IdealPresentation(W, [translate_point(g.truncate(T), a) for g in Z])
        return Nw, Zw

    if ts is None:
        Nw, Zw = working(ring.trunc)
        ts = default_ts(project_chain(Nw, Zw, max_steps, search_bound), ring.trunc)
    Tw = max(ring.trunc, ts)
    Nw, Zw = working(Tw)
    chain = project_chain(Nw, Zw, max_steps, search_bound)
    v = select_line(chain.image_Z, chain.final_base_vars, search_bound)

    U = Ring(fld, 1, ts)
    t = U.var(0)
    comps = [t.scale(c) for c in v]
    search = _Search(chain, Nw, Zw, U)
    found = search.run(comps, 1, len(chain.steps) - 1, 0)
    if found is None:
        exc = search.failure
        if isinstance(exc, MathematicalFailure) and not isinstance(exc, NoBranchAvoidsZ):
            raise exc
        raise NoBranchAvoidsZ(f"no certificate found at order {ts}: {exc}")
    comps, e, orders, j, witness = found
    components = tuple(c + U.const(ai) for c, ai in zip(comps, a))
    arc = Arc(ring, components, e, ts)
    summary = {
        "steps": chain.digest(),
        "base_vars": list(chain.final_base_vars),
        "line": list(v),
        "caveats": list(chain.caveats),
    }
    cert = Certificate(a, orders, j, witness, summary, (ring.trunc, ts))
    return arc, cert


def verify_certificate(N: IdealPresentation, Z: IdealPresentation, a, arc: Arc, cert: Certificate) -> Report:
    """Recheck a certificate from scratch using only translation and substitution."""
    rep = Report()
    fld = N.ring.field
    a = tuple(fld(c) for c in a)
    ts = arc.ts
    U = Ring(fld, 1, ts)
    comps = list(arc.components)
    shape_ok = len(comps) == N.ring.nvars and all(c.ring == U for c in comps)
    rep.add("shape", shape_ok, f"{len(comps)} components over {N.ring.nvars} variables")
    if not shape_ok:
        return rep
    rep.add("base point", tuple(c.constant_term() for c in comps) == a and tuple(cert.base_point) == a)
    rep.add("trunc orders", tuple(cert.trunc_orders) == (N.ring.trunc, ts))
    centred = [c - c.constant_term() for c in comps]
    rep.add("non-constant", any(not c.is_zero() for c in centred))
    if len(cert.vanishing_orders) != len(N):
        rep.add("vanishing orders", False, "one order per N generator expected")
    for i, g in enumerate(N):
        try:
            pb = substitute(translate_point(g, a), centred)
        except MathematicalFailure as exc:  # pragma: no cover - defensive
            rep.add(f"N[{i}] vanishes", False, str(exc))
            continue
        order = ts + 1 if pb.is_zero() else pb.order()
        claimed = cert.vanishing_orders[i] if i < len(cert.vanishing_orders) else None
        rep.add(f"N[{i}] vanishes", order > ts and claimed == order,
                f"order {'>= ' + str(ts + 1) if order > ts else order}")
    j = cert.witness_index
    if not 0 <= j < len(Z):
        rep.add("witness", False, f"index {j} out of range")
    else:
        pb = substitute(translate_point(Z[j], a), centred)
        detail = f"Z[{j}] pulls back with order {pb.order()}" if not pb.is_zero() else \
            f"Z[{j}] vanishes along the arc modulo s^{ts + 1}"
        rep.add("witness", not pb.is_zero() and pb == cert.witness, detail)
    return rep
