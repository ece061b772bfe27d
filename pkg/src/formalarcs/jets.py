"""Jet schemes at finite level M and curve selection on them.

A level-M jet of an arc in n variables has coordinates a[i][j] (coefficient
of t^j in the i-th component), flattened to index i*(M+1) + j.  The jet
equations of X = V(h_1..h_m) are the coefficients of t^0..t^M of
h(sum_j a[i][j] t^j), listed degree by degree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curvesel import Arc, Certificate, curve_select
from .elimination import IdealPresentation
from .errors import GammaNotOnN, InputError
from .series import Ring, TruncatedSeries


def jet_index(i, j, M):
    return i * (M + 1) + j


def jet_ring(base: Ring, M, trunc=None) -> Ring:
    return Ring(base.field, base.nvars * (M + 1), base.trunc if trunc is None else trunc)


def jet_names(names, M):
    return [f"{v}_{j}" for v in names for j in range(M + 1)]


def _t_expansions(h: TruncatedSeries, M, J: Ring):
    """Coefficients of t^0..t^M of h(sum_j a_ij t^j), as series over J."""
    n = h.nvars
    gens = [[J.var(jet_index(i, j, M)) for j in range(M + 1)] for i in range(n)]

    def mul(p, q):
        out = [J.zero() for _ in range(M + 1)]
        for i, pi in enumerate(p):
            if pi.is_zero():
                continue
            for j in range(M + 1 - i):
                if not q[j].is_zero():
                    out[i + j] = out[i + j] + pi * q[j]
        return out

    powers = {}

    def power(i, k):
        if (i, k) not in powers:
            if k == 0:
                powers[(i, k)] = [J.one()] + [J.zero()] * M
            else:
                powers[(i, k)] = mul(power(i, k - 1), gens[i])
        return powers[(i, k)]

    total = [J.zero() for _ in range(M + 1)]
    for e, c in h.terms.items():
        acc = [J.one()] + [J.zero()] * M
        for i, k in enumerate(e):
            if k:
                acc = mul(acc, power(i, k))
        total = [t + a.scale(c) for t, a in zip(total, acc)]
    return total


def jet_equation_list(X, M, J=None):
    """All jet equations, t-degree outer and generator inner (zeros kept)."""
    X = list(X)
    base = X[0].ring
    J = J or jet_ring(base, M)
    per_h = [_t_expansions(h, M, J) for h in X]
    return [per_h[g][j] for j in range(M + 1) for g in range(len(X))]


def jet_equations(X, M, J=None) -> IdealPresentation:
    X = list(X)
    J = J or jet_ring(X[0].ring, M)
    return IdealPresentation(J, jet_equation_list(X, M, J))


@dataclass(frozen=True)
class TruncatedArcPoint:
    """gamma(t) truncated at t^M: coefficient lists per variable."""

    coefficients: tuple
    M: int

    def coordinates(self):
        return tuple(c for comp in self.coefficients for c in comp)


def make_arc_point(X, M, components, field=None) -> TruncatedArcPoint:
    """Build gamma from per-variable coefficient lists, checking the jet equations of X."""
    X = list(X)
    fld = field or X[0].field
    comps = []
    for comp in components:
        comp = [fld(c) for c in comp]
        if len(comp) > M + 1 and any(comp[M + 1:]):
            raise GammaNotOnN(f"arc component has degree above the jet level {M}")
        comps.append(tuple((comp + [fld.zero] * (M + 1))[: M + 1]))
    gamma = TruncatedArcPoint(tuple(comps), M)
    if X:
        if len(comps) != X[0].nvars:
            raise GammaNotOnN(f"arc has {len(comps)} components, X lives in {X[0].nvars} variables")
        pt = gamma.coordinates()
        for k, eq in enumerate(jet_equation_list(X, M)):
            if eq.evaluate(pt) != 0:
                raise GammaNotOnN(f"arc violates jet equation {k}")
    return gamma


@dataclass(frozen=True)
class ArcFamily:
    """x_i(t, s) = sum_j a_ij(s) t^j as series in (t, s); x_i(t, 0) is gamma."""

    components: tuple
    M: int
    arc: Arc

    def specialize(self):
        """x_i(t, 0) as coefficient lists in t."""
        out = []
        for comp in self.components:
            coeffs = [comp.field.zero] * (self.M + 1)
            for (j, k), c in comp.terms.items():
                if k == 0:
                    coeffs[j] = c
            out.append(tuple(coeffs))
        return tuple(out)


def family_from_arc(arc: Arc, n, M) -> ArcFamily:
    fld = arc.ring.field
    R2 = Ring(fld, 2, M + arc.ts)
    comps = []
    for i in range(n):
        terms = {}
        for j in range(M + 1):
            for (k,), c in arc.components[jet_index(i, j, M)].terms.items():
                terms[(j, k)] = c
        comps.append(TruncatedSeries(R2, terms))
    return ArcFamily(tuple(comps), M, arc)


def check_generically_stable_presentation(N_extra, M, nvars):
    """Check that N_extra is a finite polynomial presentation on level-M jet coordinates."""
    report = {"valid": True, "generators": 0, "support": [], "problems": []}
    gens = list(N_extra)
    report["generators"] = len(gens)
    if not gens:
        return report
    J = gens[0].ring
    if J.nvars % nvars:
        report["valid"] = False
        report["problems"].append(f"{J.nvars} coordinates is not a multiple of {nvars} variables")
        return report
    level = J.nvars // nvars - 1
    support = set()
    for k, g in enumerate(gens):
        if g.lossy:
            report["valid"] = False
            report["problems"].append(f"generator {k} is not a polynomial")
        for idx in g.support_vars():
            i, j = divmod(idx, level + 1)
            support.add((i, j))
            if j > M:
                report["valid"] = False
                report["problems"].append(f"generator {k} uses coordinate ({i}, {j}) above level {M}")
    report["support"] = sorted(support)
    return report


def relevel(f: TruncatedSeries, n, from_level, to_level, ring=None):
    """Re-index a polynomial in level-from_level jet coordinates into level to_level."""
    ring = ring or Ring(f.field, n * (to_level + 1), f.trunc)
    terms = {}
    for e, c in f.terms.items():
        new = [0] * ring.nvars
        for idx, k in enumerate(e):
            if k:
                i, j = divmod(idx, from_level + 1)
                if j > to_level:
                    raise InputError(f"coordinate ({i}, {j}) does not exist at level {to_level}")
                new[jet_index(i, j, to_level)] = k
        terms[tuple(new)] = c
    return TruncatedSeries(ring, terms, f.lossy)


def arc_curve_select(X, N_extra, Z_extra, gamma: TruncatedArcPoint, M, ts=None,
                     search_bound=10, max_steps=None):
    """Curve selection in the level-M jet scheme of X through gamma, avoiding Z_extra.

    N = jet equations + N_extra and Z = jet equations + Z_extra, both over
    the level-M jet coordinates.  Returns (ArcFamily, Certificate, N, Z).
    """
    X = list(X)
    n = X[0].nvars
    J = jet_ring(X[0].ring, M)
    for what, extra in (("N_extra", N_extra), ("Z_extra", Z_extra)):
        rep = check_generically_stable_presentation(list(extra), M, n)
        if not rep["valid"]:
            raise InputError(f"{what}: " + "; ".join(rep["problems"]))
    jets = jet_equation_list(X, M, J)
    N = IdealPresentation(J, jets + list(N_extra))
    Z = IdealPresentation(J, jets + list(Z_extra))
    pt = gamma.coordinates()
    if len(pt) != J.nvars:
        raise GammaNotOnN("gamma does not match the jet level")
    for k, g in enumerate(N):
        if g.evaluate(pt) != 0:
            raise GammaNotOnN(f"gamma violates generator {k} of N")
    arc, cert = curve_select(N, Z, pt, ts, search_bound, max_steps)
    return family_from_arc(arc, n, M), cert, N, Z
