"""Command-line entry point: parse a script, run its command, emit a document.

Exit status is 0 on success, 1 on a mathematical failure and 2 on an input
error.  Certificates (``curvesel``, ``arcsel``) are written as certificate
documents; the other commands emit a JSON report with the same canonical
layout.
"""
from __future__ import annotations

import argparse
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .curvesel import curve_select, verify_certificate
from .document import CertificateDocument, canonical_json, parse_document, serialize
from .elimination import IdealPresentation, eliminate_variable
from .errors import InputError, MathematicalFailure
from .jets import (arc_curve_select, jet_equation_list, jet_index, jet_names, jet_ring,
                   make_arc_point)
from .parser import Script, build_poly, exact_poly, parse_script
from .series import Ring, apply_linear_change
from .weierstrass import DEFAULT_SEARCH_BOUND, regular_order, regularize, wdivide, wprepare


@dataclass(frozen=True)
class RunOptions:
    search_bound: int = DEFAULT_SEARCH_BOUND
    max_steps: Optional[int] = None
    base_dir: Path = Path(".")

    def echo(self):
        return {"search_bound": self.search_bound, "max_steps": self.max_steps}


@dataclass
class Outcome:
    status: int
    output: str
    error: Optional[str] = None
    document: Optional[CertificateDocument] = None


def _report(data) -> str:
    return canonical_json(data)


def _ideal(script: Script, name, ring, names):
    return IdealPresentation(ring, [build_poly(p, ring, names) for p in script.ideals[name]])


def _run_curvesel(script, args, opts):
    ring, names = script.ring(), script.variables
    N = _ideal(script, args["N"], ring, names)
    Z = _ideal(script, args["Z"], ring, names)
    a = [ring.field(c) for c in script.points[args["point"]]]
    arc, cert = curve_select(N, Z, a, args["order"], opts.search_bound, opts.max_steps)
    doc = CertificateDocument.build(script.command.text, opts.echo(), names, N, Z, arc, cert)
    return serialize(doc), doc


def _gamma_coefficients(script, name, fld, M):
    """Coefficient lists of the declared arc, truncated to its M-jet."""
    comps = []
    for node in script.arcs[name]:
        p = exact_poly(node, Ring(fld, 1, 0), ["t"])
        coeffs = [fld.zero] * (p.degree() + 1 if p.terms else 1)
        for (k,), c in p.terms.items():
            coeffs[k] = c
        comps.append(coeffs[: M + 1])
    return comps


def _run_arcsel(script, args, opts):
    base, names = script.ring(), script.variables
    M = args["level"]
    J, jnames = jet_ring(base, M), jet_names(names, M)
    X = list(_ideal(script, args["X"], base, names))
    if not X:
        raise InputError("X has no nonzero generator")
    N_extra = list(_ideal(script, args["N"], J, jnames))
    Z_extra = list(_ideal(script, args["Z"], J, jnames))
    gamma = make_arc_point(X, M, _gamma_coefficients(script, args["arc"], base.field, M))
    family, cert, N, Z = arc_curve_select(X, N_extra, Z_extra, gamma, M, args["order"],
                                          opts.search_bound, opts.max_steps)
    fam = {
        "level": M,
        "base_variables": list(names),
        "components": [[[j, k, *comp.field.numden(v)] for (j, k), v in sorted(comp.terms.items())]
                       for comp in family.components],
    }
    doc = CertificateDocument.build(script.command.text, opts.echo(), jnames, N, Z, family.arc,
                                    cert, family=fam)
    return serialize(doc), doc


def _run_wdiv(script, args, opts):
    ring, names = script.ring(), script.variables
    g = build_poly(args["g"], ring, names)
    f = build_poly(args["f"], ring, names)
    d = names.index(args["var"])
    q, r = wdivide(g, f, d)
    k = regular_order(f, d)
    ok = (q * f + r).truncate(ring.trunc) == g.truncate(ring.trunc) and r.degree_in(d) < k
    return _report({
        "command": script.command.text, "field": ring.field.describe(), "variables": names,
        "trunc": ring.trunc, "k": k, "quotient": q.to_str(names), "remainder": r.to_str(names),
        "check": ok,
    }), None


def _run_wprep(script, args, opts):
    ring, names = script.ring(), script.variables
    f = build_poly(args["f"], ring, names)
    fact = wprepare(f, names.index(args["var"]))
    return _report({
        "command": script.command.text, "field": ring.field.describe(), "variables": names,
        "trunc": ring.trunc, "k": fact.order_k, "unit": fact.unit.to_str(names),
        "wpoly": fact.wpoly.to_str(names), "check": fact.is_valid_for(f),
    }), None


def _run_eliminate(script, args, opts):
    ring, names = script.ring(), script.variables
    ideal = _ideal(script, args["ideal"], ring, names)
    if not len(ideal):
        raise InputError(f"ideal {args['ideal']} has no nonzero generator")
    d = names.index(args["var"])
    i = min(range(len(ideal)), key=lambda j: (ideal[j].order(), j))
    A = regularize(ideal[i], d, opts.search_bound)
    work = ideal if A.is_identity() else ideal.map(lambda g: apply_linear_change(g, A))
    fact = wprepare(work[i], d)
    image, certs = eliminate_variable(work, fact, d, source=i)
    fld = ring.field
    return _report({
        "command": script.command.text, "field": fld.describe(), "variables": names,
        "trunc": ring.trunc, "source": i, "k": fact.order_k,
        "direction": [fld.render(c) for c in A.column(d)],
        "wpoly": fact.wpoly.to_str(names),
        "image": [g.to_str(names) for g in image],
        "membership": [c.check() for c in certs],
    }), None


def _run_jets(script, args, opts):
    base, names = script.ring(), script.variables
    M = args["level"]
    X = list(_ideal(script, args["X"], base, names))
    if not X:
        raise InputError("X has no nonzero generator")
    J = jet_ring(base, M, trunc=max(base.trunc, max(h.degree() for h in X)))
    jnames = jet_names(names, M)
    eqs = jet_equation_list(X, M, J)
    return _report({
        "command": script.command.text, "field": base.field.describe(), "level": M,
        "variables": jnames, "equations": [e.to_str(jnames) for e in eqs],
    }), None


def check_family(doc: CertificateDocument, arc):
    """The stored (t, s) family must be the jet arc re-indexed, with x(t, 0) = gamma."""
    fam = doc.family
    M, n = fam["level"], len(fam["base_variables"])
    if len(fam["components"]) != n or len(arc.components) != n * (M + 1):
        return False
    for i, comp in enumerate(fam["components"]):
        want = {}
        for j in range(M + 1):
            for (k,), c in arc.components[jet_index(i, j, M)].terms.items():
                want[(j, k)] = tuple(arc.ring.field.numden(c))
        try:
            got = {(j, k): (num, den) for j, k, num, den in comp}
        except (TypeError, ValueError):
            return False
        if got != want:
            return False
    return True


def _run_verify(script, args, opts):
    path = Path(args["path"])
    if not path.is_absolute():
        path = opts.base_dir / path
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read certificate {path}: {exc.strerror}") from exc
    doc = parse_document(text)
    N, Z, a, arc, cert = doc.to_problem()
    rep = verify_certificate(N, Z, a, arc, cert)
    if doc.family is not None:
        try:
            ok = check_family(doc, arc)
        except (KeyError, TypeError, AttributeError):
            ok = False
        rep.add("family", ok, "family is the jet arc re-indexed")
    out = _report({"command": script.command.text, "certificate": str(args["path"]),
                   "ok": rep.ok, "checks": rep.lines()})
    return out, rep.ok


_DISPATCH = {
    "curvesel": _run_curvesel,
    "arcsel": _run_arcsel,
    "wdiv": _run_wdiv,
    "wprep": _run_wprep,
    "eliminate": _run_eliminate,
    "jets": _run_jets,
}


def run_command(script: Script, opts: RunOptions = RunOptions()) -> Outcome:
    """Run the script's command; errors propagate as exceptions."""
    cmd = script.command
    if cmd.name == "verify":
        out, ok = _run_verify(script, cmd.args, opts)
        return Outcome(0 if ok else 1, out, None if ok else "certificate rejected")
    out, doc = _DISPATCH[cmd.name](script, cmd.args, opts)
    return Outcome(0, out, document=doc)


def _where(exc):
    """'module.function' of the innermost package frame that raised ``exc``."""
    where = None
    for frame, _ in traceback.walk_tb(exc.__traceback__):
        mod = frame.f_globals.get("__name__", "")
        if mod.startswith("formalarcs.") and mod != "formalarcs.cli":
            where = f"{mod.split('.', 1)[1]}.{frame.f_code.co_name}"
    return where or "cli"


def render_error(exc) -> str:
    return f"error in {_where(exc)}: {type(exc).__name__}: {exc}"


def run_script(text: str, opts: RunOptions = RunOptions()) -> Outcome:
    """Parse and run; never raises a package error, maps it to an exit status."""
    try:
        script = parse_script(text)
        return run_command(script, opts)
    except InputError as exc:
        return Outcome(2, "", render_error(exc))
    except MathematicalFailure as exc:
        return Outcome(1, "", render_error(exc))
    except RecursionError:
        return Outcome(2, "", "error in parser: ParseError: expression nested too deeply")


def build_arg_parser():
    ap = argparse.ArgumentParser(prog="formalarcs", description="Certified curve selection over Q and F_p.")
    ap.add_argument("--script", help="script file (default: read standard input)")
    ap.add_argument("--out", help="write the document here instead of standard output")
    ap.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH_BOUND,
                    help="max-norm cap for regularizing and line-selection searches")
    ap.add_argument("--max-steps", type=int, default=None, help="projection budget")
    ap.add_argument("--quiet", action="store_true", help="suppress the summary line")
    return ap


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    if args.script:
        path = Path(args.script)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            print(f"error in cli: cannot read script: {exc}", file=sys.stderr)
            return 2
        base = path.parent
    else:
        text, base = sys.stdin.read(), Path(".")
    opts = RunOptions(args.search_bound, args.max_steps, base)
    outcome = run_script(text, opts)
    if outcome.output:
        if args.out:
            Path(args.out).write_text(outcome.output, encoding="utf-8")
        else:
            sys.stdout.write(outcome.output)
    if outcome.error:
        print(outcome.error, file=sys.stderr)
    elif args.out and not args.quiet:
        print(f"ok: wrote {args.out}", file=sys.stderr)
    return outcome.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
