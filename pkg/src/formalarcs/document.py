"""Certificate documents: exact, canonical JSON for arcs and their certificates.

Every number is an integer; a coefficient is a (numerator, denominator) pair
(over F_p the denominator is 1).  Serialization sorts keys and uses a fixed
layout, so parse(serialize(d)) == d and re-serializing is byte-identical.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .curvesel import Arc, Certificate
from .elimination import IdealPresentation
from .errors import InputError
from .field import Field
from .series import Ring, TruncatedSeries

SCHEMA = "formalarcs-certificate/1"


class DocumentError(InputError):
    """A certificate document is malformed."""


def encode_scalar(fld: Field, c):
    num, den = fld.numden(c)
    return [num, den]


def decode_scalar(fld: Field, pair):
    num, den = pair
    return fld(Fraction(num, den))


def encode_series(f: TruncatedSeries):
    """Terms as [exponent list, num, den], sorted by exponent."""
    return [[list(e), *f.field.numden(c)] for e, c in sorted(f.terms.items())]


def decode_series(ring: Ring, terms):
    out = {}
    for entry in terms:
        exps, num, den = entry
        out[tuple(exps)] = ring.field(Fraction(num, den))
    return TruncatedSeries(ring, out)


def encode_univariate(f: TruncatedSeries):
    """(exponent, num, den) triples of a one-variable series."""
    return [[e[0], *f.field.numden(c)] for e, c in sorted(f.terms.items())]


def decode_univariate(ring: Ring, triples):
    return TruncatedSeries(ring, {(k,): ring.field(Fraction(n, d)) for k, n, d in triples})


def field_descriptor(fld: Field):
    return fld.describe()


def parse_field(desc: str) -> Field:
    if desc == "Q":
        return Field(0)
    parts = desc.split()
    if len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
        return Field(int(parts[1]))
    raise DocumentError(f"unknown field descriptor {desc!r}")


@dataclass
class CertificateDocument:
    command: str
    options: dict
    field: str
    variables: list
    trunc_orders: list
    problem: dict
    ramification_index: int
    arc: list
    vanishing_orders: list
    witness_index: int
    witness: list
    chain: dict
    family: Optional[dict] = None
    schema: str = SCHEMA

    # --- construction ---------------------------------------------------

    @classmethod
    def build(cls, command, options, names, N: IdealPresentation, Z: IdealPresentation, arc: Arc,
              cert: Certificate, family=None):
        fld = N.ring.field
        chain = cert.chain_summary
        return cls(
            command=command,
            options=dict(options),
            field=field_descriptor(fld),
            variables=list(names),
            trunc_orders=list(cert.trunc_orders),
            problem={
                "N": [encode_series(g) for g in N],
                "Z": [encode_series(g) for g in Z],
                "point": [encode_scalar(fld, c) for c in cert.base_point],
            },
            ramification_index=arc.ramification_index,
            arc=[encode_univariate(c) for c in arc.components],
            vanishing_orders=list(cert.vanishing_orders),
            witness_index=cert.witness_index,
            witness=encode_univariate(cert.witness),
            chain={
                "steps": [
                    {
                        "var": s["var"],
                        "k": s["k"],
                        "source": s["source"],
                        "direction": [encode_scalar(fld, c) for c in s["direction"]],
                    }
                    for s in chain["steps"]
                ],
                "base_vars": list(chain["base_vars"]),
                "line": [encode_scalar(fld, c) for c in chain["line"]],
                "caveats": list(chain["caveats"]),
            },
            family=family,
        )

    # --- reconstruction -------------------------------------------------

    def ring(self) -> Ring:
        return Ring(parse_field(self.field), len(self.variables), self.trunc_orders[0])

    def to_problem(self):
        """(N, Z, base point, Arc, Certificate) rebuilt from the document."""
        ring = self.ring()
        fld = ring.field
        T, ts = self.trunc_orders
        try:
            N = IdealPresentation(ring, [decode_series(ring, g) for g in self.problem["N"]])
            Z = IdealPresentation(ring, [decode_series(ring, g) for g in self.problem["Z"]])
            a = tuple(decode_scalar(fld, c) for c in self.problem["point"])
            U = Ring(fld, 1, ts)
            comps = tuple(decode_univariate(U, c) for c in self.arc)
            witness = decode_univariate(U, self.witness)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"malformed problem or arc: {exc}") from exc
        arc = Arc(ring, comps, self.ramification_index, ts)
        cert = Certificate(a, list(self.vanishing_orders), self.witness_index, witness,
                           self.chain, (T, ts))
        return N, Z, a, arc, cert


def canonical_json(data: dict) -> str:
    """One top-level key per line, values in compact form, keys sorted."""
    lines = [
        f" {json.dumps(k)}: {json.dumps(v, sort_keys=True, separators=(',', ':'), ensure_ascii=True)}"
        for k, v in sorted(data.items())
    ]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def serialize(doc: CertificateDocument) -> str:
    return canonical_json(asdict(doc))


def _no_float(text):
    raise DocumentError(f"floating point value {text} in certificate document")


_FIELDS = {
    "command": str, "options": dict, "field": str, "variables": list, "trunc_orders": list,
    "problem": dict, "ramification_index": int, "arc": list, "vanishing_orders": list,
    "witness_index": int, "witness": list, "chain": dict, "schema": str,
}


def parse_document(text: str) -> CertificateDocument:
    try:
        data = json.loads(text, parse_float=_no_float, parse_constant=_no_float)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not a certificate document: {exc}") from exc
    if not isinstance(data, dict):
        raise DocumentError("certificate document must be a JSON object")
    if data.get("schema") != SCHEMA:
        raise DocumentError(f"unsupported schema {data.get('schema')!r}")
    for key, typ in _FIELDS.items():
        if not isinstance(data.get(key), typ) or (typ is int and isinstance(data[key], bool)):
            raise DocumentError(f"field {key!r} missing or not a {typ.__name__}")
    extra = set(data) - set(_FIELDS) - {"family"}
    if extra:
        raise DocumentError(f"unknown fields {sorted(extra)}")
    if len(data["trunc_orders"]) != 2:
        raise DocumentError("trunc_orders must hold two integers")
    return CertificateDocument(**data)
