"""Recursive-descent parser for the script language.

    script    := ring_decl decl* command
    ring_decl := "ring" ("Q" | "F" INT) "[" IDENT ("," IDENT)* "]" "trunc" INT
    decl      := "ideal" IDENT "=" poly ("," poly)*
               | "point" IDENT "=" "(" rational ("," rational)* ")"
               | "arc" IDENT "=" "(" poly_in_t ("," poly_in_t)* ")"
    command   := "curvesel" IDENT IDENT IDENT "order" INT
               | "wdiv" poly poly "var" IDENT
               | "wprep" poly "var" IDENT
               | "eliminate" IDENT "var" IDENT
               | "jets" IDENT "order" INT
               | "arcsel" IDENT IDENT IDENT IDENT "level" INT "order" INT
               | "verify" PATH
    poly      := term (("+" | "-") term)*
    term      := unary ("*" unary)*
    unary     := "-" unary | power
    power     := atom ("^" INT)?
    atom      := INT ("/" INT)? | IDENT | "(" poly ")"

Newlines are whitespace; ``#`` starts a comment.  Inside polynomials an
identifier is a ring variable or a jet coordinate ``<var>_<j>``; inside arc
declarations the only variable is ``t``.  Polynomials are kept as syntax
trees and evaluated against a ring by :func:`build_poly`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .field import Field
from .series import Ring, TruncatedSeries

KEYWORDS = {
    "ring", "trunc", "ideal", "point", "arc", "curvesel", "order", "wdiv", "wprep", "var",
    "eliminate", "jets", "arcsel", "level", "verify", "Q", "F",
}
COMMANDS = ("curvesel", "wdiv", "wprep", "eliminate", "jets", "arcsel", "verify")
MAX_EXPONENT = 1000

_TOKEN = re.compile(r"(#[^\n]*)|([A-Za-z][A-Za-z0-9_]*)|(\d+)|(\S)")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "sym", "path", "eof"
    text: str
    line: int
    col: int
    pos: int


def tokenize(text):
    out = []
    line, last, line_start = 1, 0, 0
    for m in _TOKEN.finditer(text):
        start = m.start()
        nl = text.count("\n", last, start)
        if nl:
            line += nl
            line_start = text.rfind("\n", 0, start) + 1
        last = start
        col = start - line_start + 1
        kind = m.lastindex
        tok = m.group(kind)
        if kind == 1 or (out and out[-1].kind == "path" and start < out[-1].pos + len(out[-1].text)):
            continue
        if kind == 4 and tok not in "+-*^/(),=[]":
            raise ParseError(f"unexpected character {tok!r}", line, col)
        out.append(Token({2: "ident", 3: "int", 4: "sym"}[kind], tok, line, col, start))
        if kind == 2 and tok == "verify":
            # the rest of the line is a file path, not tokens
            eol = text.find("\n", m.end())
            eol = len(text) if eol < 0 else eol
            raw = text[m.end():eol]
            path = raw.strip()
            if path:
                pstart = m.end() + raw.index(path)
                out.append(Token("path", path, line, pstart - line_start + 1, pstart))
    n = len(text)
    line += text.count("\n", last, n)
    line_start = text.rfind("\n", 0, n) + 1
    out.append(Token("eof", "", line, n - line_start + 1, n))
    return out


@dataclass
class Command:
    name: str
    args: dict
    text: str
    line: int


@dataclass
class Script:
    field: Field
    variables: list
    trunc: int
    ideals: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    arcs: dict = field(default_factory=dict)
    command: Command = None

    def ring(self):
        return Ring(self.field, len(self.variables), self.trunc)


_JET_NAME = re.compile(r"^(.+)_(\d+)$")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.variables = []

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col, expected)

    def advance(self):
        tok = self.tok
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text):
        return self.tok.kind in ("ident", "sym") and self.tok.text == text

    def expect(self, text):
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"found {found!r}", [repr(text)])
        return self.advance()

    def expect_int(self):
        if self.tok.kind != "int":
            self.error(f"found {self.tok.text or 'end of input'!r}", ["integer"])
        return int(self.advance().text)

    def expect_name(self, what="identifier"):
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.error(f"found {tok.text or 'end of input'!r}", [what])
        return self.advance().text

    # --- top level --------------------------------------------------------

    def script(self):
        if not self.at("ring"):
            what = self.tok.text or "end of input"
            self.error(f"undeclared ring: script must start with a ring declaration, found {what!r}",
                       ["'ring'"])
        fld, names, trunc = self.ring_decl()
        s = Script(fld, names, trunc)
        while self.at("ideal") or self.at("point") or self.at("arc"):
            kw = self.advance().text
            name_tok = self.tok
            name = self.expect_name("name")
            if name in s.ideals or name in s.points or name in s.arcs:
                self.error(f"{name!r} is already declared", tok=name_tok)
            self.expect("=")
            if kw == "ideal":
                polys = [self.poly(self.variables)]
                while self.at(","):
                    self.advance()
                    polys.append(self.poly(self.variables))
                s.ideals[name] = polys
            elif kw == "point":
                self.expect("(")
                coords = [self.rational()]
                while self.at(","):
                    self.advance()
                    coords.append(self.rational())
                self.expect(")")
                if len(coords) != len(names):
                    self.error(f"point {name!r} has {len(coords)} coordinates, ring has {len(names)}",
                               tok=name_tok)
                s.points[name] = coords
            else:
                self.expect("(")
                comps = [self.poly(["t"], jets=False)]
                while self.at(","):
                    self.advance()
                    comps.append(self.poly(["t"], jets=False))
                self.expect(")")
                if len(comps) != len(names):
                    self.error(f"arc {name!r} has {len(comps)} components, ring has {len(names)}",
                               tok=name_tok)
                s.arcs[name] = comps
        s.command = self.command(s)
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r} after the command", ["end of input"])
        return s

    def ring_decl(self):
        self.expect("ring")
        if self.at("Q"):
            self.advance()
            fld = Field(0)
        elif self.at("F"):
            self.advance()
            ptok = self.tok
            p = self.expect_int()
            try:
                fld = Field(p)
            except ValueError as exc:
                self.error(str(exc), tok=ptok)
        else:
            self.error(f"found {self.tok.text or 'end of input'!r}", ["'Q'", "'F'"])
        self.expect("[")
        names = []
        while True:
            tok = self.tok
            name = self.expect_name("variable name")
            if name in names:
                self.error(f"variable {name!r} declared twice", tok=tok)
            if name == "t" or _JET_NAME.match(name):
                self.error(f"variable name {name!r} is reserved", tok=tok)
            names.append(name)
            if self.at(","):
                self.advance()
                continue
            break
        self.expect("]")
        self.expect("trunc")
        trunc = self.expect_int()
        self.variables = names
        return fld, names, trunc

    def command(self, s):
        tok = self.tok
        if tok.kind != "ident" or tok.text not in COMMANDS:
            self.error(f"found {tok.text or 'end of input'!r}", [repr(c) for c in COMMANDS] +
                       ["'ideal'", "'point'", "'arc'"])
        name = self.advance().text
        args = {}

        def ref(table, what):
            t = self.tok
            n = self.expect_name(what)
            if n not in table:
                self.error(f"{what} {n!r} is not declared", tok=t)
            return n

        if name == "curvesel":
            args["N"] = ref(s.ideals, "ideal")
            args["Z"] = ref(s.ideals, "ideal")
            args["point"] = ref(s.points, "point")
            self.expect("order")
            args["order"] = self.expect_int()
        elif name == "wdiv":
            args["g"] = self.poly(self.variables)
            args["f"] = self.poly(self.variables)
            self.expect("var")
            args["var"] = self.variable()
        elif name == "wprep":
            args["f"] = self.poly(self.variables)
            self.expect("var")
            args["var"] = self.variable()
        elif name == "eliminate":
            args["ideal"] = ref(s.ideals, "ideal")
            self.expect("var")
            args["var"] = self.variable()
        elif name == "jets":
            args["X"] = ref(s.ideals, "ideal")
            self.expect("order")
            args["level"] = self.expect_int()
        elif name == "arcsel":
            args["X"] = ref(s.ideals, "ideal")
            args["N"] = ref(s.ideals, "ideal")
            args["Z"] = ref(s.ideals, "ideal")
            args["arc"] = ref(s.arcs, "arc")
            self.expect("level")
            args["level"] = self.expect_int()
            self.expect("order")
            args["order"] = self.expect_int()
        else:  # verify
            if self.tok.kind != "path":
                self.error("missing certificate path", ["path"])
            args["path"] = self.advance().text
        last = self.toks[self.i - 1]
        text = " ".join(self.text[tok.pos:last.pos + len(last.text)].split())
        return Command(name, args, text, tok.line)

    def variable(self):
        tok = self.tok
        name = self.expect_name("variable")
        if name not in self.variables:
            self.error(f"{name!r} is not a ring variable", tok=tok)
        return name

    def rational(self):
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        num = self.expect_int()
        den = 1
        if self.at("/"):
            self.advance()
            dtok = self.tok
            den = self.expect_int()
            if den == 0:
                self.error("zero denominator", tok=dtok)
        v = Fraction(num, den)
        return -v if neg else v

    # --- polynomials ------------------------------------------------------

    def poly(self, names, jets=True):
        node = self.term(names, jets)
        while self.at("+") or self.at("-"):
            op = "add" if self.advance().text == "+" else "sub"
            node = (op, node, self.term(names, jets))
        return node

    def term(self, names, jets):
        node = self.unary(names, jets)
        while self.at("*"):
            self.advance()
            node = ("mul", node, self.unary(names, jets))
        return node

    def unary(self, names, jets):
        if self.at("-"):
            self.advance()
            return ("neg", self.unary(names, jets))
        return self.power(names, jets)

    def power(self, names, jets):
        node = self.atom(names, jets)
        if self.at("^"):
            self.advance()
            tok = self.tok
            k = self.expect_int()
            if k > MAX_EXPONENT:
                self.error(f"exponent {k} exceeds {MAX_EXPONENT}", tok=tok)
            node = ("pow", node, k)
        return node

    def atom(self, names, jets):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            num = int(tok.text)
            if self.at("/"):
                self.advance()
                dtok = self.tok
                den = self.expect_int()
                if den == 0:
                    self.error("zero denominator", tok=dtok)
                return ("num", Fraction(num, den))
            return ("num", Fraction(num))
        if self.at("("):
            self.advance()
            node = self.poly(names, jets)
            self.expect(")")
            return node
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            name = tok.text
            m = _JET_NAME.match(name)
            if name in names or (jets and m and m.group(1) in names):
                self.advance()
                return ("var", name, tok.line, tok.col)
            self.error(f"undeclared variable {name!r}", tok=tok)
        self.error(f"found {tok.text or 'end of input'!r}", ["number", "variable", "'('", "'-'"])


def parse_script(text: str) -> Script:
    return _Parser(text).script()


def parse_poly(text, names):
    """Parse a standalone polynomial over the given variable names."""
    p = _Parser(text)
    p.variables = list(names)
    node = p.poly(p.variables)
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}", ["end of input"])
    return node


def _degree(node):
    kind = node[0]
    if kind == "num":
        return 0
    if kind == "var":
        return 1
    if kind in ("add", "sub"):
        return max(_degree(node[1]), _degree(node[2]))
    if kind == "mul":
        return _degree(node[1]) + _degree(node[2])
    if kind == "neg":
        return _degree(node[1])
    return _degree(node[1]) * node[2]


def build_poly(node, ring: Ring, names) -> TruncatedSeries:
    """Evaluate a syntax tree exactly, then view it in ``ring`` (lossy if deg > T)."""
    exact = exact_poly(node, ring, names)
    return TruncatedSeries(ring, exact.terms)


def exact_poly(node, ring: Ring, names) -> TruncatedSeries:
    """The polynomial of a syntax tree, in ``ring`` widened so nothing is truncated."""
    index = {n: i for i, n in enumerate(names)}
    big = ring.with_trunc(max(ring.trunc, _degree(node)))

    def ev(nd):
        kind = nd[0]
        if kind == "num":
            return big.const(nd[1])
        if kind == "var":
            if nd[1] not in index:
                raise ParseError(f"variable {nd[1]!r} is not available here", nd[2], nd[3])
            return big.var(index[nd[1]])
        if kind == "add":
            return ev(nd[1]) + ev(nd[2])
        if kind == "sub":
            return ev(nd[1]) - ev(nd[2])
        if kind == "mul":
            return ev(nd[1]) * ev(nd[2])
        if kind == "neg":
            return -ev(nd[1])
        return ev(nd[1]) ** nd[2]

    try:
        return ev(node)
    except ZeroDivisionError as exc:
        raise ParseError(f"coefficient is not in {ring.field.describe()}: {exc}") from exc
