"""The workspace language: named rings, ideals, primes, modules, sets and G-sequences.

    ring R = QQ[x,y]
    ideal I = (x^2, x*y)
    prime p = (x)
    prime q = (x^2 + y^2 + 1) assume prime
    module M = coker [[x, y]]        # rows are generators, columns relations
    set S = closure{p, (x, y)}
    points P = {p, (y)}
    gseq Y = (S, closure{}) for M

Statements may be separated by newlines or ';'.  Every binding lives in the ring
declared most recently before it; ``use R`` switches back to an earlier ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..classify import GSequence, PointSet
from ..errors import NotPrime, ParseError, SpecclassError
from ..kernel.rings import Ideal, Ring
from ..modules.presentation import ModulePresentation
from ..spectrum import ASSERTED, PrimeIdeal, SpecSet

KEYWORDS = ("ring", "ideal", "prime", "module", "set", "points", "gseq")

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|\S")


@dataclass
class Token:
    kind: str  # name, int, sym, eof
    text: str
    pos: int
    line: int
    col: int


def tokenize(text: str) -> list:
    toks = []
    line, line_start = 1, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, line_start = line + 1, i + 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        m = _TOKEN.match(text, i)
        s = m.group(0)
        kind = "int" if s.isdigit() else "name" if (s[0].isalpha() or s[0] == "_") else "sym"
        toks.append(Token(kind, s, i, line, i - line_start + 1))
        i = m.end()
    toks.append(Token("eof", "", len(text), line, len(text) - line_start + 1))
    return toks


@dataclass
class Binding:
    kind: str
    name: str
    ring_name: str | None
    value: object
    line: int = 0
    col: int = 0
    source: str = "<input>"
    extra: dict = field(default_factory=dict)

    @property
    def provenance(self) -> str:
        return f"{self.source}:{self.line}:{self.col}"


def _module_text(M: ModulePresentation) -> str:
    return "coker [" + ", ".join("[" + ", ".join(row) + "]" for row in M.rows_display()) + "]"


def prime_text(p: PrimeIdeal) -> str:
    return "(" + ", ".join(p.generator_strings()) + ")"


def specset_text(S: SpecSet) -> str:
    return "closure{" + ", ".join(prime_text(p) for p in S.primes) + "}"


def points_text(P: PointSet) -> str:
    return "{" + ", ".join(prime_text(p) for p in P.primes) + "}"


class Workspace:
    """Named bindings with source provenance."""

    def __init__(self, source: str = "<input>"):
        self.source = source
        self.bindings: dict = {}

    def __contains__(self, name):
        return name in self.bindings

    def get(self, name: str, kind: str | None = None):
        b = self.bindings.get(name)
        if b is None or (kind is not None and b.kind != kind):
            return None
        return b

    def value(self, name: str, kind: str):
        b = self.get(name, kind)
        if b is None:
            raise KeyError(f"no {kind} named {name!r}")
        return b.value

    def of_kind(self, kind: str) -> list:
        return [b for b in self.bindings.values() if b.kind == kind]

    def add(self, b: Binding):
        if b.name in self.bindings:
            raise ParseError(f"name {b.name!r} is already bound", b.line, b.col)
        self.bindings[b.name] = b

    def provenance(self) -> dict:
        return {name: b.provenance for name, b in self.bindings.items()}

    # printing --------------------------------------------------------------

    def binding_text(self, b: Binding) -> str:
        v = b.value
        if b.kind == "ring":
            return f"ring {b.name} = {v}"
        if b.kind == "ideal":
            return f"ideal {b.name} = (" + ", ".join(v.generator_strings()) + ")"
        if b.kind == "prime":
            tail = " assume prime" if v.certification == ASSERTED else ""
            return f"prime {b.name} = {prime_text(v)}{tail}"
        if b.kind == "module":
            return f"module {b.name} = {_module_text(v)}"
        if b.kind == "set":
            return f"set {b.name} = {specset_text(v)}"
        if b.kind == "points":
            return f"points {b.name} = {points_text(v)}"
        if b.kind == "gseq":
            sets = ", ".join(specset_text(S) for S in v.sets)
            return f"gseq {b.name} = ({sets}) for {b.extra['generator']}"
        raise ValueError(b.kind)

    def to_text(self) -> str:
        lines = []
        current = None
        for b in self.bindings.values():
            if b.kind == "ring":
                current = b.name
            elif b.ring_name != current:
                lines.append(f"use {b.ring_name}")
                current = b.ring_name
            lines.append(self.binding_text(b))
        return "\n".join(lines) + "\n"

    def signature(self) -> list:
        """A canonical description of every binding, for equality tests."""
        out = []
        for b in self.bindings.values():
            out.append((b.kind, b.name, b.ring_name, self.binding_text(b)))
        return out


class _Parser:
    def __init__(self, text: str, source: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.ws = Workspace(source)
        self.ring_name: str | None = None

    # token helpers ------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg: str, tok: Token | None = None, expected=()):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, expected)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "eof":
            self.fail(f"unexpected {t.text or 'end of input'!r}", t, (repr(text),))
        return self.take()

    def expect_name(self, what: str = "name") -> Token:
        t = self.peek()
        if t.kind != "name":
            self.fail(f"unexpected {t.text or 'end of input'!r}", t, (what,))
        return self.take()

    def ring(self, tok: Token) -> Ring:
        if self.ring_name is None:
            self.fail("no ring declared before this statement", tok, ("ring NAME = ...",))
        return self.ws.bindings[self.ring_name].value

    # statements -------------------------------------------------------

    def parse(self) -> Workspace:
        while self.peek().kind != "eof":
            if self.peek().text == ";":
                self.take()
                continue
            self.statement()
        return self.ws

    def statement(self):
        t = self.peek()
        if t.text == "use":
            self.take()
            n = self.expect_name("ring name")
            b = self.ws.get(n.text, "ring")
            if b is None:
                self.fail(f"unknown ring {n.text!r}", n)
            self.ring_name = n.text
            return
        if t.kind != "name" or t.text not in KEYWORDS:
            self.fail(f"unexpected {t.text!r}", t, KEYWORDS + ("use",))
        self.take()
        name = self.expect_name()
        self.expect("=")
        handler = getattr(self, "stmt_" + t.text)
        kind = t.text
        value, extra = handler(t)
        ring_name = name.text if kind == "ring" else self.ring_name
        self.ws.add(Binding(kind, name.text, ring_name, value, name.line, name.col, self.ws.source, extra))
        if kind == "ring":
            self.ring_name = name.text

    def stmt_ring(self, kw):
        start = self.peek()
        self.expect_name("base ring (ZZ, QQ, GF(p), ZZ/n)")
        if self.peek().text == "(":
            self.take()
            if self.peek().kind != "int":
                self.fail("expected a characteristic", expected=("integer",))
            self.take()
            self.expect(")")
        if self.peek().text == "/" and self.peek(1).kind == "int":
            self.take()
            self.take()
        if self.peek().text == "[":
            self.skip_balanced("[", "]")
        if self.peek().text == "/" and self.peek(1).text == "(":
            self.take()
            self.skip_balanced("(", ")")
        end = self.toks[self.i - 1]
        text = self.text[start.pos:end.pos + len(end.text)]
        try:
            return Ring.from_string(text), {}
        except (ParseError, ValueError, SpecclassError) as exc:
            detail = exc.message if isinstance(exc, ParseError) else str(exc)
            self.fail(f"unknown ring {text!r}: {detail}", start, ("ZZ", "QQ", "ZZ/n", "GF(p)", "QQ[x,y]/(f)"))

    def skip_balanced(self, open_: str, close: str):
        depth = 0
        while True:
            t = self.take()
            if t.kind == "eof":
                self.fail(f"unbalanced {open_!r}", t, (repr(close),))
            if t.text == open_:
                depth += 1
            elif t.text == close:
                depth -= 1
                if depth == 0:
                    return

    def poly(self, ring: Ring):
        """A polynomial expression, ending at a top-level ',' or closing bracket."""
        start = self.peek()
        first = self.i
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                break
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                if depth == 0:
                    break
                depth -= 1
            elif t.text == "," and depth == 0:
                break
            self.take()
        if self.i == first:
            self.fail("expected a polynomial", start, ("polynomial",))
        end = self.toks[self.i - 1]
        text = self.text[start.pos:end.pos + len(end.text)]
        try:
            return ring.element(text)
        except ParseError as exc:
            self.fail(f"bad polynomial {text!r}: {exc.message}", start, exc.expected or ("polynomial",))
        except (ValueError, ZeroDivisionError, SpecclassError) as exc:
            self.fail(f"bad polynomial {text!r}: {exc}", start, ("polynomial",))

    def poly_list(self, ring: Ring, close: str) -> list:
        out = []
        if self.peek().text == close:
            return out
        while True:
            out.append(self.poly(ring))
            if self.peek().text == ",":
                self.take()
                continue
            if self.peek().text != close:
                self.fail(f"unexpected {self.peek().text or 'end of input'!r}", expected=("','", repr(close)))
            return out

    def ideal_literal(self, ring: Ring) -> Ideal:
        self.expect("(")
        gens = self.poly_list(ring, ")")
        self.expect(")")
        return ring.ideal(*gens)

    def stmt_ideal(self, kw):
        return self.ideal_literal(self.ring(kw)), {}

    def prime_literal(self, ring: Ring, assume: bool = False) -> PrimeIdeal:
        tok = self.peek()
        ideal = self.ideal_literal(ring)
        if self.peek().text == "assume" and self.peek(1).text == "prime":
            self.take()
            self.take()
            assume = True
        try:
            return PrimeIdeal.certify(ideal, assume=assume)
        except NotPrime as exc:
            self.fail(str(exc), tok, ("assume prime",))

    def stmt_prime(self, kw):
        return self.prime_literal(self.ring(kw)), {}

    def stmt_module(self, kw):
        ring = self.ring(kw)
        kwt = self.expect_name("'coker'")
        if kwt.text != "coker":
            self.fail(f"unexpected {kwt.text!r}", kwt, ("'coker'",))
        self.expect("[")
        if self.peek().text == "]":
            self.take()
            return ModulePresentation.zero(ring), {}
        rows = []
        width = None
        while True:
            rt = self.expect("[")
            row = self.poly_list(ring, "]")
            self.expect("]")
            if width is None:
                width = len(row)
            elif len(row) != width:
                self.fail(f"arity mismatch: row has {len(row)} entries, expected {width}", rt)
            rows.append(row)
            if self.peek().text == ",":
                self.take()
                continue
            self.expect("]")
            break
        cols = [tuple(rows[i][j].poly for i in range(len(rows))) for j in range(width)]
        return ModulePresentation(ring, len(rows), cols), {}

    def prime_ref(self, ring: Ring) -> PrimeIdeal:
        t = self.peek()
        if t.kind == "name":
            self.take()
            b = self.ws.get(t.text, "prime")
            if b is None:
                self.fail(f"unknown prime {t.text!r}", t, ("prime name", "(generators)"))
            if b.value.ring != ring:
                self.fail(f"prime {t.text!r} lives in another ring", t)
            return b.value
        if t.text == "(":
            return self.prime_literal(ring)
        self.fail(f"unexpected {t.text or 'end of input'!r}", t, ("prime name", "(generators)"))

    def prime_refs(self, ring: Ring, close: str) -> list:
        out = []
        if self.peek().text == close:
            return out
        while True:
            out.append(self.prime_ref(ring))
            if self.peek().text == ",":
                self.take()
                continue
            if self.peek().text != close:
                self.fail(f"unexpected {self.peek().text or 'end of input'!r}", expected=("','", repr(close)))
            return out

    def specset(self, ring: Ring) -> SpecSet:
        t = self.peek()
        if t.kind == "name" and t.text != "closure":
            self.take()
            b = self.ws.get(t.text, "set")
            if b is None:
                self.fail(f"unknown set {t.text!r}", t, ("set name", "closure{...}"))
            return b.value
        if t.text != "closure":
            self.fail(f"unexpected {t.text or 'end of input'!r}", t, ("set name", "closure{...}"))
        self.take()
        self.expect("{")
        primes = self.prime_refs(ring, "}")
        self.expect("}")
        return SpecSet(ring, primes)

    def stmt_set(self, kw):
        return self.specset(self.ring(kw)), {}

    def point_set(self, ring: Ring) -> PointSet:
        self.expect("{")
        primes = self.prime_refs(ring, "}")
        self.expect("}")
        return PointSet(ring, primes)

    def stmt_points(self, kw):
        return self.point_set(self.ring(kw)), {}

    def stmt_gseq(self, kw):
        ring = self.ring(kw)
        self.expect("(")
        sets = []
        while True:
            sets.append(self.specset(ring))
            if self.peek().text == ",":
                self.take()
                continue
            self.expect(")")
            break
        ft = self.expect_name("'for'")
        if ft.text != "for":
            self.fail(f"unexpected {ft.text!r}", ft, ("'for'",))
        g = self.expect_name("module or ring name")
        if g.text == self.ring_name:
            G = ModulePresentation.free(ring, 1)
        else:
            b = self.ws.get(g.text, "module")
            if b is None:
                self.fail(f"unknown module {g.text!r}", g, ("module name",))
            G = b.value
        return GSequence(sets, G, ring), {"generator": g.text}


def parse_workspace(text: str, source: str = "<input>") -> Workspace:
    return _Parser(text, source).parse()


def _fragment(text: str, ring: Ring, method: str, ws=None):
    """Parse a standalone literal (prime, set, points) in the given ring."""
    p = _Parser(text, "<argument>")
    if ws is not None:
        p.ws = ws
    value = getattr(p, method)(ring)
    if p.peek().kind != "eof":
        p.fail(f"trailing input {p.peek().text!r}")
    return value


def parse_prime(text: str, ring: Ring, ws: Workspace | None = None) -> PrimeIdeal:
    if ws is not None and ws.get(text.strip(), "prime"):
        return ws.value(text.strip(), "prime")
    return _fragment(text, ring, "prime_literal", ws)


def parse_specset(text: str, ring: Ring, ws: Workspace | None = None) -> SpecSet:
    if ws is not None and ws.get(text.strip(), "set"):
        return ws.value(text.strip(), "set")
    return _fragment(text, ring, "specset", ws)


def parse_points(text: str, ring: Ring, ws: Workspace | None = None) -> PointSet:
    if ws is not None and ws.get(text.strip(), "points"):
        return ws.value(text.strip(), "points")
    return _fragment(text, ring, "point_set", ws)
