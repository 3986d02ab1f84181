"""Polynomial expression parser: integers, rationals, variables, + - * ^ and parentheses."""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .polys import p_add, p_const, p_mul, p_neg, p_pow, p_sub

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("sym", sym, start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, names, dom):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.names = list(names)
        self.nvars = len(names)
        self.dom = dom

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg, expected=()):
        _, _, pos = self.peek()
        raise ParseError(f"{msg} at column {pos + 1} in {self.text!r}", expected=expected)

    def expr(self):
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            t = self.term()
            acc = p_neg(t, self.dom) if val == "-" else t
        else:
            acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                t = self.term()
                acc = p_add(acc, t, self.dom) if val == "+" else p_sub(acc, t, self.dom)
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                acc = p_mul(acc, self.factor(), self.dom)
            elif kind == "sym" and val == "/":
                self.take()
                kind2, den, _ = self.peek()
                if kind2 != "num":
                    self.fail("division only by integer literals", ("integer",))
                self.take()
                if den == 0:
                    self.fail("division by zero")
                inv = self.dom.convert(Fraction(1, den)) if self.dom.is_field else None
                if inv is None:
                    self.fail("division is not available over ZZ")
                acc = {m: self.dom.norm(c * inv) for m, c in acc.items()}
                acc = {m: c for m, c in acc.items() if c}
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, e, _ = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer", ("integer",))
            base = p_pow(base, e, self.dom, self.nvars)
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return p_const(self.dom.convert(val), self.nvars)
        if kind == "name":
            if val not in self.names:
                self.fail(f"unknown variable {val!r}", tuple(self.names))
            self.take()
            k = self.names.index(val)
            return {tuple(1 if j == k else 0 for j in range(self.nvars)): self.dom.convert(1)}
        if kind == "sym" and val == "(":
            self.take()
            e = self.expr()
            kind, val, _ = self.take()
            if val != ")":
                self.i -= 1
                self.fail("unbalanced parenthesis", (")",))
            return e
        self.fail("unexpected token", ("integer", "variable", "("))


def parse_poly(text: str, names, dom) -> dict:
    p = _Parser(text, names, dom)
    out = p.expr()
    if p.i != len(p.toks):
        p.fail("trailing input")
    return out
