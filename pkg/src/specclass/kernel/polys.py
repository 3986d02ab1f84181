"""Sparse polynomial and free-module vector arithmetic.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
A vector of a free module S^N is a tuple of N polynomials.  Coefficients
live in one of the domains below; all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class IntegerDomain:
    name = "ZZ"
    is_field = False
    characteristic = 0

    def convert(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def norm(self, x):
        return x

    def inv(self, x):
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in ZZ")

    def __eq__(self, other):
        return type(other) is IntegerDomain

    def __hash__(self):
        return hash("ZZ")


class RationalField:
    name = "QQ"
    is_field = True
    characteristic = 0

    def convert(self, x):
        return Fraction(x)

    def norm(self, x):
        return x

    def inv(self, x):
        return 1 / Fraction(x)

    def __eq__(self, other):
        return type(other) is RationalField

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    is_field = True

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        return pow(x, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


ZZ = IntegerDomain()
QQ = RationalField()


@lru_cache(maxsize=None)
def gkey(m: tuple) -> tuple:
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def p_const(c, nvars: int) -> dict:
    return {(0,) * nvars: c} if c else {}


def p_add(a: dict, b: dict, dom) -> dict:
    r = dict(a)
    norm = dom.norm
    for m, c in b.items():
        v = norm(r.get(m, 0) + c)
        if v:
            r[m] = v
        else:
            r.pop(m, None)
    return r


def p_sub(a: dict, b: dict, dom) -> dict:
    r = dict(a)
    norm = dom.norm
    for m, c in b.items():
        v = norm(r.get(m, 0) - c)
        if v:
            r[m] = v
        else:
            r.pop(m, None)
    return r


def p_neg(a: dict, dom) -> dict:
    return {m: dom.norm(-c) for m, c in a.items()}


def p_scale(a: dict, c, dom) -> dict:
    if not c:
        return {}
    norm = dom.norm
    out = {}
    for m, v in a.items():
        w = norm(v * c)
        if w:
            out[m] = w
    return out


def p_mul_term(a: dict, mono: tuple, c, dom) -> dict:
    norm = dom.norm
    out = {}
    for m, v in a.items():
        w = norm(v * c)
        if w:
            out[tuple(x + y for x, y in zip(m, mono))] = w
    return out


def p_mul(a: dict, b: dict, dom) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    norm = dom.norm
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = norm(out.get(m, 0) + c1 * c2)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def p_pow(a: dict, k: int, dom, nvars: int) -> dict:
    out = p_const(dom.convert(1), nvars)
    for _ in range(k):
        out = p_mul(out, a, dom)
    return out


def p_lead(a: dict):
    m = max(a, key=gkey)
    return m, a[m]


def p_degree(a: dict) -> int:
    return max((sum(m) for m in a), default=-1)


def p_is_const(a: dict) -> bool:
    return all(not any(m) for m in a)


def p_const_value(a: dict):
    if not a:
        return 0
    (m, c), = a.items()
    return c


def format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c)) if isinstance(c, Fraction) else str(c)


def p_format(a: dict, names: tuple) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=gkey, reverse=True):
        c = a[m]
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
        )
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coeff(mag)}*{mono}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def v_zero(n: int) -> tuple:
    return tuple({} for _ in range(n))


def v_is_zero(v) -> bool:
    return not any(v)


def v_add(a, b, dom) -> tuple:
    return tuple(p_add(x, y, dom) for x, y in zip(a, b))


def v_sub(a, b, dom) -> tuple:
    return tuple(p_sub(x, y, dom) for x, y in zip(a, b))


def v_scale(a, f: dict, dom) -> tuple:
    return tuple(p_mul(x, f, dom) for x in a)


def v_unit(i: int, n: int, nvars: int, dom) -> tuple:
    one = dom.convert(1)
    return tuple(p_const(one, nvars) if j == i else {} for j in range(n))


def v_lead(v):
    """Leading term under position-over-term order (component 0 largest)."""
    for i, p in enumerate(v):
        if p:
            m = max(p, key=gkey)
            return i, m, p[m]
    return None


def v_key(v) -> tuple:
    """Hashable canonical rendering of a vector."""
    return tuple(tuple(sorted(p.items())) for p in v)
