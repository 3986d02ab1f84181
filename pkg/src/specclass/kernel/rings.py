"""Ring descriptors, elements and ideals.

A ring is Base[vars]/Q with Base one of ZZ, ZZ/n, GF(p), QQ.  Computation
always happens in the ambient polynomial ring S = Base'[vars], where Base' is
ZZ for ZZ and ZZ/n (the modulus n is folded into Q) and the coefficient field
otherwise.  Ideals of R are represented by their preimages in S, so canonical
bases are unique and ideal equality is basis equality.
"""

from __future__ import annotations

import re
from fractions import Fraction

import sympy

from .._once import new_lock, once_property
from ..errors import ParseError, RingMismatch, UnsupportedRing
from .groebner import FieldBasis, IntegerBasis
from .parse import parse_poly
from .polys import (
    QQ,
    ZZ,
    PrimeField,
    p_add,
    p_const,
    p_format,
    p_mul,
    p_neg,
    p_pow,
    p_sub,
    v_key,
)

_RING_RE = re.compile(
    r"^\s*(?P<base>ZZ|Z|QQ|Q|GF\(\s*\d+\s*\)|F_?\d+|ZZ?\s*/\s*\d+)"
    r"\s*(?:\[(?P<vars>[^\]]*)\])?\s*(?:/\s*\((?P<quot>.*)\))?\s*$"
)


def split_top_level(text: str, sep: str = ",") -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts]


class Ring:
    """Commutative noetherian ring Base[vars]/quotient."""

    def __init__(self, base: str = "QQ", variables=(), quotient=(), modulus: int | None = None):
        base = base.replace(" ", "")
        if base in ("Z", "ZZ"):
            label, n = "ZZ", None
        elif base in ("Q", "QQ"):
            label, n = "QQ", None
        elif base.startswith("GF(") or base.startswith("F"):
            label, n = "GF", int(re.sub(r"\D", "", base))
        elif "/" in base:
            label, n = "ZZ/", int(base.split("/")[1])
        else:
            raise ParseError(f"unknown base ring {base!r}", expected=("ZZ", "QQ", "ZZ/n", "GF(p)"))
        if modulus is not None:
            n = modulus
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if label == "GF" and (n is None or not sympy.isprime(n)):
            raise ValueError(f"GF({n}) needs a prime characteristic")
        if label == "ZZ/" and (n is None or n < 2):
            raise ValueError("ZZ/n needs n >= 2")
        self.base = label
        self.modulus = n
        self.variables = variables
        self.nvars = len(variables)
        self._lock = new_lock()

        if label == "ZZ":
            self.dom, self.engine = ZZ, ("int" if not variables else None)
        elif label == "QQ":
            self.dom, self.engine = QQ, "field"
        elif label == "GF":
            self.dom, self.engine = PrimeField(n), "field"
        elif not variables:
            self.dom, self.engine = ZZ, "int"
        elif sympy.isprime(n):
            self.dom, self.engine = PrimeField(n), "field"
        else:
            self.dom, self.engine = ZZ, None

        qpolys = []
        if label == "ZZ/" and self.engine == "int":
            qpolys.append({(): n})
        for q in quotient:
            if isinstance(q, str):
                qpolys.append(parse_poly(q, variables, self.dom))
            elif isinstance(q, RingElement):
                qpolys.append(dict(q.poly))
            else:
                qpolys.append(dict(q))
        self._qpolys = [q for q in qpolys if q]
        self._user_quotient = tuple(quotient)

    # construction helpers -------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> "Ring":
        m = _RING_RE.match(text)
        if not m:
            raise ParseError(f"cannot parse ring {text!r}", expected=("ZZ", "QQ[x,y]", "ZZ/n", "GF(p)[x]/(f)"))
        names = tuple(v.strip() for v in (m.group("vars") or "").split(",") if v.strip())
        quot = split_top_level(m.group("quot")) if m.group("quot") else []
        return cls(m.group("base"), names, quot)

    def extend(self, name: str) -> "Ring":
        """The ring with one extra trailing variable (same base and quotient)."""
        r = Ring.__new__(Ring)
        r.__dict__.update({k: v for k, v in self.__dict__.items() if not k.startswith("_once_")})
        r._lock = new_lock()
        r.variables = self.variables + (name,)
        r.nvars = self.nvars + 1
        r._qpolys = [{m + (0,): c for m, c in q.items()} for q in self._qpolys]
        return r

    # identity -------------------------------------------------------------

    @property
    def base_label(self) -> str:
        if self.base in ("ZZ", "QQ"):
            return self.base
        if self.base == "GF":
            return f"GF({self.modulus})"
        return f"ZZ/{self.modulus}"

    def __str__(self):
        s = self.base_label
        if self.variables:
            s += "[" + ",".join(self.variables) + "]"
        q = self.quotient_display()
        if q:
            s += "/(" + ", ".join(q) + ")"
        return s

    def __repr__(self):
        return f"Ring({str(self)!r})"

    def quotient_display(self) -> list:
        if self.engine is None:
            return [p_format(q, self.variables) for q in self._qpolys]
        gens = [e[0] for e in self.qbasis.elements]
        if self.base == "ZZ/" and not self.variables:
            gens = [g for g in gens if g != {(): self.modulus}]
        return [p_format(g, self.variables) for g in gens]

    def _identity(self):
        qk = self.qbasis.key() if self.engine else tuple(v_key((q,)) for q in self._qpolys)
        return (self.base, self.modulus, self.variables, qk)

    def __eq__(self, other):
        return isinstance(other, Ring) and (self is other or self._identity() == other._identity())

    def __hash__(self):
        return hash(self._identity())

    # ambient machinery ----------------------------------------------------

    def require_engine(self):
        if self.engine is None:
            raise UnsupportedRing(
                f"{self}: Groebner/Hermite computations need ZZ, ZZ/n without variables, "
                "or field coefficients"
            )

    def make_basis(self, gens, rank: int, with_quotient: bool = True):
        self.require_engine()
        gens = list(gens)
        if with_quotient:
            gens += self.quotient_vectors(rank)
        if self.engine == "int":
            return IntegerBasis(gens, rank)
        return FieldBasis(gens, rank, self.dom, self.nvars)

    def quotient_vectors(self, rank: int) -> list:
        out = []
        for q in self._qpolys:
            for i in range(rank):
                out.append(tuple(q if j == i else {} for j in range(rank)))
        return out

    @once_property
    def qbasis(self):
        return self.make_basis([(q,) for q in self._qpolys], 1, with_quotient=False)

    def normal(self, p: dict) -> dict:
        if not self._qpolys:
            return p
        self.require_engine()
        return self.qbasis.reduce((p,))[0]

    @property
    def is_principal_class(self) -> bool:
        """ZZ, ZZ/n, fields, k[x] and their quotients: every module has an SNF."""
        return self.engine == "int" or (self.engine == "field" and self.nvars <= 1)

    @property
    def is_pid(self) -> bool:
        if self.engine == "int":
            return not self._qpolys
        return self.engine == "field" and self.nvars <= 1 and not self._qpolys

    @property
    def quotient_polys(self) -> list:
        return [dict(q) for q in self._qpolys]

    def is_field(self) -> bool:
        if self.engine == "field" and self.nvars == 0:
            return True
        return False

    # elements -------------------------------------------------------------

    def __call__(self, x) -> "RingElement":
        return self.element(x)

    def element(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.ring != self:
                raise RingMismatch(f"element of {x.ring} used in {self}")
            return x
        if isinstance(x, str):
            return RingElement(self, parse_poly(x, self.variables, self.dom))
        if isinstance(x, dict):
            return RingElement(self, x)
        if isinstance(x, (int, Fraction)):
            return RingElement(self, p_const(self.dom.convert(x), self.nvars))
        raise TypeError(f"cannot convert {x!r} into {self}")

    def parse(self, text: str) -> "RingElement":
        return self.element(text)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, {})

    @property
    def one(self) -> "RingElement":
        return self.element(1)

    @property
    def gens(self) -> list:
        return [self.element(v) for v in self.variables]

    def ideal(self, *gens) -> "Ideal":
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = tuple(gens[0])
        return Ideal(self, [self.element(g) for g in gens])

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, [])

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, [self.one])


class RingElement:
    __slots__ = ("ring", "poly")

    def __init__(self, ring: Ring, poly: dict):
        self.ring = ring
        self.poly = ring.normal(poly)

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        return self.ring.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, p_add(self.poly, other.poly, self.ring.dom))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, p_sub(self.poly, other.poly, self.ring.dom))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, p_mul(self.poly, other.poly, self.ring.dom))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, p_neg(self.poly, self.ring.dom))

    def __pow__(self, k: int):
        return RingElement(self.ring, p_pow(self.poly, k, self.ring.dom, self.ring.nvars))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (RingMismatch, TypeError):
            return False
        return self.poly == other.poly

    def __hash__(self):
        return hash(v_key((self.poly,)))

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return bool(self.poly)

    def __str__(self):
        return p_format(self.poly, self.ring.variables)

    def __repr__(self):
        return f"<{self} in {self.ring}>"


class Ideal:
    """Finitely generated ideal; the canonical basis is computed lazily, once."""

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        self.gens = tuple(g for g in (ring.element(g) for g in gens))
        self._lock = new_lock()

    @once_property
    def basis(self):
        return self.ring.make_basis([(g.poly,) for g in self.gens], 1)

    def canonical_basis(self) -> list:
        out = []
        for e in self.basis.elements:
            r = RingElement(self.ring, e[0])
            if r:
                out.append(r)
        return out

    def preimage_polys(self) -> list:
        """Canonical basis of the preimage ideal in the ambient ring S (includes the quotient)."""
        return [e[0] for e in self.basis.elements]

    def contains(self, f) -> bool:
        f = self.ring.element(f)
        return self.basis.contains((f.poly,))

    def __contains__(self, f):
        return self.contains(f)

    def is_unit(self) -> bool:
        return self.basis.is_unit_ideal()

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.gens)

    def issubset(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return False
        return self.basis.key() == other.basis.key()

    def __hash__(self):
        return hash(self.basis.key())

    def generator_strings(self) -> list:
        gens = self.canonical_basis()
        return [str(g) for g in gens] if gens else ["0"]

    def __str__(self):
        return "(" + ", ".join(self.generator_strings()) + ")"

    def __repr__(self):
        return f"<Ideal {self} in {self.ring}>"
