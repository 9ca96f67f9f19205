"""Multivariate polynomials over exact fields with a weighted grevlex order.

Polynomials are stored as ``{exponent tuple: coefficient}`` dictionaries
without zero coefficients.  The module-level helpers prefixed ``p`` work on
those raw dictionaries and are what the Gröbner and linear-algebra layers
use; :class:`Polynomial` is the immutable public wrapper.
"""

from __future__ import annotations

import re

from .errors import NotDivisible, NotHomogeneous, ParseError, RingMismatch
from .fields import Field, GaloisField, PrimeField


# -- monomials --------------------------------------------------------------

def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mon_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


# -- raw polynomial dictionaries --------------------------------------------

def padd(F: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = F.add(out.get(m, F.zero), c)
        if v == F.zero:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def psub(F: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = F.sub(out.get(m, F.zero), c)
        if v == F.zero:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def pscale(F: Field, c, a: dict) -> dict:
    if c == F.zero:
        return {}
    return {m: F.mul(c, x) for m, x in a.items()}


def pmul(F: Field, a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    zero = F.zero
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = F.add(out.get(m, zero), F.mul(ca, cb))
            if v == zero:
                out.pop(m, None)
            else:
                out[m] = v
    return out


def pmul_term(F: Field, a: dict, c, mon) -> dict:
    return {tuple(x + y for x, y in zip(m, mon)): F.mul(c, x) for m, x in a.items()}


# -- rings ------------------------------------------------------------------

class PolyRing:
    """k[x_1, ..., x_n] with positive integer weights and weighted grevlex."""

    def __init__(self, field: Field, names, weights=None):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        weights = tuple(int(w) for w in (weights or [1] * len(names)))
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        self.field = field
        self.names = names
        self.weights = weights
        self.nvars = len(names)
        self._keys: dict = {}
        self._monos: dict = {}

    def __repr__(self):
        w = "" if set(self.weights) == {1} else f", weights={list(self.weights)}"
        return f"{self.field!r}[{', '.join(self.names)}{w}]"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.weights == other.weights)

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    def wdeg(self, mon) -> int:
        return sum(e * w for e, w in zip(mon, self.weights))

    def key(self, mon):
        """Sort key: larger key means larger monomial."""
        k = self._keys.get(mon)
        if k is None:
            k = (self.wdeg(mon), tuple(-e for e in reversed(mon)))
            self._keys[mon] = k
        return k

    def monomials(self, d: int) -> tuple:
        """All monomials of weighted degree d, largest first."""
        if d < 0:
            return ()
        got = self._monos.get(d)
        if got is not None:
            return got
        out = []

        def rec(i, rest, acc):
            if i == self.nvars - 1:
                if rest % self.weights[i] == 0:
                    out.append(tuple(acc + [rest // self.weights[i]]))
                return
            for e in range(rest // self.weights[i] + 1):
                rec(i + 1, rest - e * self.weights[i], acc + [e])

        rec(0, d, [])
        out.sort(key=self.key, reverse=True)
        got = tuple(out)
        self._monos[d] = got
        return got

    @property
    def unit_mon(self):
        return (0,) * self.nvars

    # -- constructors -----------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.unit_mon: self.field.one})

    def constant(self, c) -> "Polynomial":
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {self.unit_mon: c})

    def var(self, name_or_index) -> "Polynomial":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mon: self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} is not {self}")
            return value
        if isinstance(value, str):
            return parse_polynomial(self, value)
        if isinstance(value, dict):
            return Polynomial(self, {m: c for m, c in value.items() if c != self.field.zero})
        return self.constant(self.field.from_int(value))

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.names, self.weights)

    def describe(self) -> dict:
        return {"field": self.field.describe(), "variables": list(self.names), "weights": list(self.weights)}


class Polynomial:
    """Immutable polynomial; arithmetic returns new objects."""

    __slots__ = ("ring", "d")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self.d = d

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.d

    def __bool__(self):
        return bool(self.d)

    @property
    def terms(self):
        """(coefficient, monomial) pairs in strictly decreasing order."""
        return [(self.d[m], m) for m in sorted(self.d, key=self.ring.key, reverse=True)]

    def leading_monomial(self):
        return max(self.d, key=self.ring.key) if self.d else None

    def leading_coefficient(self):
        m = self.leading_monomial()
        return self.d[m] if m is not None else self.ring.field.zero

    def coefficient(self, mon):
        return self.d.get(tuple(mon), self.ring.field.zero)

    def degree(self) -> int | None:
        """Largest weighted degree of a term (None for zero)."""
        return max(map(self.ring.wdeg, self.d)) if self.d else None

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(m) for m in self.d}) <= 1

    def homogeneous_degree(self) -> int | None:
        degs = {self.ring.wdeg(m) for m in self.d}
        if len(degs) > 1:
            raise NotHomogeneous(f"{self} is not homogeneous")
        return degs.pop() if degs else None

    def constant_term(self):
        return self.d.get(self.ring.unit_mon, self.ring.field.zero)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, int):
            return self.ring.constant(self.ring.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, padd(self.ring.field, self.d, other.d))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, psub(self.ring.field, self.d, other.d))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.d.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, pmul(self.ring.field, self.d, other.d))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.ring, pscale(self.ring.field, c, self.d))

    def substitute(self, mapping) -> "Polynomial":
        """Replace variables (by name or index) with polynomials of the same ring."""
        images = []
        for i, nm in enumerate(self.ring.names):
            v = mapping.get(nm, mapping.get(i))
            images.append(self.ring.var(i) if v is None else self._coerce(v))
        out = self.ring.zero()
        for c, mon in self.terms:
            term = self.ring.constant(c)
            for img, e in zip(images, mon):
                if e:
                    term = term * img**e
            out = out + term
        return out

    def map_coefficients(self, ring: PolyRing, fn) -> "Polynomial":
        return ring({m: fn(c) for m, c in self.d.items()})

    # -- comparison / display -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(self.ring.field.from_int(other))
        return isinstance(other, Polynomial) and self.ring == other.ring and self.d == other.d

    def __hash__(self):
        return hash(frozenset(self.d.items()))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self.ring, self.d)


# -- printing ---------------------------------------------------------------

def _format_coeff(F: Field, c):
    """(sign, magnitude text) with symmetric representatives in prime fields."""
    if isinstance(F, PrimeField):
        if c > F.p // 2:
            return "-", str(F.p - c)
        return "+", str(c)
    if isinstance(F, GaloisField):
        if c < F.p:
            return _format_coeff(PrimeField(F.p), c)
        return "+", f"({F.format(c)})"
    if c < 0:
        return "-", str(-c)
    return "+", str(c)


def format_monomial(ring: PolyRing, mon) -> str:
    parts = []
    for nm, e in zip(ring.names, mon):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def format_polynomial(ring: PolyRing, d: dict) -> str:
    if not d:
        return "0"
    out = []
    for m in sorted(d, key=ring.key, reverse=True):
        sign, mag = _format_coeff(ring.field, d[m])
        mono = format_monomial(ring, m)
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*|\+|-|\(|\)|,|;|\[|\]))")


def tokenize(text: str, line=None, offset=0):
    """Tokens as (kind, value, column, spaced_before)."""
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, bad + 1 + offset)
        spaced = m.start(0) != m.start(m.lastindex) or pos == 0
        col = m.start(m.lastindex) + 1 + offset
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), col, spaced))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), col, spaced))
        else:
            toks.append(("op", m.group(3), col, spaced))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, ring: PolyRing, toks, line=None):
        self.ring, self.toks, self.i, self.line = ring, toks, 0, line

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2] if tok else None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def expr(self):
        F = self.ring.field
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.at_op("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def starts_operand(self, tok):
        return tok is not None and (tok[0] in ("num", "id") or (tok[0] == "op" and tok[1] == "("))

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if self.at_op("*"):
                self.take()
                acc = acc * self.factor()
            elif self.starts_operand(tok) and not tok[3]:
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.base()
        if self.at_op("^"):
            self.take()
            tok = self.take()
            if tok is None or tok[0] != "num":
                self.error("expected an integer exponent", tok)
            base = base ** tok[1]
        return base

    def base(self):
        tok = self.take()
        if tok is None:
            self.error("unexpected end of input")
        kind, val, col, _ = tok
        ring = self.ring
        if kind == "num":
            return ring.constant(ring.field.from_int(val))
        if kind == "id":
            return self.identifier(val, tok)
        if val == "(":
            inner = self.expr()
            if not self.at_op(")"):
                self.error("expected ')'")
            self.take()
            return inner
        self.error(f"unexpected {val!r}", tok)

    def identifier(self, word, tok):
        ring = self.ring
        if word in ring.names:
            return ring.var(word)
        if word == "a" and isinstance(ring.field, GaloisField):
            return ring.constant(ring.field.p)
        # juxtaposed variable names such as "xy"
        out = ring.one()
        rest = word
        while rest:
            for nm in sorted(ring.names, key=len, reverse=True):
                if rest.startswith(nm):
                    out = out * ring.var(nm)
                    rest = rest[len(nm):]
                    break
            else:
                self.error(f"unknown variable {word!r}", tok)
        return out

    def expr_list(self, stop=()):
        items = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "op" and tok[1] in stop):
                return items
            items.append(self.expr())
            if self.at_op(","):
                self.take()
                continue
            tok = self.peek()
            if tok is None or (tok[0] == "op" and tok[1] in stop):
                return items
            if not self.starts_operand(tok) and not (tok[0] == "op" and tok[1] in "+-"):
                self.error(f"unexpected {tok[1]!r}", tok)


def parse_polynomial(ring: PolyRing, text: str, line=None, offset=0) -> Polynomial:
    p = _Parser(ring, tokenize(text, line, offset), line)
    items = p.expr_list()
    if len(items) != 1:
        raise ParseError(f"expected one polynomial, found {len(items)}", line, offset + 1)
    return items[0]


def parse_polynomial_list(ring: PolyRing, text: str, line=None, offset=0) -> list:
    """Comma- or whitespace-separated polynomials.  Whitespace separates
    items; juxtaposition without whitespace (``3x``) multiplies."""
    p = _Parser(ring, tokenize(text, line, offset), line)
    return p.expr_list()


def parse_matrix(ring: PolyRing, text: str, line=None, offset=0) -> list:
    """``[a, b; c, d]`` -> list of rows."""
    p = _Parser(ring, tokenize(text, line, offset), line)
    if not p.at_op("["):
        p.error("expected '['")
    p.take()
    rows = []
    while True:
        rows.append(p.expr_list(stop=(";", "]")))
        tok = p.take()
        if tok is None:
            p.error("unterminated matrix")
        if tok[1] == "]":
            break
    if p.peek() is not None:
        p.error("trailing input after matrix")
    if rows == [[]]:
        return []
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError("matrix rows have different lengths", line, offset + 1)
    return rows


# -- division -----------------------------------------------------------------

def exact_divide(p: Polynomial, f: Polynomial) -> Polynomial:
    """The unique q with p = f*q; raises NotDivisible otherwise."""
    if p.ring != f.ring:
        raise RingMismatch("operands live in different rings")
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring, F = p.ring, p.ring.field
    lm = f.leading_monomial()
    lc_inv = F.inv(f.d[lm])
    r = dict(p.d)
    q: dict = {}
    while r:
        m = max(r, key=ring.key)
        if not mon_divides(lm, m):
            raise NotDivisible(f"{p} is not divisible by {f}")
        c = F.mul(r[m], lc_inv)
        qm = mon_div(m, lm)
        q[qm] = F.add(q.get(qm, F.zero), c)
        r = psub(F, r, pmul_term(F, f.d, c, qm))
    return Polynomial(ring, {m: c for m, c in q.items() if c != F.zero})
