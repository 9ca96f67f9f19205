"""Exact coefficient fields: prime fields, small Galois fields and the rationals.

Finite-field elements are plain Python ints.  An element of GF(p^e) is encoded
as the integer whose base-p digits are the coefficients (lowest first) of its
representative polynomial in the generator ``a`` modulo the defining
polynomial, so the prime subfield is {0, ..., p-1} in every extension and
``from_int`` needs no embedding.  Rational elements are ``Fraction`` objects.

Each field also exposes a few vectorised row operations on numpy arrays; the
linear algebra in :mod:`cidade.linalg` is written against those.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DivisionByZero

MAX_PRIME = 2**31
MAX_TABLE_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Field:
    """Common interface.  Subclasses fill in the arithmetic."""

    is_finite = True
    characteristic: int
    order: int | None
    degree: int = 1
    dtype = np.int64
    zero = 0
    one = 1

    def from_int(self, n):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def elements(self):
        raise TypeError(f"{self} is not finite")

    def nonzero_elements(self):
        return [a for a in self.elements() if a != self.zero]

    # -- numpy helpers -------------------------------------------------
    def array(self, rows, ncols=None):
        if ncols is not None and not rows:
            return np.zeros((0, ncols), dtype=self.dtype)
        return np.array(rows, dtype=self.dtype)

    def zeros(self, shape):
        return np.zeros(shape, dtype=self.dtype)

    def scale_row(self, c, row):
        raise NotImplementedError

    def eliminate(self, block, coeffs, row):
        """Return ``block - coeffs[:, None] * row``."""
        raise NotImplementedError

    def add_arrays(self, a, b):
        raise NotImplementedError

    def scale_array(self, c, a):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def describe(self) -> dict:
        raise NotImplementedError


class PrimeField(Field):
    def __init__(self, p: int):
        if not (isinstance(p, int) and 2 <= p < MAX_PRIME and is_prime(p)):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p
        self.order = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return type(other) is PrimeField and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p, 1))

    def from_int(self, n):
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        return pow(a, -1, self.p)

    def elements(self):
        return list(range(self.p))

    def scale_row(self, c, row):
        return row * c % self.p

    def eliminate(self, block, coeffs, row):
        return (block - np.outer(coeffs, row)) % self.p

    def add_arrays(self, a, b):
        return (a + b) % self.p

    def scale_array(self, c, a):
        return a * c % self.p

    def describe(self):
        return {"kind": "prime", "p": self.p, "e": 1}


def _pmod_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pmod_rem(a, m, p):
    """Remainder of a by the monic polynomial m over GF(p); lists low-first."""
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * m[i]) % p
    a = a[:dm] + [0] * max(0, dm - len(a))
    return [x % p for x in a]


def is_irreducible(modulus, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= e/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_pmod_rem(modulus, list(low) + [1], p)):
                return False
    return True


def _is_primitive(modulus, p):
    e = len(modulus) - 1
    q = p**e
    x = [0, 1] if e > 1 else [(-modulus[0]) % p]
    acc = [1] + [0] * (e - 1)
    for k in range(1, q - 1):
        acc = _pmod_rem(_pmod_mul(acc, x, p), modulus, p)
        if acc == [1] + [0] * (e - 1):
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple:
    """First monic primitive polynomial of degree e over GF(p), searching the
    lower coefficients in base-p counting order."""
    for n in range(p**e):
        low = [(n // p**i) % p for i in range(e)]
        modulus = low + [1]
        if low[0] and is_irreducible(modulus, p) and _is_primitive(modulus, p):
            return tuple(modulus)
    raise ValueError(f"no primitive polynomial of degree {e} over GF({p})")


class GaloisField(Field):
    """GF(p^e), e >= 2, with table-driven arithmetic (order at most 4096)."""

    def __init__(self, p: int, e: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 2:
            raise ValueError("use PrimeField for e = 1")
        q = p**e
        if q > MAX_TABLE_ORDER:
            raise ValueError(f"GF({p}^{e}) is larger than the supported order {MAX_TABLE_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or not is_irreducible(list(modulus), p):
            raise ValueError(f"{modulus} is not a monic irreducible polynomial of degree {e} over GF({p})")
        self.p, self.e, self.q = p, e, q
        self.modulus = modulus
        self.characteristic = p
        self.order = q
        self.degree = e
        self._build_tables()

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _encode(self, digits):
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def _slow_mul(self, a, b):
        prod = _pmod_mul(self._digits(a), self._digits(b), self.p)
        return self._encode(_pmod_rem(prod, list(self.modulus), self.p))

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        digits = np.array([self._digits(a) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.add_table = add.astype(np.int64)
        self.neg_table = (((-digits) % p) @ weights).astype(np.int64)
        gen = None
        for g in range(2, q):
            x, k = g, 1
            while x != 1:
                x = self._slow_mul(x, g)
                k += 1
            if k == q - 1:
                gen = g
                break
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._slow_mul(exp[i - 1], gen)
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        exp_a = np.array(exp, dtype=np.int64)
        log_a = np.array(log, dtype=np.int64)
        mul = exp_a[(log_a[:, None] + log_a[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul_table = mul
        self._exp, self._log = exp, log
        self._inv = [0] + [exp[(-log[a]) % (q - 1)] for a in range(1, q)]
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = self.neg_table.tolist()

    def __repr__(self):
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return type(other) is GaloisField and (other.p, other.e, other.modulus) == (self.p, self.e, self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.e, self.modulus))

    def from_int(self, n):
        return int(n) % self.p

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        return self._inv[a]

    def elements(self):
        return list(range(self.q))

    def scale_row(self, c, row):
        return self.mul_table[c, row]

    def eliminate(self, block, coeffs, row):
        prod = self.mul_table[coeffs[:, None], row[None, :]]
        return self.add_table[block, self.neg_table[prod]]

    def add_arrays(self, a, b):
        return self.add_table[a, b]

    def scale_array(self, c, a):
        return self.mul_table[c, a]

    def format(self, a):
        terms = []
        for i, d in reversed(list(enumerate(self._digits(a)))):
            if d == 0:
                continue
            mon = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mon:
                terms.append(str(d))
            else:
                terms.append(mon if d == 1 else f"{d}*{mon}")
        return "+".join(terms) if terms else "0"

    def describe(self):
        return {"kind": "prime-power", "p": self.p, "e": self.e, "modulus": list(self.modulus)}


class RationalField(Field):
    is_finite = False
    characteristic = 0
    order = None
    dtype = object
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return type(other) is RationalField

    def __hash__(self):
        return hash("QQ")

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse in QQ")
        return 1 / Fraction(a)

    def array(self, rows, ncols=None):
        if ncols is not None and not rows:
            return np.zeros((0, ncols), dtype=object)
        out = np.array(rows, dtype=object)
        return out

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def scale_row(self, c, row):
        return row * c

    def eliminate(self, block, coeffs, row):
        return block - np.outer(coeffs, row)

    def add_arrays(self, a, b):
        return a + b

    def scale_array(self, c, a):
        return a * c

    def describe(self):
        return {"kind": "rationals"}


QQ = RationalField()


def GF(q: int, modulus=None) -> Field:
    """Finite field of order q (a prime or a prime power)."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    if e == 1:
        return PrimeField(p)
    return GaloisField(p, e, modulus)


def field_from_description(desc: dict) -> Field:
    kind = desc["kind"]
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return PrimeField(desc["p"])
    return GaloisField(desc["p"], desc["e"], desc.get("modulus"))


class FieldEmbedding:
    """Injective homomorphism ``source -> target`` between finite fields of
    the same characteristic, fixed by sending the generator of the source to
    a root (the smallest-encoded one) of its defining polynomial."""

    def __init__(self, source: Field, target: Field):
        if source.characteristic != target.characteristic:
            raise ValueError("fields of different characteristic")
        if target.degree % source.degree:
            raise ValueError(f"{source} does not embed in {target}")
        self.source, self.target = source, target
        if source.degree == 1:
            self._images = None
            return
        modulus = source.modulus
        root = None
        for b in target.elements():
            acc = target.zero
            for c in reversed(modulus):
                acc = target.add(target.mul(acc, b), target.from_int(c))
            if acc == target.zero:
                root = b
                break
        powers = [target.one]
        for _ in range(1, source.degree):
            powers.append(target.mul(powers[-1], root))
        images = []
        for a in source.elements():
            acc = target.zero
            for d, pw in zip(source._digits(a), powers):
                acc = target.add(acc, target.mul(target.from_int(d), pw))
            images.append(acc)
        self._images = images

    def __call__(self, a):
        if self._images is None:
            return self.target.from_int(a)
        return self._images[a]


def extension(field: Field, e: int) -> tuple[Field, FieldEmbedding]:
    """Degree-e extension of a finite field with its canonical embedding."""
    if not field.is_finite:
        raise ValueError("field extensions are only supported for finite fields")
    if e < 1:
        raise ValueError("extension degree must be positive")
    if e == 1:
        return field, FieldEmbedding(field, field)
    p, d = field.characteristic, field.degree * e
    target = PrimeField(p) if d == 1 else GaloisField(p, d)
    return target, FieldEmbedding(field, target)
