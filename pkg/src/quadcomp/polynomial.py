"""Dense univariate polynomials over a finite field.

Coefficients are stored low degree first as raw field values with trailing
zeros trimmed; the zero polynomial has degree -1.  Prime-field products go
through Kronecker substitution: both coefficient vectors are packed into
big integers, multiplied once, and the convolution is read back out of the
product's fixed-width digit slots.
"""

from __future__ import annotations

import array
import sys
from typing import Iterable, Sequence

from .errors import BothZero, ConstantPolynomial, DegreeTooSmall
from .finite_field import FieldElement, FiniteField

_SLOT_CODES = ((1, "B"), (2, "H"), (4, "I"), (8, "Q"))
_LITTLE = sys.byteorder == "little"


def _school_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _kron_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    """Convolution of int vectors mod p via one big-integer product."""
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    need = (bound.bit_length() + 7) // 8 or 1
    for width, code in _SLOT_CODES:
        if width >= need:
            break
    else:
        return _school_mul(a, b, p)
    if not _LITTLE:
        return _school_mul(a, b, p)
    big_a = int.from_bytes(array.array(code, a).tobytes(), "little")
    big_b = int.from_bytes(array.array(code, b).tobytes(), "little")
    n = len(a) + len(b) - 1
    raw = (big_a * big_b).to_bytes(width * (n + 1), "little")
    out = array.array(code)
    out.frombytes(raw[: width * n])
    return [c % p for c in out]


def _split_csv(text: str) -> list:
    """Split on commas that are not inside [...] element literals."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class Poly:
    """Immutable dense polynomial over a FiniteField."""

    __slots__ = ("field", "vals")

    def __init__(self, field: FiniteField, coeffs: Iterable = (), *, raw: bool = False):
        if raw:
            vals = list(coeffs)
        else:
            vals = [field.elem(c).val for c in coeffs]
        zero = field.zero_raw
        while vals and vals[-1] == zero:
            vals.pop()
        self.field = field
        self.vals = tuple(vals)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: FiniteField) -> "Poly":
        return cls(field)

    @classmethod
    def constant(cls, field: FiniteField, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def parse(cls, field: FiniteField, text: str) -> "Poly":
        coeffs = [field.parse_element(s) for s in _split_csv(text)]
        return cls(field, coeffs)

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.vals) - 1

    @property
    def is_zero(self) -> bool:
        return not self.vals

    @property
    def is_monic(self) -> bool:
        return bool(self.vals) and self.vals[-1] == self.field.one_raw

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < len(self.vals):
            return FieldElement(self.field, self.vals[i])
        return self.field.zero

    def coefficients(self) -> tuple:
        return tuple(FieldElement(self.field, v) for v in self.vals)

    def leading(self) -> FieldElement:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.field, self.vals[-1])

    def csv(self) -> str:
        if self.is_zero:
            return self.field.format_raw(self.field.zero_raw)
        return ",".join(self.field.format_raw(v) for v in self.vals)

    def __str__(self):
        return self.csv()

    def __repr__(self):
        return "Poly(%s over F_%d)" % (self.csv(), self.field.q)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.vals == other.vals

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.vals))

    # -- ring operations ----------------------------------------------------

    def _pad(self, n: int) -> list:
        return list(self.vals) + [self.field.zero_raw] * (n - len(self.vals))

    def __add__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.vals), len(other.vals))
        f = self.field
        a, b = self._pad(n), other._pad(n)
        return Poly(f, [f.radd(x, y) for x, y in zip(a, b)], raw=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.vals), len(other.vals))
        f = self.field
        a, b = self._pad(n), other._pad(n)
        return Poly(f, [f.rsub(x, y) for x, y in zip(a, b)], raw=True)

    def __rsub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        f = self.field
        return Poly(f, [f.rneg(v) for v in self.vals], raw=True)

    def _as_poly(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("mixed field contexts")
            return other
        if isinstance(other, (int, FieldElement)):
            return Poly.constant(self.field, other)
        return NotImplemented

    def __mul__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return Poly(self.field)
        f = self.field
        if f.k == 1:
            return Poly(f, _kron_mul(self.vals, other.vals, f.p), raw=True)
        out = [f.zero_raw] * (len(self.vals) + len(other.vals) - 1)
        for i, x in enumerate(self.vals):
            if x != f.zero_raw:
                for j, y in enumerate(other.vals):
                    out[i + j] = f.radd(out[i + j], f.rmul(x, y))
        return Poly(f, out, raw=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        acc = Poly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __divmod__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        if self.degree < other.degree:
            return Poly(f), self
        rem = list(self.vals)
        dn = other.degree
        inv_lead = f.rinv(other.vals[-1])
        quot = [f.zero_raw] * (len(rem) - dn)
        for i in range(len(rem) - 1, dn - 1, -1):
            c = rem[i]
            if c != f.zero_raw:
                c = f.rmul(c, inv_lead)
                quot[i - dn] = c
                for j, dj in enumerate(other.vals):
                    rem[i - dn + j] = f.rsub(rem[i - dn + j], f.rmul(c, dj))
        return Poly(f, quot, raw=True), Poly(f, rem[:dn], raw=True)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    # -- evaluation and composition ------------------------------------------

    def __call__(self, point):
        f = self.field
        v = f.elem(point).val
        acc = f.zero_raw
        for c in reversed(self.vals):
            acc = f.radd(f.rmul(acc, v), c)
        return FieldElement(f, acc)

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x)), Horner over polynomial arguments."""
        inner = self._as_poly(inner)
        f = self.field
        acc = Poly(f)
        for c in reversed(self.vals):
            acc = acc * inner + Poly(f, [c], raw=True)
        return acc

    def derivative(self) -> "Poly":
        f = self.field
        out = []
        for i in range(1, len(self.vals)):
            out.append(f.rmul(f.elem(i).val, self.vals[i]))
        return Poly(f, out, raw=True)

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        f = self.field
        inv = f.rinv(self.vals[-1])
        return Poly(f, [f.rmul(v, inv) for v in self.vals], raw=True)

    def shift_argument(self, a) -> "Poly":
        """self(x + a)."""
        f = self.field
        lin = Poly(f, [f.elem(a).val, f.one_raw], raw=True)
        return self.compose(lin)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    if f.is_zero and g.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    acc = Poly.constant(base.field, 1) % mod
    base = base % mod
    while e:
        if e & 1:
            acc = (acc * base) % mod
        base = (base * base) % mod
        e >>= 1
    return acc


def powmod_frobenius(e: int, f: Poly) -> Poly:
    """x^(q^e) mod f."""
    if f.degree < 1:
        raise ConstantPolynomial("modulus must have positive degree")
    if e < 0:
        raise ValueError("Frobenius power must be >= 0")
    field = f.field
    y = Poly.x(field) % f
    for _ in range(e):
        y = _powmod(y, field.q, f)
    return y


def _prime_divisors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rabin_is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over F_q.

    f of degree d is irreducible iff x^(q^d) = x mod f and, for every
    prime r dividing d, gcd(x^(q^(d/r)) - x, f) = 1.
    """
    if f.degree < 1:
        raise ConstantPolynomial("irreducibility needs degree >= 1")
    d = f.degree
    f = f.monic()
    if d == 1:
        return True
    field = f.field
    x = Poly.x(field)
    checkpoints = {d // r for r in _prime_divisors(d)}
    y = x % f
    for j in range(1, d + 1):
        y = _powmod(y, field.q, f)
        if j in checkpoints and gcd(y - x, f).degree != 0:
            return False
    return y == x % f


def resultant(f: Poly, g: Poly) -> FieldElement:
    """Res(f, g) by the Euclidean remainder recurrence."""
    field = f.field
    if f.is_zero or g.is_zero:
        return field.zero
    if f.degree == 0 and g.degree == 0:
        return field.one
    acc = field.one_raw
    a, b = f, g
    while b.degree > 0:
        r = a % b
        if r.is_zero:
            return field.zero
        acc = field.rmul(acc, field.rpow(b.vals[-1], a.degree - r.degree))
        if (a.degree * b.degree) % 2 == 1:
            acc = field.rneg(acc)
        a, b = b, r
    acc = field.rmul(acc, field.rpow(b.vals[0], a.degree))
    return FieldElement(field, acc)


def discriminant(f: Poly) -> FieldElement:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), degree d >= 2."""
    d = f.degree
    if d < 2:
        raise DegreeTooSmall("discriminant needs degree >= 2")
    field = f.field
    res = resultant(f, f.derivative())
    v = res.val
    if (d * (d - 1) // 2) % 2 == 1:
        v = field.rneg(v)
    v = field.rmul(v, field.rinv(f.vals[-1]))
    return FieldElement(field, v)
