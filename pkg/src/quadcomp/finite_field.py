"""Arithmetic in finite fields of odd order q = p^k.

Prime fields store elements as residues mod p.  Extension fields use a
power basis 1, t, ..., t^(k-1) modulo the lexicographically smallest monic
irreducible polynomial of degree k over F_p, coefficient vectors compared
low degree first.  Elements carry a reference to their field context and
are immutable.
"""

from __future__ import annotations

from itertools import product as _iproduct
from typing import Iterator, Union

from .errors import InvalidDegree, NotOddPrime

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# squares are tabulated up to this field size, tested by powering beyond it
_SQUARE_TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n below 3.3e24."""
    if n < 2:
        return False
    for small in _MR_BASES:
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _trial_remainder(num: list, den: list, p: int) -> bool:
    """True iff the monic polynomial den divides num over F_p (int lists)."""
    num = list(num)
    dn = len(den) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dn + 1):
                num[i - dn + j] = (num[i - dn + j] - c * den[j]) % p
    return all(c % p == 0 for c in num[:dn])


def _is_irreducible_trial(f: list, p: int) -> bool:
    """Trial division by every lower-degree monic polynomial."""
    k = len(f) - 1
    for e in range(1, k // 2 + 1):
        for tail in _iproduct(range(p), repeat=e):
            den = list(tail) + [1]
            if _trial_remainder(f, den, p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple:
    for tail in _iproduct(range(p), repeat=k):
        f = list(tail) + [1]
        if _is_irreducible_trial(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


def _reduction_rows(modulus: tuple, p: int) -> tuple:
    """Coordinates of t^k, ..., t^(2k-2) in the power basis."""
    k = len(modulus) - 1
    base = tuple((-c) % p for c in modulus[:k])
    rows = [base]
    cur = base
    for _ in range(k - 2):
        top = cur[k - 1]
        shifted = (0,) + cur[: k - 1]
        cur = tuple((shifted[i] + top * base[i]) % p for i in range(k))
        rows.append(cur)
    return tuple(rows)


class FiniteField:
    """Arithmetic context for F_q, q = p^k with p an odd prime.

    Raw element values are ints in [0, p) when k == 1 and k-tuples of such
    ints otherwise.  The r*-methods operate on raw values; use elem() and
    FieldElement for the checked surface.
    """

    def __init__(self, p: int, k: int = 1):
        if not isinstance(p, int) or p < 3 or p % 2 == 0 or not is_prime(p):
            raise NotOddPrime("characteristic must be an odd prime, got %r" % (p,))
        if not isinstance(k, int) or k < 1:
            raise InvalidDegree("extension degree must be >= 1, got %r" % (k,))
        self.p = p
        self.k = k
        self.q = p ** k
        if k == 1:
            self.modulus = None
            self._red = None
        else:
            self.modulus = _smallest_irreducible(p, k)
            self._red = _reduction_rows(self.modulus, p)
        self._squares = None

    # -- context identity -------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.k == other.k
        )

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return "FiniteField(%d, %d)" % (self.p, self.k)

    # -- raw arithmetic ----------------------------------------------------

    @property
    def zero_raw(self):
        return 0 if self.k == 1 else (0,) * self.k

    @property
    def one_raw(self):
        return 1 if self.k == 1 else (1,) + (0,) * (self.k - 1)

    def radd(self, u, v):
        if self.k == 1:
            return (u + v) % self.p
        p = self.p
        return tuple((a + b) % p for a, b in zip(u, v))

    def rsub(self, u, v):
        if self.k == 1:
            return (u - v) % self.p
        p = self.p
        return tuple((a - b) % p for a, b in zip(u, v))

    def rneg(self, u):
        if self.k == 1:
            return -u % self.p
        p = self.p
        return tuple(-a % p for a in u)

    def rmul(self, u, v):
        if self.k == 1:
            return u * v % self.p
        k = self.k
        p = self.p
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    prod[i + j] += a * b
        for j in range(2 * k - 2, k - 1, -1):
            c = prod[j] % p
            if c:
                row = self._red[j - k]
                for i in range(k):
                    prod[i] += c * row[i]
        return tuple(c % p for c in prod[:k])

    def rpow(self, u, e: int):
        if e < 0:
            return self.rpow(self.rinv(u), -e)
        if self.k == 1:
            return pow(u, e, self.p)
        acc = self.one_raw
        base = u
        while e:
            if e & 1:
                acc = self.rmul(acc, base)
            base = self.rmul(base, base)
            e >>= 1
        return acc

    def rinv(self, u):
        if u == self.zero_raw:
            raise ZeroDivisionError("inverse of zero in %r" % (self,))
        if self.k == 1:
            return pow(u, self.p - 2, self.p)
        return self.rpow(u, self.q - 2)

    def is_nonsquare_raw(self, u) -> bool:
        """Euler criterion; zero counts as a square."""
        if u == self.zero_raw:
            return False
        if self.q <= _SQUARE_TABLE_LIMIT:
            if self._squares is None:
                self._squares = frozenset(
                    self.rmul(v, v) for v in self.iter_raw()
                )
            return u not in self._squares
        return self.rpow(u, (self.q - 1) // 2) != self.one_raw

    # -- element enumeration and text form ----------------------------------

    def iter_raw(self) -> Iterator:
        if self.k == 1:
            yield from range(self.p)
            return
        for i in range(self.q):
            yield self.raw_from_index(i)

    def raw_from_index(self, i: int):
        if not 0 <= i < self.q:
            raise ValueError("element index out of range: %r" % (i,))
        if self.k == 1:
            return i
        digits = []
        for _ in range(self.k):
            digits.append(i % self.p)
            i //= self.p
        return tuple(digits)

    def index_of_raw(self, u) -> int:
        if self.k == 1:
            return u
        acc = 0
        for c in reversed(u):
            acc = acc * self.p + c
        return acc

    def elements(self) -> Iterator["FieldElement"]:
        for u in self.iter_raw():
            yield FieldElement(self, u)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self.zero_raw)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.one_raw)

    def elem(self, value) -> "FieldElement":
        """Coerce an int, coordinate sequence or FieldElement into this field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to %r" % (value.field,))
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, value % self.p)
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coords = [int(c) % self.p for c in value]
        if len(coords) > self.k:
            raise ValueError("too many coordinates for %r" % (self,))
        coords += [0] * (self.k - len(coords))
        if self.k == 1:
            return FieldElement(self, coords[0])
        return FieldElement(self, tuple(coords))

    def format_raw(self, u) -> str:
        if self.k == 1:
            return str(u)
        return "[" + ",".join(str(c) for c in u) + "]"

    def parse_element(self, text: str) -> "FieldElement":
        text = text.strip()
        if text.startswith("["):
            if not text.endswith("]"):
                raise ValueError("unterminated element literal: %r" % (text,))
            parts = [s for s in text[1:-1].split(",") if s.strip() != ""]
            coords = [int(s) for s in parts]
            if len(coords) != self.k:
                raise ValueError(
                    "expected %d coordinates, got %d in %r" % (self.k, len(coords), text)
                )
            return self.elem(coords)
        return self.elem(int(text))


class FieldElement:
    """One element of a FiniteField.  Immutable, usable as a dict key."""

    __slots__ = ("field", "val")

    def __init__(self, field: FiniteField, val):
        self.field = field
        self.val = val

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed field contexts: %r vs %r" % (self.field, other.field))
            return other.val
        if isinstance(other, int):
            return self.field.elem(other).val
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.radd(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.rsub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.rsub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.rmul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.rmul(self.val, self.field.rinv(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.rmul(v, self.field.rinv(self.val)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.rpow(self.val, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.rneg(self.val))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.val == other.val
        if isinstance(other, int):
            return self.val == self.field.elem(other).val
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.val))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.rinv(self.val))

    def is_zero(self) -> bool:
        return self.val == self.field.zero_raw

    def is_nonsquare(self) -> bool:
        return self.field.is_nonsquare_raw(self.val)

    @property
    def coords(self) -> tuple:
        return (self.val,) if self.field.k == 1 else self.val

    def index(self) -> int:
        return self.field.index_of_raw(self.val)

    def __str__(self):
        return self.field.format_raw(self.val)

    def __repr__(self):
        return "FieldElement(%s, F_%d)" % (self, self.field.q)
