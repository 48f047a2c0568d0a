"""Exact arithmetic in a real quadratic field Q(√d)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = f² · d with d square-free; return (f, d)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    f, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            f *= p
        if m % p == 0:
            m //= p
            d *= p
        p += 1
    return f, d * m


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


@total_ordering
class QuadraticNumber:
    """a + b√d with rational a, b and square-free d > 1.

    Rationals may be written with b = 0 and mix freely with any field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        self.a = Fraction(a)
        self.b = Fraction(b)
        if self.b and (d is None or d <= 1):
            raise ValueError("irrational part needs a square-free d > 1")
        self.d = d if self.b else (d or 0)

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticNumber":
        f, d = squarefree_part(n)
        if d == 1:
            return cls(f)
        return cls(0, f, d)

    @classmethod
    def parse(cls, text: str) -> "QuadraticNumber":
        """Accepts forms like ``3/2``, ``(1+sqrt(5))/2``, ``1/2+1/2*sqrt(5)``."""
        t = text.replace(" ", "")
        m = re.fullmatch(r"\(([-+]?\d+)([-+]\d*)\*?sqrt\((\d+)\)\)/(\d+)", t)
        if m:
            a, bs, n, den = m.groups()
            b = int(bs + "1") if bs in "+-" else int(bs)
            return (cls(int(a)) + cls(b) * cls.sqrt(int(n))) / int(den)
        m = re.fullmatch(r"([-+]?[\d/]+)?(?:([-+]?[\d/]*)\*?sqrt\((\d+)\))?", t)
        if not m or not t:
            raise ValueError(f"cannot parse quadratic number {text!r}")
        a, bs, n = m.groups()
        out = cls(Fraction(a) if a else 0)
        if n is not None:
            b = Fraction(bs + "1") if bs in ("", "+", "-") else Fraction(bs)
            out = out + cls(b) * cls.sqrt(int(n))
        return out

    # -- coercion ----------------------------------------------------------
    def _lift(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if self.b and other.b and self.d != other.d:
                raise ValueError("mixing different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d or None)
        return NotImplemented

    def _field(self, other: "QuadraticNumber") -> int | None:
        return (self.d or other.d) or None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d or None)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self._field(o) or 0
        return QuadraticNumber(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d or None)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d or None)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self.conjugate()
        return QuadraticNumber(c.a / n, c.b / n, self.d or None)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadraticNumber(1, 0, self.d or None)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- order --------------------------------------------------------------
    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a² with b²d
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, float) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d) if self.b else float(self.a)

    def floor(self) -> int:
        n = math.floor(float(self))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        """Algebraic integer test via trace and norm."""
        return (2 * self.a).denominator == 1 and self.norm().denominator == 1

    def denominator(self) -> int:
        """Least q > 0 with q·self ∈ Z[√d] ∪ Z[(1+√d)/2]-style lattices; uses common denominator of a, b."""
        return math.lcm(self.a.denominator, self.b.denominator)

    def __repr__(self):
        if not self.b:
            return f"{self.a}"
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}√{self.d})"


Q = QuadraticNumber
