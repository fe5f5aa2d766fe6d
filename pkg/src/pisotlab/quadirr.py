"""Exact arithmetic in real quadratic fields.

A :class:`QuadIrr` is ``(a + b*sqrt(D)) / c`` in canonical form: ``D > 1``
squarefree, ``b != 0``, ``c > 0`` and ``gcd(a, b, c) == 1``.  Canonical form
makes equality and hashing structural.  Operations whose irrational part
cancels return a :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algnum.poly import IntPolynomial
from .exactnum import DyadicInterval, isqrt

Scalar = Union[int, Fraction]


class RationalInputError(ValueError):
    """Raised when a would-be quadratic irrational is actually rational."""


class FieldMismatchError(ValueError):
    """Raised when combining elements of different quadratic fields."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, m) with n == s*s*m and m squarefree, for n >= 1."""
    if n < 1:
        raise ValueError("squarefree_decompose needs n >= 1")
    s, m = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e & 1:
                m *= p
        p += 1 if p == 2 else 2
    return s, m * n


def _floor_surd(a: int, b: int, c: int, D: int) -> int:
    """floor((a + b*sqrt(D)) / c) for c > 0 and D not a perfect square."""
    r = isqrt(b * b * D)
    # b*sqrt(D) lies strictly between consecutive integers
    f = r if b > 0 else -r - 1
    return (a + f) // c


def _sign_surd(a: int, b: int, D: int) -> int:
    """Sign of a + b*sqrt(D), decided by integer comparison."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0 or (a > 0) == (b > 0):
        return 1 if (a > 0 or (a == 0 and b > 0)) else -1
    # opposite signs: compare a^2 with b^2 D
    return (1 if a > 0 else -1) if a * a > b * b * D else (1 if b > 0 else -1)


@dataclass(frozen=True)
class QuadIrr:
    a: int
    b: int
    c: int
    D: int

    def __post_init__(self):
        if self.b == 0 or self.c <= 0 or self.D <= 1:
            raise ValueError(f"not a canonical surd: {self!r}")

    # construction -----------------------------------------------------------

    @classmethod
    def normalize(cls, a: int, b: int, c: int, D: int) -> QuadIrr:
        """Canonical form of (a + b*sqrt(D)) / c."""
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if b == 0:
            raise RationalInputError("b = 0 gives a rational number")
        if D <= 0:
            raise ValueError("D must be positive")
        s, m = squarefree_decompose(D)
        if m == 1:
            raise RationalInputError(f"D = {D} is a perfect square")
        b *= s
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        return cls(a // g, b // g, c // g, m)

    @classmethod
    def make(cls, a: Scalar, b: Scalar, D: int) -> Union[QuadIrr, Fraction]:
        """a + b*sqrt(D) for rational a, b; rational when b == 0."""
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return a
        c = math.lcm(a.denominator, b.denominator)
        return cls.normalize(int(a * c), int(b * c), c, D)

    @classmethod
    def sqrt(cls, D: int) -> QuadIrr:
        return cls.normalize(0, 1, 1, D)

    @classmethod
    def parse(cls, text: str) -> QuadIrr:
        """Parse ``"(a+b*sqrt(D))/c"`` and its abbreviations such as ``"1+sqrt(2)"``."""
        return parse_surd(text)

    # views ----------------------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def irrational_coeff(self) -> Fraction:
        return Fraction(self.b, self.c)

    def format(self) -> str:
        sb = "+" if self.b > 0 else "-"
        return f"({self.a}{sb}{abs(self.b)}*sqrt({self.D}))/{self.c}"

    def __str__(self):
        return self.format()

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.D)) / self.c

    # field operations -------------------------------------------------------

    def _check(self, other: QuadIrr):
        if other.D != self.D:
            raise FieldMismatchError(f"sqrt({self.D}) and sqrt({other.D}) live in different fields")

    def _parts(self, other) -> tuple[Fraction, Fraction]:
        if isinstance(other, QuadIrr):
            self._check(other)
            return other.rational_part, other.irrational_coeff
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        parts = self._parts(other)
        if parts is NotImplemented:
            return NotImplemented
        return QuadIrr.make(self.rational_part + parts[0], self.irrational_coeff + parts[1], self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadIrr(-self.a, -self.b, self.c, self.D)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is NotImplemented:
            return NotImplemented
        x, y = self.rational_part, self.irrational_coeff
        u, v = parts
        return QuadIrr.make(x * u + y * v * self.D, x * v + y * u, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> QuadIrr:
        return QuadIrr(self.a, -self.b, self.c, self.D)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.D, self.c * self.c)

    def inverse(self) -> QuadIrr:
        # 1/x = x' / N(x)
        n = self.norm()
        return QuadIrr.make(self.rational_part / n, -self.irrational_coeff / n, self.D)

    def __truediv__(self, other):
        if isinstance(other, QuadIrr):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Fraction(1)
        result: Union[QuadIrr, Fraction] = Fraction(1)
        base: Union[QuadIrr, Fraction] = self
        while n:
            if n & 1:
                result = base * result if isinstance(base, QuadIrr) else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # order ------------------------------------------------------------------

    def sign(self) -> int:
        return _sign_surd(self.a, self.b, self.D)

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadIrr):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return self if self.sign() > 0 else -self

    def floor(self) -> int:
        return _floor_surd(self.a, self.b, self.c, self.D)

    def __floor__(self):
        return self.floor()

    # classification -------------------------------------------------------

    def classify(self) -> QuadClassification:
        t, n = self.trace(), self.norm()
        integral = t.denominator == 1 and n.denominator == 1
        return QuadClassification(
            is_algebraic_integer=integral,
            is_unit=integral and abs(n) == 1,
            is_sqrt_of_rational=self.a == 0,
            trace=t,
            norm=n,
        )

    def min_poly(self) -> IntPolynomial:
        """c^2 X^2 - 2ac X + (a^2 - b^2 D), made primitive."""
        return IntPolynomial([self.a * self.a - self.b * self.b * self.D, -2 * self.a * self.c, self.c * self.c])

    def enclose(self, prec: int) -> DyadicInterval:
        """Certified enclosure of width 2**-prec (absolute) around the value."""
        k = max(prec, 1)
        m = _floor_surd(self.a << k, self.b << k, self.c, self.D)
        return DyadicInterval(m, -k, m + 1, -k, prec)


@dataclass(frozen=True)
class QuadClassification:
    is_algebraic_integer: bool
    is_unit: bool
    is_sqrt_of_rational: bool
    trace: Fraction
    norm: Fraction


# free-function spellings of the operations
def normalize(a: int, b: int, c: int, D: int) -> QuadIrr:
    return QuadIrr.normalize(a, b, c, D)


def mul(x, y):
    return x * y


def inv(x: QuadIrr) -> QuadIrr:
    return x.inverse()


def qpow(x: QuadIrr, n: int):
    if n < 1:
        raise ValueError("exponent must be positive")
    return x ** n


def floor(x: QuadIrr) -> int:
    return x.floor()


def sign(x: QuadIrr) -> int:
    return x.sign()


def classify(x: QuadIrr) -> QuadClassification:
    return x.classify()


def min_poly(x: QuadIrr) -> IntPolynomial:
    return x.min_poly()


def enclose(x: QuadIrr, prec: int) -> DyadicInterval:
    return x.enclose(prec)


_SURD_TERM = re.compile(
    r"""^(?P<a>[+-]?\d+)?
        (?:(?P<sgn>[+-])?(?:(?P<b>\d+)\*?)?sqrt\((?P<D>\d+)\))?$""",
    re.VERBOSE,
)


def parse_surd(text: str) -> QuadIrr:
    s = text.replace(" ", "")
    c = 1
    m = re.fullmatch(r"\((.*)\)/([+-]?\d+)", s)
    if m:
        s, c = m.group(1), int(m.group(2))
    elif s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    t = _SURD_TERM.match(s)
    if not t or t.group("D") is None:
        raise ValueError(f"cannot parse surd {text!r}")
    a = int(t.group("a") or 0)
    sgn = t.group("sgn")
    if t.group("a") is not None and sgn is None:
        raise ValueError(f"cannot parse surd {text!r}")
    b = int(t.group("b") or 1) * (-1 if sgn == "-" else 1)
    return QuadIrr.normalize(a, b, c, int(t.group("D")))
