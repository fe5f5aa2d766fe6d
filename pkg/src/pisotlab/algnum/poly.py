"""Integer polynomials and the rational polynomial helpers behind them.

Coefficient lists are ascending (``c[i]`` multiplies ``X**i``).  Internal
helpers work on lists of :class:`Fraction`; :class:`IntPolynomial` is the
normalized, hashable public type.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

QPoly = list  # list[Fraction], ascending, no trailing zeros

_TERM = re.compile(r"([+-]?)(\d+)?\*?([xX](?:\^|\*\*)?(\d+)?)?")


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def primitive_int(c: Sequence) -> list[int]:
    """Scale a rational coefficient list to a primitive integer list with positive lead."""
    c = [Fraction(x) for x in c]
    _trim(c)
    if not c:
        return []
    den = reduce(math.lcm, (x.denominator for x in c), 1)
    ints = [int(x * den) for x in c]
    g = reduce(math.gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial with positive leading coefficient.

    Any nonzero coefficient sequence is accepted and normalized, so two
    polynomials with the same roots compare equal.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable):
        c = primitive_int(list(coeffs))
        if not c:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse ``"-1,-1,1"`` (ascending coefficients) or an expression like ``"X^2-X-1"``."""
        t = text.replace(" ", "")
        if "x" in t.lower():
            return cls._parse_expr(t)
        try:
            return cls(int(v) for v in t.split(",") if v)
        except ValueError as err:
            raise ValueError(f"bad polynomial {text!r}: {err}") from None

    @classmethod
    def _parse_expr(cls, t: str) -> IntPolynomial:
        pos = 0
        coeffs: dict[int, int] = {}
        for m in _TERM.finditer(t):
            if m.start() != pos or not m.group(0):
                break
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                e = int(m.group(4)) if m.group(4) else 1
            elif m.group(2):
                e = 0
            else:
                raise ValueError(f"bad polynomial {t!r}")
            coeffs[e] = coeffs.get(e, 0) + sign * c
        if pos != len(t) or not coeffs:
            raise ValueError(f"bad polynomial {t!r}")
        return cls(coeffs.get(i, 0) for i in range(max(coeffs) + 1))

    def format(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntPolynomial({self.format()})"

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            mag = abs(c)
            body = f"{mag}{'*' if mono else ''}{mono}" if (mag != 1 or not mono) else mono
            terms.append(("-" if c < 0 else "+") + body)
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s

    def qpoly(self) -> QPoly:
        return [Fraction(c) for c in self.coeffs]

    def derivative(self) -> QPoly:
        return [Fraction(i * c) for i, c in enumerate(self.coeffs)][1:]

    def reversal(self) -> IntPolynomial:
        """X**d * p(1/X), with zero roots dropped."""
        return IntPolynomial(reversed(self.coeffs))

    def sign_at(self, x: Fraction) -> int:
        """Exact sign of p(x) at a rational point, with integer arithmetic only."""
        x = Fraction(x)
        n, d = x.numerator, x.denominator
        acc = 0
        dp = 1
        for c in reversed(self.coeffs):
            acc = acc * n + c * dp
            dp *= d
        # acc = p(x) * d**deg (d > 0)
        return (acc > 0) - (acc < 0)

    def scaled(self, r: Fraction) -> IntPolynomial:
        """Primitive form of p(r*X) for a rational r != 0."""
        r = Fraction(r)
        u, v = r.numerator, r.denominator
        d = self.degree
        return IntPolynomial(c * u ** i * v ** (d - i) for i, c in enumerate(self.coeffs))


# rational polynomial arithmetic ---------------------------------------------


def qmul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def qsub(a: QPoly, b: QPoly) -> QPoly:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


def qdivmod(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    _trim(r)
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[i + shift] -= f * y
        r.pop()
        _trim(r)
    return _trim(q), r


def qgcd(a: QPoly, b: QPoly) -> QPoly:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, qdivmod(a, b)[1]
        if b:
            b = [Fraction(x) for x in primitive_int(b)]
    return a


def qeval(c: QPoly, x):
    acc = 0
    for y in reversed(c):
        acc = acc * x + y
    return acc


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(qgcd(p.qpoly(), q.qpoly()))


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(qmul(p.qpoly(), q.qpoly()))


def poly_div(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Exact quotient p / q (primitive); raises if q does not divide p."""
    quo, rem = qdivmod(p.qpoly(), q.qpoly())
    if rem:
        raise ValueError(f"{q} does not divide {p}")
    return IntPolynomial(quo)


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'): same roots, all simple."""
    if p.degree < 1:
        return p
    g = qgcd(p.qpoly(), p.derivative())
    return IntPolynomial(qdivmod(p.qpoly(), g)[0])


def from_power_sums(s: Sequence[Fraction], d: int) -> IntPolynomial:
    """Monic polynomial of degree d whose roots have power sums s[0..d-1] (= s_1..s_d).

    Inverse Newton identities: k*e_k = sum_{i=1..k} (-1)**(i-1) e_{k-i} s_i.
    """
    e = [Fraction(1)]
    for k in range(1, d + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i - 1]
        e.append(acc / k)
    # prod (X - r) = sum_k (-1)**k e_k X**(d-k)
    return IntPolynomial([(-1) ** (d - j) * e[d - j] for j in range(d + 1)])
