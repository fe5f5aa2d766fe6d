"""Continued fractions of quadratic irrationals.

Expansion runs the classical surd recurrence on states ``(P + sqrt(d)) / Q``
with ``Q | d - P^2`` and detects the period by hashing states, so it always
terminates with the exact preperiod and least period.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterator, Union

from .exactnum import isqrt
from .quadirr import QuadIrr


class BelowValidityThreshold(ValueError):
    """The closed-form unit expansion is not claimed for this exponent."""


@dataclass(frozen=True)
class SurdState:
    """The number (P + sqrt(d)) / Q, with Q dividing d - P^2.

    ``d`` is the radicand after scaling and need not be squarefree.
    """

    P: int
    Q: int
    d: int

    @classmethod
    def from_quadirr(cls, x: QuadIrr) -> SurdState:
        # (a + b sqrt(D)) / c  ==  (a + sqrt(b^2 D)) / c, up to the sign of b
        P, Q, d = x.a, x.c, x.b * x.b * x.D
        if x.b < 0:
            P, Q = -P, -Q
        if (d - P * P) % Q:
            # multiply through by |Q| to reach the divisibility normal form
            P, Q, d = P * abs(Q), Q * abs(Q), d * Q * Q
        return cls(P, Q, d)

    def partial_quotient(self) -> int:
        r = isqrt(self.d)
        if self.Q > 0:
            return (self.P + r) // self.Q
        # (P + s)/Q with Q < 0 and s irrational in (r, r+1)
        return -((self.P + r) // -self.Q) - 1

    def step(self) -> tuple[int, SurdState]:
        a = self.partial_quotient()
        P = a * self.Q - self.P
        Q = (self.d - P * P) // self.Q
        return a, SurdState(P, Q, self.d)


@dataclass(frozen=True)
class ContinuedFraction:
    """Eventually periodic continued fraction ``[preperiod..., (period...)]``.

    An empty period denotes a finite expansion (a rational number).
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __init__(self, preperiod=(), period=()):
        object.__setattr__(self, "preperiod", tuple(int(a) for a in preperiod))
        object.__setattr__(self, "period", tuple(int(a) for a in period))

    @property
    def is_purely_periodic(self) -> bool:
        return bool(self.period) and not self.preperiod

    def canonical(self) -> ContinuedFraction:
        """Least period, with as much of the preperiod folded in as possible."""
        pre, per = list(self.preperiod), list(self.period)
        if not per:
            return ContinuedFraction(pre, ())
        per = per[: least_period(per)]
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        return ContinuedFraction(pre, per)

    def terms(self) -> Iterator[int]:
        yield from self.preperiod
        while self.period:
            yield from self.period

    def term(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            raise IndexError("finite continued fraction")
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def format(self) -> str:
        per = f"({', '.join(map(str, self.period))})" if self.period else ""
        if not self.preperiod:
            return f"[{per}]"
        head, *rest = self.preperiod
        tail = [str(a) for a in rest] + ([per] if per else [])
        return f"[{head}; {', '.join(tail)}]" if tail else f"[{head}]"

    def __str__(self):
        return self.format()

    @classmethod
    def parse(cls, text: str) -> ContinuedFraction:
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"bad continued fraction {text!r}")
        s = s[1:-1]
        m = re.search(r"\(([^()]*)\)\s*$", s)
        period: list[int] = []
        if m:
            period = [int(t) for t in m.group(1).split(",") if t.strip()]
            if not period:
                raise ValueError(f"empty period in {text!r}")
            s = s[: m.start()]
        s = s.strip().rstrip(",").strip()
        pre = [int(t) for t in re.split(r"[;,]", s) if t.strip()] if s else []
        return cls(pre, period)

    def evaluate(self, D: int | None = None) -> Union[QuadIrr, Fraction]:
        """Exact value, solving the fixed-point quadratic of the periodic tail.

        Long periods give discriminants far too large to factor; pass the
        field's squarefree ``D`` when it is known and the discriminant is
        split as s*s*D by one exact division and a square root.
        """
        if not self.period:
            if not self.preperiod:
                raise ValueError("empty continued fraction")
            return _fold(self.preperiod, None)
        # y = [period...] satisfies q1 y^2 + (q0 - p1) y - p0 = 0
        (p1, q1), (p0, q0) = _last_two_convergents(self.period)
        A, B, C = q1, q0 - p1, -p0
        disc = B * B - 4 * A * C
        if D is None:
            y = QuadIrr.normalize(-B, 1, 2 * A, disc)
        else:
            t, r = divmod(disc, D)
            s = isqrt(t) if r == 0 and t > 0 else -1
            if s * s != t:
                raise ValueError(f"the tail does not lie in Q(sqrt({D}))")
            y = QuadIrr.normalize(-B, s, 2 * A, D)
        return _fold(self.preperiod, y)


def _last_two_convergents(terms) -> tuple[tuple[int, int], tuple[int, int]]:
    p_prev, q_prev, p, q = 1, 0, terms[0], 1
    for a in terms[1:]:
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
    return (p, q), (p_prev, q_prev)


def _fold(terms, tail):
    """Value of [terms..., tail] (tail None means stop)."""
    value = tail
    for a in reversed(terms):
        value = Fraction(a) if value is None else a + 1 / value
    return value


def least_period(seq) -> int:
    """Length of the smallest block whose repetition gives the cyclic word seq."""
    n = len(seq)
    # prefix function (failure array)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1] if n else 0
    return p if p and n % p == 0 else n


def expand(x: QuadIrr) -> ContinuedFraction:
    """Exact preperiod and least period of a quadratic irrational."""
    start = SurdState.from_quadirr(x)
    P, Q, d = start.P, start.Q, start.d
    r = isqrt(d)
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    while (P, Q) not in seen:
        seen[P, Q] = len(quotients)
        a = (P + r) // Q if Q > 0 else -((P + r) // -Q) - 1
        P = a * Q - P
        Q = (d - P * P) // Q
        quotients.append(a)
    first = seen[P, Q]
    return ContinuedFraction(quotients[:first], quotients[first:])


def rational_cf(x: Fraction) -> ContinuedFraction:
    """Finite expansion of a rational number."""
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    terms = []
    while d:
        a, r = divmod(n, d)
        terms.append(a)
        n, d = d, r
    return ContinuedFraction(terms, ())


def is_reduced(x: QuadIrr) -> bool:
    """x > 1 and -1 < x' < 0."""
    xc = x.conjugate()
    return x > 1 and xc < 0 and xc > -1


def convergents(cf: ContinuedFraction, k: int) -> list[tuple[int, int]]:
    """First k convergents (p_h, q_h) of the unrolled expansion."""
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    p_prev, q_prev, p, q = 0, 1, 1, 0
    for i, a in enumerate(cf.terms()):
        if i == k:
            break
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        out.append((p, q))
    return out


@dataclass(frozen=True)
class Unimodular:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) != 1:
            raise ValueError("matrix is not unimodular")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def apply_unimodular(T: Unimodular, x: QuadIrr) -> QuadIrr:
    """(a x + b) / (c x + d)."""
    if T.c == 0 and T.d == 0:
        raise ZeroDivisionError("singular Moebius map")
    num = T.a * x + T.b
    den = T.c * x + T.d
    result = num / den
    if not isinstance(result, QuadIrr):
        raise AssertionError("unimodular image of an irrational became rational")
    return result


def is_rotation(u, v) -> bool:
    if len(u) != len(v):
        return False
    return not u or " ".join(map(str, v)) in " ".join(map(str, list(u) + list(u)))


@dataclass(frozen=True)
class PeriodRow:
    n: int
    period_length: int
    preperiod_length: int


def period_of_power_table(x: QuadIrr, N: int) -> list[PeriodRow]:
    """Period and preperiod lengths of the expansions of x**n, n = 1..N.

    Rational powers get period length 0 and the length of their finite
    expansion as preperiod length.
    """
    if N < 1:
        raise ValueError("N must be positive")
    rows = []
    for n in range(1, N + 1):
        y = x ** n
        if isinstance(y, QuadIrr):
            cf = expand(y)
            rows.append(PeriodRow(n, len(cf.period), len(cf.preperiod)))
        else:
            rows.append(PeriodRow(n, 0, len(rational_cf(y).preperiod)))
    return rows


def unit_traces(u: QuadIrr, N: int) -> list[int]:
    """t_0..t_N, traces of u**n, from t_{n+1} = t_1 t_n - N(u) t_{n-1}."""
    cls = u.classify()
    t1, nu = int(cls.trace), int(cls.norm)
    t = [2, t1]
    while len(t) <= N:
        t.append(t1 * t[-1] - nu * t[-2])
    return t[: N + 1]


def unit_cf_closed_form(u: QuadIrr, n: int) -> ContinuedFraction:
    """Closed-form expansion of u**n for a unit u > 1.

    Norm -1 powers give ``[(t_n)]``; norm +1 powers give
    ``[t_n - 1; (1, t_n - 2)]``, claimed once t_n >= 3.
    """
    cls = u.classify()
    if not cls.is_unit:
        raise ValueError(f"{u} is not a unit")
    if not u > 1:
        raise ValueError("closed forms need u > 1")
    if n < 1:
        raise ValueError("exponent must be positive")
    t = unit_traces(u, n)[n]
    if int(cls.norm) ** n == -1:
        return ContinuedFraction((), (t,))
    if t < 3:
        raise BelowValidityThreshold(f"t_{n} = {t} < 3")
    return ContinuedFraction((t - 1,), (1, t - 2)).canonical()


@dataclass(frozen=True)
class GrowthRow:
    n: int
    quotient: int
    log_ratio: Decimal


def partial_quotient_growth(x: QuadIrr, i: int, N: int, digits: int = 30) -> list[GrowthRow]:
    """The i-th partial quotient of x**n and log(a_i(n)) / n, skipping rational powers."""
    if i < 1:
        raise ValueError("index must be at least 1")
    rows = []
    with localcontext() as ctx:
        ctx.prec = digits
        for n in range(1, N + 1):
            y = x ** n
            if not isinstance(y, QuadIrr):
                continue
            a = expand(y).term(i)
            rows.append(GrowthRow(n, a, Decimal(a).ln() / n))
    return rows


def numeric_cf_terms(x: QuadIrr, count: int, digits: int | None = None) -> list[int]:
    """First ``count`` partial quotients from a plain decimal expansion.

    Deliberately independent of the exact engine (no surd recurrence); used
    only as a cross-check.
    """
    if digits is None:
        digits = 50 + count * (4 + len(str(abs(x.a)) + str(abs(x.b * x.b * x.D))))
    with localcontext() as ctx:
        ctx.prec = digits
        v = (Decimal(x.a) + Decimal(x.b) * Decimal(x.D).sqrt()) / Decimal(x.c)
        out = []
        for _ in range(count):
            a = math.floor(v)
            out.append(a)
            v = 1 / (v - a)
    return out
