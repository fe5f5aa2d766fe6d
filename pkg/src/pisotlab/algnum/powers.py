"""Exact powers of algebraic numbers and certified distances to the nearest integer."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactnum import DyadicInterval, floor_log2, iv_pow
from .poly import IntPolynomial, QPoly, from_power_sums, qdivmod, qmul, squarefree_part
from .roots import AlgebraicReal, refine_root

PRECISION_CAP = 2 ** 20


def trace_powers(p: IntPolynomial, N: int) -> list[Fraction]:
    """Power sums s_1..s_N of all complex roots of p (Newton's identities)."""
    c = p.coeffs
    d = p.degree
    lead = Fraction(c[-1])
    # e_k = (-1)^k a_{d-k} / a_d
    e = [Fraction(1)] + [(-1) ** k * c[d - k] / lead for k in range(1, d + 1)]
    s: list[Fraction] = []
    for k in range(1, N + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, d) + 1):
            acc += (-1) ** (i - 1) * e[i] * s[k - i - 1]
        if k <= d:
            acc += (-1) ** (k - 1) * k * e[k]
        s.append(acc)
    return s


def power_residue(x: AlgebraicReal, n: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of X**n mod the defining polynomial of x."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    f = x.poly.qpoly()
    d = x.poly.degree
    lead = f[-1]
    f = [c / lead for c in f]

    def mulmod(a: QPoly, b: QPoly) -> QPoly:
        return qdivmod(qmul(a, b), f)[1]

    result: QPoly = [Fraction(1)]
    base: QPoly = qdivmod([Fraction(0), Fraction(1)], f)[1]
    while n:
        if n & 1:
            result = mulmod(result, base)
        n >>= 1
        if n:
            base = mulmod(base, base)
    return tuple(result) + (Fraction(0),) * (d - len(result))


def power_poly(x: AlgebraicReal, n: int, scale=1) -> IntPolynomial:
    """Minimal polynomial of scale * x**n, assuming x.poly is irreducible.

    The characteristic polynomial of scale * x**n has power sums
    scale**k * s_{kn}; it is a power of the minimal polynomial, so its
    squarefree part is the answer.
    """
    d = x.poly.degree
    scale = Fraction(scale)
    s = trace_powers(x.poly, d * n)
    sums = [scale ** k * s[k * n - 1] for k in range(1, d + 1)]
    return squarefree_part(from_power_sums(sums, d))


def power_as_algebraic(x: AlgebraicReal, n: int, scale=1) -> AlgebraicReal:
    """scale * x**n as an AlgebraicReal, pinned from a certified enclosure."""
    poly = power_poly(x, n, scale)
    prec = 64
    while True:
        res = frac_power(x, n, prec=prec, scale=scale)
        if res.value is not None:
            try:
                return AlgebraicReal.from_enclosure(poly, res.value.lo, res.value.hi)
            except ValueError:
                pass
        prec *= 2
        if prec > PRECISION_CAP:
            raise RuntimeError("could not pin the power's root")


@dataclass(frozen=True)
class FracPower:
    """Certified nearest integer and distance for scale * x**n.

    ``nearest`` is None when the precision cap was hit before the nearest
    integer could be certified ("ambiguous at cap").
    """

    n: int
    nearest: int | None
    dist: DyadicInterval | None
    value: DyadicInterval | None
    working_prec: int

    @property
    def ambiguous(self) -> bool:
        return self.nearest is None


def _magnitude_bits(x: AlgebraicReal) -> int:
    m = max(abs(x.lo), abs(x.hi), Fraction(1))
    return floor_log2(m) + 1


def frac_power(x: AlgebraicReal, n: int, prec: int = 64, scale=1,
               cap: int = PRECISION_CAP) -> FracPower:
    """Certified ||scale * x**n|| and the nearest integer.

    The returned distance enclosure has width at most 2**-prec.  Working
    precision starts at what n*log2|x| requires and doubles until the
    nearest integer is certified and the width target is met, or ``cap``
    bits are exceeded.
    """
    if n < 1:
        raise ValueError("exponent must be positive")
    scale = Fraction(scale)
    if x.is_rational or scale == 0:
        v = scale * x.lo ** n
        k = math.floor(v + Fraction(1, 2))
        if v - k == Fraction(-1, 2) or v - k == Fraction(1, 2):
            # exact half integer: both neighbours are nearest, pick the lower
            k = math.floor(v)
        dist = abs(v - k)
        return FracPower(n, k, _exact_or_round(dist, prec), _exact_or_round(v, prec), 0)

    sgn = x.sign()
    if sgn < 0 and n % 2:
        scale = -scale
    extra = max(0, floor_log2(abs(scale)) + 1) if scale else 0
    work = max(64, prec + n * _magnitude_bits(x) + n.bit_length() + extra + 16)
    while work <= cap:
        root = refine_root(x, work)
        if sgn < 0:
            root = -root
        mant = work + n.bit_length() + 8
        value = iv_pow(root.with_prec(mant), n).scale(scale)
        lo, hi = value.lo, value.hi
        k = math.floor(lo + Fraction(1, 2))
        if k == math.floor(hi + Fraction(1, 2)) and lo > k - Fraction(1, 2):
            if lo >= k:
                dlo, dhi = lo - k, hi - k
            elif hi <= k:
                dlo, dhi = k - hi, k - lo
            else:
                dlo, dhi = Fraction(0), max(k - lo, hi - k)
            if dhi - dlo <= Fraction(1, 2 ** prec):
                return FracPower(n, k, DyadicInterval.exact(dlo, dhi, prec), value, work)
        work *= 2
    return FracPower(n, None, None, None, work // 2)


def _exact_or_round(v: Fraction, prec: int) -> DyadicInterval:
    d = v.denominator
    if d & (d - 1) == 0:
        return DyadicInterval.exact(v, v, prec)
    return DyadicInterval.from_rationals(v, v, prec + 2 + max(0, floor_log2(abs(v)) if v else 0))


def eval_residue(coeffs: Sequence[Fraction], enc: DyadicInterval, prec: int) -> DyadicInterval:
    """Enclosure of sum c_i * t**i over t in enc (Horner in interval arithmetic)."""
    acc = DyadicInterval.exact(0, 0, prec)
    t = enc.with_prec(prec)
    for c in reversed(coeffs):
        acc = acc * t + DyadicInterval.from_rationals(c, c, prec)
    return acc
