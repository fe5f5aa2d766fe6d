"""Exact integer roots and certified dyadic interval arithmetic.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are already unbounded and exact, so this module only adds what the
standard library lacks: integer k-th roots and intervals with dyadic
endpoints ``m * 2**e`` rounded outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Real = Union[int, Fraction]


def isqrt(n: int) -> int:
    """Return floor(sqrt(n)) for a nonnegative integer."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def nth_root_floor(n: int, k: int) -> int:
    """Return floor(n ** (1/k)) for n >= 0, k >= 1, using integers only.

    Integer Newton iteration from an overestimate; the iterates decrease
    monotonically to the floor of the root.
    """
    if k < 1:
        raise ValueError("root index must be positive")
    if n < 0:
        raise ValueError("root of a negative number")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    bits = n.bit_length()
    if k >= bits:
        # 2**k > n, so the root is 1
        return 1
    x = 1 << (-(-bits // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def nth_root_ceil(n: int, k: int) -> int:
    r = nth_root_floor(n, k)
    return r if r ** k == n else r + 1


def floor_log2(x: Fraction) -> int:
    """Largest e with 2**e <= x, for x > 0."""
    if x <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    x = Fraction(x)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    # now 2**(e-1) < x < 2**(e+1)
    if Fraction(2) ** e > x:
        e -= 1
    return e


# ---------------------------------------------------------------------------
# dyadic helpers: a dyadic number is a pair (m, e) meaning m * 2**e


def _dyadic(m: int, e: int) -> Fraction:
    return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)


def _round_down(m: int, e: int, prec: int | None) -> tuple[int, int]:
    if prec is None:
        return m, e
    shift = abs(m).bit_length() - prec
    if shift > 0:
        return m >> shift, e + shift
    return m, e


def _round_up(m: int, e: int, prec: int | None) -> tuple[int, int]:
    m, e = _round_down(-m, e, prec)
    return -m, e


def _floor_dyadic(x: Fraction, scale: int) -> tuple[int, int]:
    """floor(x * 2**scale) as the dyadic (m, -scale)."""
    x = Fraction(x)
    if scale >= 0:
        m = (x.numerator << scale) // x.denominator
    else:
        m = x.numerator // (x.denominator << -scale)
    return m, -scale


def _ceil_dyadic(x: Fraction, scale: int) -> tuple[int, int]:
    m, e = _floor_dyadic(-Fraction(x), scale)
    return -m, e


def _sig_scale(x: Fraction, prec: int) -> int:
    """Scale giving about ``prec`` significant bits for a nonzero x."""
    return prec - floor_log2(abs(x)) - 1


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval [lo, hi] with dyadic endpoints.

    Endpoints are stored as (mantissa, exponent) pairs. ``prec`` is the
    number of significant mantissa bits that results are rounded to;
    ``None`` means exact (no rounding).
    """

    lo_m: int
    lo_e: int
    hi_m: int
    hi_e: int
    prec: int | None = None

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # construction ---------------------------------------------------------

    @classmethod
    def exact(cls, lo: Real, hi: Real | None = None, prec: int | None = None) -> DyadicInterval:
        """Interval with exactly the given dyadic endpoints."""
        hi = lo if hi is None else hi
        lm, le = _as_dyadic(lo)
        hm, he = _as_dyadic(hi)
        return cls(lm, le, hm, he, prec)

    @classmethod
    def from_rationals(cls, lo: Real, hi: Real, prec: int) -> DyadicInterval:
        """Smallest prec-bit dyadic interval containing [lo, hi]."""
        lo, hi = Fraction(lo), Fraction(hi)
        lm, le = (0, 0) if lo == 0 else _floor_dyadic(lo, _sig_scale(lo, prec))
        hm, he = (0, 0) if hi == 0 else _ceil_dyadic(hi, _sig_scale(hi, prec))
        return cls(lm, le, hm, he, prec)

    @classmethod
    def point(cls, x: Real, prec: int) -> DyadicInterval:
        return cls.from_rationals(x, x, prec)

    # views ----------------------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return _dyadic(self.lo_m, self.lo_e)

    @property
    def hi(self) -> Fraction:
        return _dyadic(self.hi_m, self.hi_e)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        if isinstance(x, DyadicInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def subset_of(self, lo: Real, hi: Real) -> bool:
        return lo <= self.lo and self.hi <= hi

    def with_prec(self, prec: int | None) -> DyadicInterval:
        return DyadicInterval(self.lo_m, self.lo_e, self.hi_m, self.hi_e, prec)

    def intersect(self, other: DyadicInterval) -> DyadicInterval:
        lo = self if self.lo >= other.lo else other
        hi = self if self.hi <= other.hi else other
        if lo.lo > hi.hi:
            raise ValueError("intervals do not intersect")
        return DyadicInterval(lo.lo_m, lo.lo_e, hi.hi_m, hi.hi_e, _min_prec(self.prec, other.prec))

    def __repr__(self):
        return f"DyadicInterval([{float(self.lo)!r}, {float(self.hi)!r}], prec={self.prec})"

    def decimal(self, digits: int = 20) -> str:
        return f"[{to_decimal(self.lo, digits, 'floor')}, {to_decimal(self.hi, digits, 'ceil')}]"

    # arithmetic -----------------------------------------------------------

    def _make(self, lo: tuple[int, int], hi: tuple[int, int], prec) -> DyadicInterval:
        lo = _round_down(*lo, prec)
        hi = _round_up(*hi, prec)
        return DyadicInterval(lo[0], lo[1], hi[0], hi[1], prec)

    def __neg__(self):
        return DyadicInterval(-self.hi_m, self.hi_e, -self.lo_m, self.lo_e, self.prec)

    def __add__(self, other):
        other = _coerce(other)
        prec = _min_prec(self.prec, other.prec)
        return self._make(_add(self.lo_m, self.lo_e, other.lo_m, other.lo_e),
                          _add(self.hi_m, self.hi_e, other.hi_m, other.hi_e), prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        prec = _min_prec(self.prec, other.prec)
        prods = [(a * c, b + d)
                 for a, b in ((self.lo_m, self.lo_e), (self.hi_m, self.hi_e))
                 for c, d in ((other.lo_m, other.lo_e), (other.hi_m, other.hi_e))]
        lo = min(prods, key=lambda p: _dyadic(*p))
        hi = max(prods, key=lambda p: _dyadic(*p))
        return self._make(lo, hi, prec)

    __rmul__ = __mul__

    def reciprocal(self, prec: int | None = None) -> DyadicInterval:
        """Enclosure of {1/v : v in self}; the interval must exclude 0."""
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("reciprocal of an interval containing 0")
        prec = self.prec if prec is None else prec
        if prec is None:
            raise ValueError("reciprocal needs a finite precision")
        lo, hi = 1 / self.hi, 1 / self.lo
        return DyadicInterval.from_rationals(lo, hi, prec)

    def scale(self, c: Real) -> DyadicInterval:
        """Enclosure of c * self for an exact rational c."""
        c = Fraction(c)
        if c.denominator & (c.denominator - 1) == 0:
            return self * DyadicInterval.exact(c)
        a, b = sorted((c * self.lo, c * self.hi))
        if self.prec is None:
            raise ValueError("non-dyadic scaling needs a finite precision")
        return DyadicInterval.from_rationals(a, b, self.prec)


def _as_dyadic(x: Real) -> tuple[int, int]:
    x = Fraction(x)
    d = x.denominator
    if d & (d - 1):
        raise ValueError(f"{x} is not a dyadic rational")
    return x.numerator, -(d.bit_length() - 1)


def _add(m1, e1, m2, e2) -> tuple[int, int]:
    if e1 > e2:
        return (m1 << (e1 - e2)) + m2, e2
    return m1 + (m2 << (e2 - e1)), e1


def _min_prec(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


def _coerce(x) -> DyadicInterval:
    if isinstance(x, DyadicInterval):
        return x
    return DyadicInterval.exact(x)


def iv_pow(x: DyadicInterval, k: int, prec: int | None = None) -> DyadicInterval:
    """Enclosure of {v**k : v in x} for x.lo >= 0, by square-and-multiply.

    Each partial product is rounded outward to ``prec`` bits (defaults to
    ``x.prec``; ``None`` keeps everything exact).
    """
    if k < 1:
        raise ValueError("exponent must be positive")
    if x.lo < 0:
        raise ValueError("iv_pow needs a nonnegative interval")
    prec = x.prec if prec is None else prec
    lo = _pow_dyadic(x.lo_m, x.lo_e, k, prec, _round_down)
    hi = _pow_dyadic(x.hi_m, x.hi_e, k, prec, _round_up)
    return DyadicInterval(lo[0], lo[1], hi[0], hi[1], prec)


def _pow_dyadic(m: int, e: int, k: int, prec, rnd) -> tuple[int, int]:
    # m >= 0, so rounding each factor in the same direction keeps the bound
    rm, re = 1, 0
    bm, be = rnd(m, e, prec)
    while True:
        if k & 1:
            rm, re = rnd(rm * bm, re + be, prec)
        k >>= 1
        if not k:
            return rm, re
        bm, be = rnd(bm * bm, be + be, prec)


# past this many bits the exact integer root gets slow; switch to
# approximate-then-certify
_EXACT_ROOT_BITS = 1 << 17


def root_bounds(lo: Real, hi: Real, k: int, prec: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Dyadic (m, e) pairs bracketing lo**(1/k) from below and hi**(1/k) from above."""
    lo, hi = Fraction(lo), Fraction(hi)
    # absolute resolution 2**-s with 2**-s <= 2**-prec * hi**(1/k)
    s = prec + 1
    if hi < 1:
        s += -(-(-floor_log2(hi)) // k)
    if s * k + max(lo.numerator.bit_length(), hi.numerator.bit_length()) > _EXACT_ROOT_BITS:
        return (_root_floor_certified(lo, k, s), -s), (_root_ceil_certified(hi, k, s), -s)
    lo_m = nth_root_floor((lo.numerator << (s * k)) // lo.denominator, k)
    hi_m = nth_root_ceil(-((-hi.numerator << (s * k)) // hi.denominator), k)
    return (lo_m, -s), (hi_m, -s)


def _approx_root_scaled(x: Fraction, k: int, s: int) -> int:
    import mpmath

    bits = s + 64 + max(0, floor_log2(x) // k if x > 0 else 0)
    with mpmath.workprec(bits):
        r = mpmath.root(mpmath.mpf(x.numerator) / x.denominator, k)
        return int(mpmath.floor(mpmath.ldexp(r, s)))


def _pow_bound(m: int, s: int, k: int, rnd) -> Fraction:
    # (m * 2**-s)**k rounded in the direction of rnd, with enough bits that
    # the rounding error is far below one step of m
    P = m.bit_length() + 2 * k.bit_length() + 32
    pm, pe = _pow_dyadic(m, -s, k, P, rnd)
    return _dyadic(pm, pe)


def _root_floor_certified(x: Fraction, k: int, s: int) -> int:
    """Some m with (m * 2**-s)**k <= x, within a few units of the floor."""
    if x == 0:
        return 0
    m = _approx_root_scaled(x, k, s) - 1
    step = 1
    while m > 0 and _pow_bound(m, s, k, _round_up) > x:
        m -= step
        step *= 2
    return max(m, 0)


def _root_ceil_certified(x: Fraction, k: int, s: int) -> int:
    """Some m with (m * 2**-s)**k >= x, within a few units of the ceiling."""
    m = _approx_root_scaled(x, k, s) + 2
    step = 1
    while _pow_bound(m, s, k, _round_down) < x:
        m += step
        step *= 2
    return m


def iv_root(x: DyadicInterval, k: int, prec: int) -> DyadicInterval:
    """Enclosure of {v**(1/k) : v in x} for x.lo >= 0.

    Endpoint rounding adds at most 2**(1-prec) * x.hi**(1/k) to the width of
    the exact image.
    """
    return rational_root(x.lo, x.hi, k, prec)


def rational_root(lo: Real, hi: Real, k: int, prec: int) -> DyadicInterval:
    """Enclosure of [lo, hi]**(1/k) for exact rational endpoints."""
    if k < 1:
        raise ValueError("root index must be positive")
    if lo < 0:
        raise ValueError("iv_root needs a nonnegative interval")
    if lo > hi:
        raise ValueError("empty interval")
    if hi == 0:
        return DyadicInterval(0, 0, 0, 0, prec)
    (lm, le), (hm, he) = root_bounds(lo, hi, k, prec)
    return DyadicInterval(lm, le, hm, he, prec)


def inner_root(lo: Real, hi: Real, k: int, prec: int) -> DyadicInterval | None:
    """A dyadic interval contained in [lo, hi]**(1/k), or None if rounding empties it."""
    lo, hi = Fraction(lo), Fraction(hi)
    s = prec + 1
    if hi < 1:
        s += -(-(-floor_log2(hi)) // k)
    if s * k + max(lo.numerator.bit_length(), hi.numerator.bit_length()) > _EXACT_ROOT_BITS:
        lo_m = _root_ceil_certified(lo, k, s)
        hi_m = _root_floor_certified(hi, k, s)
    else:
        lo_m = nth_root_ceil(-((-lo.numerator << (s * k)) // lo.denominator), k)
        hi_m = nth_root_floor((hi.numerator << (s * k)) // hi.denominator, k)
    if lo_m > hi_m:
        return None
    return DyadicInterval(lo_m, -s, hi_m, -s, None)


def to_decimal(x: Real, digits: int = 20, rounding: str = "nearest") -> str:
    """Fixed-point decimal string of an exact rational with ``digits`` places."""
    x = Fraction(x)
    scaled = x * 10 ** digits
    if rounding == "floor":
        n = math.floor(scaled)
    elif rounding == "ceil":
        n = math.ceil(scaled)
    else:
        n = round(scaled)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
