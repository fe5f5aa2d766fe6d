"""Real roots of integer polynomials: Sturm isolation and bisection refinement."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..exactnum import DyadicInterval, floor_log2
from .poly import IntPolynomial, QPoly, qdivmod, squarefree_part


def sturm_chain(p: IntPolynomial) -> list[QPoly]:
    chain = [p.qpoly(), p.derivative()]
    while chain[-1] and len(chain[-1]) > 1:
        rem = qdivmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append([-c for c in rem])
    return [c for c in chain if c]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _eval(c: QPoly, x: Fraction):
    acc = Fraction(0)
    for y in reversed(c):
        acc = acc * x + y
    return acc


def variations_at(chain: list[QPoly], x) -> int:
    if x == float("inf"):
        return _variations(_sign(c[-1]) for c in chain)
    if x == float("-inf"):
        return _variations(_sign(c[-1]) * (-1) ** (len(c) - 1) for c in chain)
    return _variations(_sign(_eval(c, x)) for c in chain)


def count_roots(chain: list[QPoly], a, b) -> int:
    """Number of distinct real roots in (a, b]."""
    return variations_at(chain, a) - variations_at(chain, b)


def root_bound(p: IntPolynomial) -> Fraction:
    """A power of two strictly exceeding every root modulus (Cauchy bound)."""
    c = p.coeffs
    m = 1 + max(Fraction(abs(x), abs(c[-1])) for x in c[:-1]) if len(c) > 1 else Fraction(1)
    return Fraction(2) ** (floor_log2(m) + 1)


def sturm_isolate(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the real roots of a squarefree p, ascending.

    An interval ``(lo, hi)`` with ``lo < hi`` contains exactly one root and p
    changes sign strictly between its endpoints; ``lo == hi`` is an exact
    rational root.  Endpoints are dyadic.
    """
    if p.degree < 1:
        return []
    chain = sturm_chain(p)
    B = root_bound(p)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        k = count_roots(chain, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append(_tidy(p, chain, a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


def _tidy(p, chain, a, b) -> tuple[Fraction, Fraction]:
    """Turn a one-root half-open interval (a, b] into the isolate convention."""
    if p.sign_at(b) == 0:
        return (b, b)
    while p.sign_at(a) == 0:
        m = (a + b) / 2
        if p.sign_at(m) == 0:
            return (m, m)
        if count_roots(chain, m, b) == 1:
            a = m
        else:
            b = m
    return (a, b)


class RootSelectionError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root of a squarefree integer polynomial, pinned by an isolating interval."""

    poly: IntPolynomial
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty isolating interval")
        if self.lo == self.hi:
            if self.poly.sign_at(self.lo) != 0:
                raise ValueError("point isolate is not a root")
        elif self.poly.sign_at(self.lo) * self.poly.sign_at(self.hi) >= 0:
            raise ValueError("poly does not change sign on the isolate")

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def degree(self) -> int:
        return self.poly.degree

    @classmethod
    def from_rational(cls, q) -> AlgebraicReal:
        q = Fraction(q)
        return cls(IntPolynomial([-q.numerator, q.denominator]), q, q)

    @classmethod
    def from_poly(cls, p: IntPolynomial, k: int) -> AlgebraicReal:
        """k-th real root in ascending order, 1-based; negative k counts from the top."""
        roots = real_roots(p)
        if k == 0 or not -len(roots) <= k <= len(roots):
            raise RootSelectionError(f"{p} has {len(roots)} real roots; cannot select root {k}")
        return roots[k - 1] if k > 0 else roots[k]

    @classmethod
    def from_enclosure(cls, p: IntPolynomial, lo, hi) -> AlgebraicReal:
        """The unique real root of p in [lo, hi]."""
        lo, hi = Fraction(lo), Fraction(hi)
        hits = []
        for r in real_roots(p):
            for end in (lo, hi):
                if r.lo <= end <= r.hi and r.poly.sign_at(end) == 0:
                    r = AlgebraicReal(r.poly, end, end)
            for _ in range(10_000):
                if r.hi < lo or r.lo > hi:
                    break
                if lo <= r.lo and r.hi <= hi:
                    hits.append(r)
                    break
                r = r.bisect()
            else:
                raise RootSelectionError("cannot separate a root from the enclosure boundary")
        if len(hits) != 1:
            raise RootSelectionError(f"{len(hits)} roots of {p} in [{lo}, {hi}]")
        return hits[0]

    @classmethod
    def parse(cls, poly_text: str, selector: str) -> AlgebraicReal:
        """Polynomial ``"-1,-1,1"`` plus selector ``"K"``, ``"kth-real"`` style or ``"in:(lo,hi)"``."""
        p = IntPolynomial.parse(poly_text)
        sel = selector.strip()
        if sel.startswith("root="):
            sel = sel[5:]
        m = re.fullmatch(r"in:\(?\s*([^,()]+)\s*,\s*([^,()]+)\s*\)?", sel)
        if m:
            return cls.from_enclosure(p, Fraction(m.group(1)), Fraction(m.group(2)))
        m = re.fullmatch(r"(-?\d+)(?:st|nd|rd|th)?(?:-real)?", sel)
        if m:
            return cls.from_poly(p, int(m.group(1)))
        if sel == "largest":
            return cls.from_poly(p, -1)
        raise RootSelectionError(f"bad root selector {selector!r}")

    def bisect(self) -> AlgebraicReal:
        if self.is_rational:
            return self
        m = (self.lo + self.hi) / 2
        s = self.poly.sign_at(m)
        if s == 0:
            return AlgebraicReal(self.poly, m, m)
        if s == self.poly.sign_at(self.lo):
            return AlgebraicReal(self.poly, m, self.hi)
        return AlgebraicReal(self.poly, self.lo, m)

    def sign(self) -> int:
        r = self
        while not (r.lo > 0 or r.hi < 0 or (r.is_rational and r.lo == 0)):
            r = r.bisect()
        return _sign(r.lo)

    def __float__(self):
        enc = refine_root(self, 60)
        return float(enc.mid)

    def __str__(self):
        return f"root of {self.poly} in [{self.lo}, {self.hi}]"


def real_roots(p: IntPolynomial) -> list[AlgebraicReal]:
    """All real roots of p in ascending order (duplicates removed)."""
    q = squarefree_part(p)
    return [AlgebraicReal(q, lo, hi) for lo, hi in sturm_isolate(q)]


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """Rational roots of p.

    A rational root has denominator dividing the leading coefficient, and two
    such rationals are at least 1/lead**2 apart, so each real root is refined
    until that spacing pins a unique candidate, which is then tested exactly.
    """
    out = []
    lead = p.leading
    sep = Fraction(1, 2 * lead * lead)
    for r in real_roots(p):
        while r.hi - r.lo > sep:
            r = r.bisect()
        c = r.lo if r.is_rational else ((r.lo + r.hi) / 2).limit_denominator(lead)
        if p.sign_at(c) == 0:
            out.append(c)
    return out


# best bracket seen so far for each root; refinement is deterministic, so this
# only saves work
_BRACKETS: dict[tuple, tuple[Fraction, Fraction]] = {}


def refine_root(x: AlgebraicReal, prec: int) -> DyadicInterval:
    """Certified dyadic enclosure of the root with width at most 2**-prec."""
    if x.is_rational:
        q = x.lo
        if q.denominator & (q.denominator - 1) == 0:
            return DyadicInterval.exact(q, q, prec)
        return DyadicInterval.from_rationals(q, q, prec + 2 + max(0, floor_log2(abs(q)) if q else 0))
    key = (x.poly, x.lo, x.hi)
    lo, hi = _BRACKETS.get(key, (x.lo, x.hi))
    target = Fraction(1, 2 ** (prec + 1))
    if hi - lo <= target:
        # a deeper cached bracket: step back to the level a fresh bisection
        # would stop at, so the result does not depend on call history
        w = x.hi - x.lo
        while w > target:
            w /= 2
        lo = x.lo + ((lo - x.lo) // w) * w
        hi = lo + w
    s_lo = x.poly.sign_at(lo)
    while hi - lo > target:
        m = (lo + hi) / 2
        s = x.poly.sign_at(m)
        if s == 0:
            return DyadicInterval.exact(m, m, prec) if _is_dyadic(m) else DyadicInterval.from_rationals(m, m, prec)
        if s == s_lo:
            lo = m
        else:
            hi = m
    _BRACKETS[key] = (lo, hi)
    if _is_dyadic(lo) and _is_dyadic(hi):
        return DyadicInterval.exact(lo, hi, prec)
    scale = prec + 2
    return DyadicInterval.exact(
        Fraction((lo.numerator << scale) // lo.denominator, 1 << scale),
        Fraction(-((-hi.numerator << scale) // hi.denominator), 1 << scale),
        prec,
    )


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


Number = Union[int, Fraction]
