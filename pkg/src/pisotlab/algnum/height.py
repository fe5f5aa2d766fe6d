"""Certified Mahler measure and absolute Weil height."""

from __future__ import annotations

from fractions import Fraction

from ..exactnum import DyadicInterval, rational_root
from .pisot import check_irreducible_screen
from .poly import IntPolynomial
from .roots import AlgebraicReal, root_bound
from .schur import UnitCircleRootError, schur_cohn_inside


def disk_count(p: IntPolynomial, r: Fraction) -> int:
    """Number of roots of p with |z| < r (exact; raises if a root has |z| == r)."""
    return schur_cohn_inside(p.scaled(Fraction(r)))


def _safe_radius(p: IntPolynomial, r: Fraction, lo: Fraction, hi: Fraction) -> tuple[Fraction, int]:
    """A radius near r in (lo, hi) with no root on its circle, with its disk count."""
    step = (hi - lo) / 64
    for j in range(64):
        cand = r + (j // 2 + 1) * step * (1 if j % 2 else -1) if j else r
        if not lo < cand < hi:
            continue
        try:
            return cand, disk_count(p, cand)
        except UnitCircleRootError:
            continue
    raise RuntimeError("no root-free circle found")


def mahler_measure(p: IntPolynomial, prec: int) -> tuple[Fraction, Fraction]:
    """Rational bracket [lo, hi] of |a_d| * prod max(1, |root|), relative width about 2**-prec.

    Root moduli are bracketed by counting roots in disks |z| < r and
    bisecting on r; only exact counts are used.
    """
    d = p.degree
    R = root_bound(p)
    try:
        r0, n0 = Fraction(1), disk_count(p, Fraction(1))
    except UnitCircleRootError:
        r0, n0 = _safe_radius(p, Fraction(1, 2), Fraction(1, 4), Fraction(1))
    # each bucket holds the roots with r_lo <= |z| < r_hi
    buckets = [(r0, n0, R, d)] if d > n0 else []
    tol = Fraction(1, 2 ** (prec + 2)) / d
    m_lo = m_hi = Fraction(abs(p.leading))
    while buckets:
        lo, n_lo, hi, n_hi = buckets.pop()
        k = n_hi - n_lo
        if hi <= 1:
            continue
        if (hi - lo) / max(lo, Fraction(1)) <= tol:
            m_lo *= max(Fraction(1), lo) ** k
            m_hi *= hi ** k
            continue
        mid, n_mid = _safe_radius(p, (lo + hi) / 2, lo, hi)
        if n_mid > n_lo:
            buckets.append((lo, n_lo, mid, n_mid))
        if n_hi > n_mid:
            buckets.append((mid, n_mid, hi, n_hi))
    return m_lo, m_hi


def weil_height(x: AlgebraicReal, prec: int = 64, screen: bool = True) -> DyadicInterval:
    """Certified enclosure of H(x) = M(minpoly)**(1/d)."""
    p = x.poly
    if p.degree == 1:
        return DyadicInterval.exact(max(abs(c) for c in p.coeffs), None, prec)
    if screen:
        check_irreducible_screen(p)
    lo, hi = mahler_measure(p, prec + 4)
    return rational_root(lo, hi, p.degree, prec)
