import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fibonacci, lucas, numeric_inside_count
from pisotlab.algnum import (AlgebraicReal, IntPolynomial, PisotKind, ReducibleError,
                             RootSelectionError, UnitCircleRootError, classify_pisot, disk_count,
                             eval_residue, frac_power, mahler_measure, power_poly, power_residue,
                             rational_roots, real_roots, refine_root, schur_cohn_inside,
                             squarefree_part, sturm_isolate, trace_powers, unit_circle_factor,
                             unit_circle_roots, weil_height)
from pisotlab.algnum.roots import _BRACKETS
from pisotlab.exactnum import iv_pow
from pisotlab.quadirr import QuadIrr

P = IntPolynomial.parse


def root(poly: str, sel: str = "largest") -> AlgebraicReal:
    return AlgebraicReal.parse(poly, sel)


def test_poly_parse_forms():
    assert P("-1,-1,1") == P("X^2-X-1") == P("x**2 - x - 1")
    assert P("2x^2-6x+1").coeffs == (1, -6, 2)
    assert P("-2,-2,2") == P("-1,-1,1")
    assert P("X^5-X-1").degree == 5
    with pytest.raises(ValueError):
        IntPolynomial([0, 0])


def test_squarefree_part_examples():
    assert squarefree_part(P("1,-2,1")) == P("-1,1")
    assert squarefree_part(P("-2,0,1")) == P("-2,0,1")
    # (X^2-2)^2 (X-3)
    assert squarefree_part(P("X^5-3X^4-4X^3+12X^2+4X-12")) == P("X^3-3X^2-2X+6")


def test_sturm_isolate_examples():
    iv = sturm_isolate(P("-2,0,1"))
    assert len(iv) == 2
    (a, b), (c, d) = iv
    assert a <= -1.41422 and -1.41421 <= b <= c <= 1.41421 and 1.41422 <= d
    assert b <= c and 0 not in (a, d)
    assert sturm_isolate(P("1,0,1")) == []
    phi_iv = sturm_isolate(P("-1,-1,1"))
    assert len(phi_iv) == 2
    assert phi_iv[0][0] <= -0.618 <= phi_iv[0][1] and phi_iv[1][0] <= 1.618 <= phi_iv[1][1]


def test_refine_root_examples():
    phi = root("-1,-1,1")
    e = refine_root(phi, 30)
    assert e.width <= Fraction(2, 2 ** 29)
    gold = QuadIrr.parse("(1+sqrt(5))/2")
    assert (gold - e.lo).sign() >= 0 and (gold - e.hi).sign() <= 0
    seven = refine_root(root("-7,1"), 64)
    assert seven.lo == seven.hi == 7
    assert refine_root(phi, 60) in refine_root(phi, 30)


def test_refine_root_history_independent():
    x = root("-3,-1,1")
    _BRACKETS.clear()
    fresh = refine_root(x, 40)
    deep = refine_root(x, 200)
    assert refine_root(x, 40) == fresh and deep in fresh


def test_root_selection():
    p = "-2,0,1"
    assert root(p, "1").hi <= 0 <= root(p, "2").lo
    assert root(p, "-1") == root(p, "largest")
    assert root(p, "in:(1,2)").lo > 0
    with pytest.raises(RootSelectionError):
        root(p, "3")
    with pytest.raises(RootSelectionError):
        root(p, "in:(-2,2)")


def test_rational_roots():
    assert rational_roots(P("2X^3-3X^2-2X+3")) == [Fraction(-1), Fraction(1), Fraction(3, 2)]
    assert rational_roots(P("-2,0,1")) == []


def test_schur_examples():
    assert schur_cohn_inside(P("2,-4,1")) == 1
    assert schur_cohn_inside(P("-1,-1,1")) == 1
    assert schur_cohn_inside(P("-2,1")) == 0
    with pytest.raises(UnitCircleRootError):
        schur_cohn_inside(P("1,1,1"))


def test_unit_circle_examples():
    assert unit_circle_factor(P("-1,-1,1")).degree == 0
    g = unit_circle_factor(P("1,-3,1"))
    assert g == P("1,-3,1") and unit_circle_roots(P("1,-3,1")) == 0
    assert unit_circle_factor(P("1,1,1")) == P("1,1,1")
    assert unit_circle_roots(P("1,1,1")) == 2
    assert unit_circle_roots(P("1,0,0,0,1")) == 4
    assert unit_circle_roots(P("-1,1")) == 1


@pytest.mark.parametrize("poly, kind", [
    ("-1,-1,1", PisotKind.PISOT),
    ("1,-6,2", PisotKind.PSEUDO_PISOT_NON_INTEGER),
    ("1,-5,2", PisotKind.NEITHER),
    ("-3,-1,1", PisotKind.NEITHER),
    ("-1,-1,0,1", PisotKind.PISOT),          # plastic number
    ("-1,-1,1,1", None),
])
def test_classify_examples(poly, kind):
    x = root(poly)
    if kind is None:
        # X^3+X^2-X-1 = (X-1)(X+1)^2 is rejected by the screen
        with pytest.raises(ReducibleError):
            classify_pisot(x)
        return
    c = classify_pisot(x)
    assert c.kind is kind
    if c.is_pseudo_pisot:
        assert c.trace.denominator == 1 and c.others_inside


def test_classify_details():
    c = classify_pisot(root("1,-6,2"))
    assert c.trace == 3 and not c.monic and c.inside_count == 1
    assert classify_pisot(root("1,-5,2")).trace == Fraction(5, 2)
    neg = classify_pisot(root("-1,1,1", "1"))   # -phi
    assert neg.kind is PisotKind.PSEUDO_PISOT_NEGATIVE
    with pytest.raises(ValueError):
        classify_pisot(root("-1,-1,1", "1"))    # phi' has |x| < 1
    salem = classify_pisot(root("X^4-X^3-X^2-X+1"))
    assert salem.kind is PisotKind.NEITHER and salem.unit_circle_roots == 2


def test_weil_height_examples():
    h = weil_height(AlgebraicReal.from_rational(Fraction(3, 2)))
    assert h.lo == h.hi == 3
    h = weil_height(root("-1,-1,1"), 40)
    assert h.lo <= math.sqrt((1 + math.sqrt(5)) / 2) <= h.hi and h.width < 1e-10
    h = weil_height(root("-2,0,1"), 40)
    assert h.lo ** 2 <= 2 <= h.hi ** 2
    with pytest.raises(ReducibleError):
        weil_height(root("X^3-2X^2-X+2"))


def test_mahler_measure_against_numpy():
    for poly in ("X^5-X^4-X^3+X^2+1", "3X^4-2X^3+X-5", "X^6-2X^3+7", "2X^3+X^2+X+1"):
        p = P(poly)
        lo, hi = mahler_measure(p, 40)
        r = np.roots(list(reversed(p.coeffs)))
        m = abs(p.leading) * np.prod([max(1.0, abs(z)) for z in r])
        assert float(lo) <= m * (1 + 1e-9) and m * (1 - 1e-9) <= float(hi)
        assert (hi - lo) / lo < Fraction(1, 2 ** 30)


def test_disk_count():
    p = P("X^2-4X+2")
    assert disk_count(p, Fraction(1)) == 1
    assert disk_count(p, Fraction(4)) == 2
    assert disk_count(p, Fraction(1, 2)) == 0


def test_power_residue_examples():
    phi = root("-1,-1,1")
    assert power_residue(phi, 2) == (1, 1)
    assert power_residue(phi, 10) == (34, 55)
    assert power_residue(phi, 0) == (1, 0)
    for n in range(1, 40):
        assert power_residue(phi, n) == (fibonacci(n - 1), fibonacci(n))


def test_trace_powers_examples():
    assert trace_powers(P("-1,-1,1"), 5) == [1, 3, 4, 7, 11]
    assert trace_powers(P("-1,-2,1"), 4) == [2, 6, 14, 34]
    assert trace_powers(P("-5,1"), 4) == [5, 25, 125, 625]
    assert trace_powers(P("-1,-1,1"), 30) == [lucas(n) for n in range(1, 31)]
    assert trace_powers(P("1,-6,2"), 2) == [3, 8]


def test_power_poly():
    phi = root("-1,-1,1")
    assert power_poly(phi, 2) == P("1,-3,1")
    assert power_poly(root("-2,0,1"), 2) == P("-2,1")
    assert power_poly(phi, 3, scale=2) == P("X^2-8X-4")


def test_frac_power_examples():
    phi = root("-1,-1,1")
    fp = frac_power(phi, 10, prec=40)
    assert fp.nearest == 123
    phi10 = ((1 + math.sqrt(5)) / 2) ** 10
    assert fp.dist.lo <= 123 - phi10 + 1e-12 and 123 - phi10 - 1e-12 <= fp.dist.hi
    assert fp.dist.width <= Fraction(1, 2 ** 40)

    x = root("2,-4,1")
    fp = frac_power(x, 5, prec=40)
    s5 = trace_powers(x.poly, 5)[-1]
    assert fp.nearest == s5
    assert abs(float(fp.dist.mid) - (2 - math.sqrt(2)) ** 5) < 1e-12

    fp = frac_power(AlgebraicReal.from_rational(Fraction(3, 2)), 2)
    assert fp.nearest == 2 and fp.dist.lo == fp.dist.hi == Fraction(1, 4)


def test_frac_power_cap_sentinel():
    fp = frac_power(root("-1,-1,1"), 200, prec=64, cap=64)
    assert fp.ambiguous and fp.dist is None


def test_frac_power_lucas_oracle():
    phi = root("-1,-1,1")
    # phi' = -0.618 so the identity needs n >= 2
    for n in range(2, 60):
        fp = frac_power(phi, n, prec=80)
        assert fp.nearest == lucas(n)
        # ||phi^n|| = |phi'|^n = phi^-n
        want = ((1 + math.sqrt(5)) / 2) ** -n
        assert abs(float(fp.dist.mid) / want - 1) < 1e-12


def test_pisot_decay():
    # Pisot: dist(n) <= C * l**n with l the modulus of the other conjugate
    x = root("-1,-3,1")   # (3+sqrt(13))/2, conjugate -0.3028
    l = (3 - math.sqrt(13)) / -2
    for n in range(5, 60, 7):
        fp = frac_power(x, n, prec=64)
        assert float(fp.dist.hi) <= 2 * l ** n


# random polynomials of degree <= 6, coefficients <= 50
polys = st.lists(st.integers(-50, 50), min_size=2, max_size=7).filter(
    lambda c: c[-1] != 0 and any(c[:-1]))


@settings(max_examples=200, deadline=None)
@given(polys)
def test_schur_matches_numeric(c):
    p = squarefree_part(IntPolynomial(c))
    want = numeric_inside_count(p.coeffs)
    if want is None or unit_circle_roots(p):
        return
    assert schur_cohn_inside(p) == want


@settings(max_examples=200, deadline=None)
@given(polys)
def test_sturm_matches_numeric(c):
    p = squarefree_part(IntPolynomial(c))
    r = np.roots(list(reversed(p.coeffs)))
    near = [z for z in r if abs(z.imag) < 1e-6]
    far = [z for z in r if abs(z.imag) > 1e-3]
    if len(near) + len(far) != len(r):
        return
    iv = sturm_isolate(p)
    assert len(iv) == len(near)
    for (lo, hi), z in zip(iv, sorted(z.real for z in near)):
        assert lo <= z + 1e-6 and z - 1e-6 <= hi


@settings(max_examples=50, deadline=None)
@given(polys, st.integers(1, 25))
def test_residue_matches_powering(c, n):
    p = squarefree_part(IntPolynomial(c))
    for x in real_roots(p):
        for prec in (40, 80):
            enc = refine_root(x, prec)
            ev = eval_residue(power_residue(x, n), enc, prec + 64)
            lo, hi = enc.lo, enc.hi
            if lo >= 0:
                direct = iv_pow(enc, n, prec + 64)
                assert max(ev.lo, direct.lo) <= min(ev.hi, direct.hi)
            else:
                # the exact value x**n lies between the images of the endpoints
                vals = sorted((lo ** n, hi ** n)) if hi <= 0 else None
                if vals:
                    assert max(ev.lo, vals[0]) <= min(ev.hi, vals[1])


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(1, 30))
def test_frac_power_distance_is_certified(c, n):
    p = squarefree_part(IntPolynomial(c))
    roots = [x for x in real_roots(p) if not x.is_rational]
    for x in roots[-1:]:
        fp = frac_power(x, n, prec=32)
        assert not fp.ambiguous
        assert 0 <= fp.dist.lo <= fp.dist.hi <= Fraction(1, 2)
        assert fp.value.lo - fp.nearest <= fp.dist.hi
