"""Acceptance criteria 1-10.

Each test is one criterion; tests/conftest.py prints a PASS/FAIL line per
criterion at the end of the run.  ``python3 tests/test_acceptance.py`` runs
just this file.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from oracles import lucas, numeric_inside_count, numeric_period
from pisotlab.algnum import (AlgebraicReal, IntPolynomial, PisotKind, classify_pisot, frac_power,
                             refine_root, schur_cohn_inside, squarefree_part, unit_circle_roots)
from pisotlab.cfrac import (BelowValidityThreshold, ContinuedFraction, convergents, expand,
                            is_reduced, period_of_power_table, unit_cf_closed_form)
from pisotlab.liouville import (BetaSchedule, ConstructionTrace, construct, validate_trace,
                                verify_certificates)
from pisotlab.mahlerlab import (exp_liouville, exp_mahler_rational, exp_theorem1, exp_theorem2,
                                report_emit, scan_main_theorem)
from pisotlab.mahlerlab.report import FORMATS
from pisotlab.quadirr import QuadIrr, RationalInputError

pytestmark = pytest.mark.acceptance

SEED = 20240601


def random_surds(rng: random.Random, count: int) -> list[QuadIrr]:
    out = []
    while len(out) < count:
        a = rng.randint(-100, 100)
        b = rng.choice([v for v in range(-100, 101) if v])
        c = rng.randint(1, 100)
        D = rng.randint(2, 9999)
        try:
            x = QuadIrr.normalize(a, b, c, D)
        except RationalInputError:
            continue
        if x.D < 10 ** 4:
            out.append(x)
    return out


def test_criterion_01_cf_soundness():
    start = time.perf_counter()
    surds = random_surds(random.Random(SEED), 1000)
    for x in surds:
        cf = expand(x)
        # the fixed-point quadratic of the period, folded through the preperiod
        assert cf.evaluate(x.D) == x
        assert cf.is_purely_periodic == is_reduced(x)
    assert time.perf_counter() - start < 60


def test_criterion_02_convergent_laws():
    for x in random_surds(random.Random(SEED + 2), 100):
        cf = expand(x)
        conv = convergents(cf, 32)
        for h in range(31):
            p, q = conv[h]
            if h >= 2:
                a = cf.term(h)
                assert p == a * conv[h - 1][0] + conv[h - 2][0]
                assert q == a * conv[h - 1][1] + conv[h - 2][1]
            bound = Fraction(1, q * q * cf.term(h + 1))
            gap = x - Fraction(p, q)
            assert (gap - bound).sign() <= 0 and (gap + bound).sign() >= 0


UNITS = ["1+sqrt(2)", "2+sqrt(3)", "(3+sqrt(5))/2"]


def test_criterion_03_unit_closed_forms():
    checked = 0
    for text in UNITS:
        u = QuadIrr.parse(text)
        for n in range(1, 31):
            cf = expand(u ** n)
            assert len(cf.period) <= 2
            try:
                form = unit_cf_closed_form(u, n)
            except BelowValidityThreshold:
                continue
            assert cf == form
            checked += 1
    assert checked == 90


GROWTH = [("1+sqrt(3)", range(1, 15)), ("2+sqrt(7)", range(1, 15)),
          ("(1+sqrt(13))/2", range(1, 15)), ("sqrt(2)", range(1, 15, 2))]


def test_criterion_04_growth_vs_oracle():
    start = time.perf_counter()
    for text, ns in GROWTH:
        x = QuadIrr.parse(text)
        table = {r.n: r for r in period_of_power_table(x, 14)}
        lengths = []
        for n in ns:
            pre, per, terms = numeric_period(x.a, x.b, x.c, x.D, n)
            row = table[n]
            assert (row.preperiod_length, row.period_length) == (pre, per), (text, n)
            cf = expand(x ** n)
            assert [cf.term(i) for i in range(len(terms))] == terms, (text, n)
            lengths.append(per)
        increases = sum(1 for i in range(1, len(lengths)) if lengths[i] > max(lengths[:i]))
        assert increases >= 4, (text, lengths)
    assert time.perf_counter() - start < 300


def test_criterion_05_pisot_classification():
    root = lambda p: AlgebraicReal.parse(p, "largest")
    assert classify_pisot(root("X^2-X-1")).kind is PisotKind.PISOT
    x = root("2X^2-6X+1")
    assert abs(float(refine_root(x, 40).mid) - 2.8229) < 1e-4
    assert classify_pisot(x).kind is PisotKind.PSEUDO_PISOT_NON_INTEGER
    assert classify_pisot(root("2X^2-5X+1")).kind is PisotKind.NEITHER

    rng = random.Random(SEED + 5)
    done = 0
    while done < 200:
        d = rng.randint(1, 6)
        c = [rng.randint(-50, 50) for _ in range(d)] + [rng.choice([v for v in range(-50, 51) if v])]
        if not any(c[:-1]):
            continue
        p = squarefree_part(IntPolynomial(c))
        want = numeric_inside_count(p.coeffs, tol=1e-9)
        if want is None or unit_circle_roots(p):
            continue
        assert schur_cohn_inside(p) == want, c
        done += 1


def test_criterion_06_decay_rates():
    x = AlgebraicReal.parse("X^2-4X+2", "largest")
    target = math.log(2 - math.sqrt(2))
    for n in range(40, 61):
        fp = frac_power(x, n, prec=96)
        for end in (fp.dist.lo, fp.dist.hi):
            rate = math.log(end) / n
            assert abs(rate - target) < 0.05 * abs(target)
    phi = AlgebraicReal.parse("X^2-X-1", "largest")
    fp = frac_power(phi, 10, prec=32)
    assert fp.nearest == lucas(10) == 123
    # 123 - phi^10 = ((1 - sqrt(5))/2)^10 exactly
    gap = QuadIrr.parse("(1-sqrt(5))/2") ** 10
    assert (gap - fp.dist.lo).sign() >= 0 and (gap - fp.dist.hi).sign() <= 0
    assert fp.dist.width < Fraction(1, 10 ** 6)
    assert abs(float(gap) - 0.008131) < 1e-6


def test_criterion_07_mahler_rational():
    r = exp_mahler_rational(Fraction(3, 2), Fraction(1, 2), 60)
    assert len(r.rows) == 60
    for n, frac, lpow, bad in r.rows:
        v = Fraction(3, 2) ** n
        f = v - (v.numerator // v.denominator)
        assert Fraction(frac) == f
        assert Fraction(lpow) == Fraction(1, 2) ** n
        assert bad == (f <= Fraction(1, 2) ** n)


def test_criterion_08_main_theorem_converse():
    phi = AlgebraicReal.parse("X^2-X-1", "largest")
    r = scan_main_theorem(phi, 1, Fraction(1, 5), 40)
    assert r.column("n") == list(range(1, 41))
    assert set(r.column("solution")) == {"yes"}
    assert set(r.column("kind")) == {PisotKind.PISOT.value}

    x = AlgebraicReal.parse("X^2-X-3", "largest")
    assert classify_pisot(x).kind is PisotKind.NEITHER
    r = scan_main_theorem(x, 1, Fraction(1, 5), 40)
    kinds = [k for k, s in zip(r.column("kind"), r.column("solution")) if s == "yes"]
    pseudo = {k.value for k in PisotKind if k is not PisotKind.NEITHER}
    assert not pseudo & set(kinds)
    assert r.exit_code == 0


def test_criterion_09_appendix_construction():
    start = time.perf_counter()
    t = construct(BetaSchedule.default(), 4)
    validate_trace(t)
    s1 = t.steps[1]
    assert (s1.b, s1.B, s1.q) == (2, 2, 4)
    assert (s1.lo, s1.hi) == (Fraction(13, 3), Fraction(13, 3) + Fraction(1, 4))
    certs = verify_certificates(t)
    assert len(certs) == 4
    for c in certs:
        assert c.certified
        assert c.beta <= c.frac_lo and c.frac_hi <= c.beta + Fraction(1, 2 ** c.B)
        if c.n % 2 == 0:
            assert c.norm_hi <= Fraction(1, 2 ** c.B)
        else:
            assert c.norm_lo >= Fraction(1, 6)
    assert time.perf_counter() - start < 120


def _reports():
    phi = AlgebraicReal.parse("X^2-X-1", "largest")
    return [
        exp_theorem1(phi, Fraction(7, 10), 20),
        exp_theorem2(QuadIrr.parse("1+sqrt(3)"), 12),
        exp_mahler_rational(Fraction(3, 2), Fraction(1, 2), 30),
        scan_main_theorem(phi, 1, Fraction(1, 5), 15),
        exp_liouville(BetaSchedule.default(), 3),
    ]


def test_criterion_10_determinism_and_formats():
    first = [[report_emit(r, f) for f in FORMATS] for r in _reports()]
    second = [[report_emit(r, f) for f in FORMATS] for r in _reports()]
    assert first == second
    for depth in (1, 3, 5):
        t = construct(BetaSchedule.default(), depth)
        text = t.format()
        assert ConstructionTrace.parse(text) == t
        assert ConstructionTrace.parse(text).format() == text
    for x in random_surds(random.Random(SEED + 10), 200):
        cf = expand(x)
        text = cf.format()
        assert ContinuedFraction.parse(text) == cf
        assert ContinuedFraction.parse(text).format() == text


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
