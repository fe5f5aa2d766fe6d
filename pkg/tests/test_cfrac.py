import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exact_rational_cf, fibonacci, numeric_period
from pisotlab.cfrac import (BelowValidityThreshold, ContinuedFraction, SurdState, Unimodular,
                            apply_unimodular, convergents, expand, is_reduced, is_rotation,
                            least_period, numeric_cf_terms, partial_quotient_growth,
                            period_of_power_table, rational_cf, unit_cf_closed_form, unit_traces)
from pisotlab.quadirr import QuadIrr

phi = QuadIrr.normalize(1, 1, 2, 5)
r2 = QuadIrr.sqrt(2)
r3 = QuadIrr.sqrt(3)

# frozen from oracles.numeric_period (mpfr bracket + exact rational CF), n = 1..14
ORACLE_PERIODS = {
    "1+sqrt(3)": [2, 2, 8, 8, 8, 8, 24, 52, 52, 52, 132, 276, 292, 276],
    "(1+sqrt(13))/2": [1, 1, 6, 6, 18, 2, 39, 34, 112, 56, 2698, 16, 552, 1100],
}


@pytest.mark.parametrize("x, pre, per", [
    (r2, (1,), (2,)),
    (phi, (), (1,)),
    (2 + r3, (3,), (1, 2)),
    (QuadIrr.sqrt(7), (2,), (1, 1, 1, 4)),
])
def test_expand_examples(x, pre, per):
    cf = expand(x)
    assert cf.preperiod == pre and cf.period == per
    assert cf.evaluate() == x


def test_expand_matches_numeric_oracle_small():
    for x in (r2, phi, 2 + r3, QuadIrr.parse("(3+sqrt(7))/2"), QuadIrr.parse("(-17+3*sqrt(11))/3")):
        pre, per, terms = numeric_period(x.a, x.b, x.c, x.D, 1, prec=512)
        cf = expand(x)
        assert (len(cf.preperiod), len(cf.period)) == (pre, per)
        assert [cf.term(i) for i in range(len(terms))] == terms


@pytest.mark.parametrize("name", sorted(ORACLE_PERIODS))
def test_period_table_frozen(name):
    x = QuadIrr.parse(name)
    got = [r.period_length for r in period_of_power_table(x, 14)]
    assert got == ORACLE_PERIODS[name]


def test_period_table_rational_powers():
    rows = period_of_power_table(r2, 8)
    assert [r.period_length for r in rows[1::2]] == [0, 0, 0, 0]
    assert [r.period_length for r in rows[0::2]] == [1, 2, 4, 4]
    assert [r.period_length for r in period_of_power_table(1 + r2, 9)[0::2]] == [1] * 5


def test_is_reduced_examples():
    assert is_reduced(phi)
    assert not is_reduced(r2)
    assert not is_reduced(2 + r3)


def test_convergent_examples():
    assert convergents(expand(r2), 4) == [(1, 1), (3, 2), (7, 5), (17, 12)]
    assert convergents(expand(phi), 5) == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]
    assert convergents(expand(2 + r3), 1) == [(3, 1)]
    fib = convergents(expand(phi), 30)
    assert all(p == fibonacci(h + 2) and q == fibonacci(h + 1) for h, (p, q) in enumerate(fib))
    with pytest.raises(ValueError):
        convergents(expand(r2), 0)


def test_unimodular_examples():
    assert apply_unimodular(Unimodular(1, 0, 0, 1), phi) == phi
    assert apply_unimodular(Unimodular(0, -1, 1, 0), phi) == QuadIrr.normalize(1, -1, 2, 5)
    y = apply_unimodular(Unimodular(1, 1, 0, 1), r2)
    assert y == 1 + r2 and is_rotation(expand(y).period, expand(r2).period)
    with pytest.raises(ValueError):
        Unimodular(2, 0, 0, 1)


def test_unit_closed_form_examples():
    u = 1 + r2
    assert unit_cf_closed_form(u, 1) == ContinuedFraction((), (2,))
    assert unit_cf_closed_form(u, 2) == ContinuedFraction((5,), (1, 4))
    assert unit_cf_closed_form(2 + r3, 1) == ContinuedFraction((3,), (1, 2))
    assert unit_traces(u, 4) == [2, 2, 6, 14, 34]
    with pytest.raises(ValueError):
        unit_cf_closed_form(1 + r3, 1)
    with pytest.raises(ValueError):
        unit_cf_closed_form(QuadIrr.normalize(-1, 1, 2, 5), 1)


@pytest.mark.parametrize("u", [1 + r2, 2 + r3, QuadIrr.normalize(3, 1, 2, 5)])
def test_unit_closed_forms_to_30(u):
    for n in range(1, 31):
        try:
            form = unit_cf_closed_form(u, n)
        except BelowValidityThreshold:
            continue
        cf = expand(u ** n)
        assert cf == form
        assert len(cf.period) <= 2


def test_partial_quotient_growth_non_pisot():
    x = QuadIrr.parse("(1+sqrt(13))/2")
    rows = partial_quotient_growth(x, 1, 24)
    for r in rows:
        assert r.quotient == expand(x ** r.n).term(1)
    early = max(r.log_ratio for r in rows[:8])
    late = max(r.log_ratio for r in rows[16:])
    assert late < early / 2


def test_partial_quotient_growth_pisot():
    # 1+sqrt(3) is Pisot, so a_1(n) ~ |1-sqrt(3)|**-n on odd n and the
    # statistic tends to -log|1-sqrt(3)| rather than 0
    rows = partial_quotient_growth(1 + r3, 1, 21)
    limit = -math.log(math.sqrt(3) - 1)
    odd = [float(r.log_ratio) for r in rows if r.n % 2]
    assert [r.n for r in rows] == list(range(1, 22))
    assert abs(odd[-1] - limit) < 0.005
    assert abs(odd[-1] - limit) < abs(odd[2] - limit)
    # rational powers are skipped
    assert [r.n for r in partial_quotient_growth(r2, 1, 6)] == [1, 3, 5]
    with pytest.raises(ValueError):
        partial_quotient_growth(r2, 0, 3)


def test_numeric_cf_terms_agree():
    x = QuadIrr.parse("(1+sqrt(13))/2") ** 5
    cf = expand(x)
    assert numeric_cf_terms(x, 40) == [cf.term(i) for i in range(40)]


def test_format_parse():
    cf = ContinuedFraction((1,), (2,))
    assert cf.format() == "[1; (2)]"
    assert ContinuedFraction((), (1,)).format() == "[(1)]"
    assert ContinuedFraction((3, 7), ()).format() == "[3; 7]"
    for text in ("[1; (2)]", "[(1)]", "[3; 1, (1, 2)]", "[3; 7]", "[-4; 2, 5, (1, 1, 8)]", "[5]"):
        assert ContinuedFraction.parse(text).format() == text
    with pytest.raises(ValueError):
        ContinuedFraction.parse("1; 2")


def test_rational_cf_against_oracle():
    for x in (Fraction(415, 93), Fraction(-7, 3), Fraction(9, 4), Fraction(5)):
        assert list(rational_cf(x).preperiod) == exact_rational_cf(x)
        assert rational_cf(x).evaluate() == x


def test_least_period():
    assert least_period([1, 2, 1, 2]) == 2
    assert least_period([1, 1, 1]) == 1
    assert least_period([1, 2, 3]) == 3


def test_surd_state_invariant():
    s = SurdState.from_quadirr(QuadIrr.parse("(3+sqrt(7))/2"))
    for _ in range(30):
        assert (s.d - s.P * s.P) % s.Q == 0
        _, s = s.step()


# random canonical surds with D < 10**4 and |a|, |b|, c <= 100
def _squarefree(n):
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return n > 1


surds = st.builds(
    QuadIrr.normalize,
    st.integers(-100, 100),
    st.integers(-100, 100).filter(bool),
    st.integers(1, 100),
    st.integers(2, 9999).filter(_squarefree),
)


@settings(max_examples=300, deadline=None)
@given(surds)
def test_expand_round_trip_and_reduced(x):
    cf = expand(x)
    assert cf.evaluate(x.D) == x
    assert cf.is_purely_periodic == is_reduced(x)
    assert least_period(cf.period) == len(cf.period)
    assert all(a >= 1 for a in list(cf.preperiod[1:]) + list(cf.period))
    assert ContinuedFraction.parse(cf.format()) == cf
    assert cf.canonical() == cf


@settings(max_examples=100, deadline=None)
@given(surds)
def test_convergent_laws(x):
    cf = expand(x)
    conv = convergents(cf, 32)
    for h in range(2, 31):
        (p0, q0), (p1, q1), (p2, q2) = conv[h - 2], conv[h - 1], conv[h]
        a = cf.term(h)
        assert p2 == a * p1 + p0 and q2 == a * q1 + q0
        assert q2 > q1
    for h in range(0, 31):
        p, q = conv[h]
        assert p * conv[h + 1][1] - q * conv[h + 1][0] in (1, -1)
        gap = x - Fraction(p, q)
        bound = Fraction(1, q * q * cf.term(h + 1))
        # exact: |x - p/q| <= bound, compared through signs of surds
        assert (gap - bound).sign() <= 0 and (gap + bound).sign() >= 0


@settings(max_examples=200, deadline=None)
@given(surds)
def test_related_periods_agree(x):
    n = len(expand(x).period)
    for y in (abs(x), abs(x.conjugate()), abs(1 / x), abs(1 / x.conjugate())):
        assert len(expand(y).period) == n


_R = range(-10, 11)
unimodular = st.sampled_from([(a, b, c, d) for a in _R for b in _R for c in _R for d in _R
                              if abs(a * d - b * c) == 1])


@settings(max_examples=200, deadline=None)
@given(surds, unimodular)
def test_unimodular_invariance(x, t):
    T = Unimodular(*t)
    y = apply_unimodular(T, x)
    assert is_rotation(expand(y).period, expand(x).period)
