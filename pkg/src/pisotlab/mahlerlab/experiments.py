"""Desk-scale experiments on fractional parts of powers and continued fractions of powers.

The theorems being probed are asymptotic, so every verdict here is a proxy
("looks infinite", "trend increases") that is labelled as such.  Rows only
count as hits or solutions when their certified enclosures decide it.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..algnum import (AlgebraicReal, PisotKind, classify_pisot, frac_power, power_as_algebraic,
                      power_poly, weil_height)
from ..algnum.pisot import certify_outside_unit_interval
from ..algnum.powers import PRECISION_CAP
from ..cfrac import expand, period_of_power_table, unit_cf_closed_form, unit_traces
from ..exactnum import DyadicInterval, floor_log2, iv_pow, rational_root
from ..liouville import BetaSchedule, construct, verify_certificates
from ..liouville import DEFAULT_MAX_DEPTH
from ..quadirr import QuadIrr
from .report import CONSISTENT, INCONCLUSIVE, INCONSISTENT, ExperimentReport, rat, sci

DEFAULT_PREC = 256
RESTRICTIVE_RHS = Fraction(1, 4)


def quad_as_algebraic(x: QuadIrr) -> AlgebraicReal:
    """The root of x's minimal polynomial that equals x."""
    enc = x.enclose(64)
    return AlgebraicReal.from_enclosure(x.min_poly(), enc.lo, enc.hi)


def _describe(x: AlgebraicReal) -> str:
    return f"root of {x.poly} in [{sci(x.lo, 8, 'floor')}, {sci(x.hi, 8, 'ceil')}]"


def _bits_for(value_log2: float, prec: int) -> int:
    return max(prec, math.ceil(value_log2) + 32)


# Theorem 1: ||alpha^n|| < l^n infinitely often forces a Pisot power -------


def exp_theorem1(x: AlgebraicReal, l, N: int, prec: int = 64, power_cap: int = 6,
                 density=Fraction(1, 2), cap: int = PRECISION_CAP) -> ExperimentReport:
    """Table of certified ||x**n|| against l**n for n = 1..N.

    The verdict calls the hits "infinite-looking" when at least ``density``
    of the rows in the second half are certified hits.  That is only
    consistent with the theorem if some power x**n with n <= ``power_cap``
    classifies as Pisot.
    """
    l = Fraction(l)
    if not 0 < l < 1:
        raise ValueError("l must lie in (0, 1)")
    if N < 1:
        raise ValueError("N must be positive")
    x = certify_outside_unit_interval(x)
    if x.lo < 1:
        raise ValueError("x must be > 1")
    rows = []
    log_l = math.log2(l.numerator) - math.log2(l.denominator)
    for n in range(1, N + 1):
        ln = l ** n
        fp = frac_power(x, n, prec=_bits_for(-n * log_l, prec), cap=cap)
        if fp.ambiguous:
            rows.append((n, None, None, None, sci(ln), "undecided"))
            continue
        if fp.dist.hi < ln:
            hit = "yes"
        elif fp.dist.lo >= ln:
            hit = "no"
        else:
            hit = "undecided"
        rows.append((n, fp.nearest, sci(fp.dist.lo, rounding="floor"),
                     sci(fp.dist.hi, rounding="ceil"), sci(ln), hit))

    powers = []
    for n in range(1, min(power_cap, N) + 1):
        u = power_as_algebraic(x, n)
        powers.append((n, classify_pisot(u, screen=False).kind))
    pisot_powers = [n for n, k in powers if k is PisotKind.PISOT]

    tail = rows[N // 2:]
    hits = sum(r[-1] == "yes" for r in tail)
    undecided = sum(r[-1] == "undecided" for r in tail)
    need = math.ceil(density * len(tail))
    notes = [f"powers classified for n <= {min(power_cap, N)}: "
             + ", ".join(f"{n}:{k.value}" for n, k in powers),
             "'infinite-looking' is a finite-range proxy: "
             f">= {density} of the rows n > {N // 2} are certified hits"]
    rate = _observed_log_rate(rows)
    if rate is not None:
        notes.append(f"observed log||x^n||/n slope over the last quarter: {rate:.6f}")
    looks_infinite = hits >= need
    if looks_infinite and pisot_powers:
        status = CONSISTENT
        verdict = f"hits look infinite and x^{pisot_powers[0]} is Pisot: consistent with Theorem 1"
    elif looks_infinite:
        status = INCONSISTENT
        verdict = "hits look infinite but no computed power is Pisot"
    elif hits + undecided >= need:
        status = INCONCLUSIVE
        verdict = "undecided rows could change the density verdict; raise precision"
    else:
        status = CONSISTENT
        verdict = (f"hits die off ({hits}/{len(tail)} in the second half): consistent with Theorem 1"
                   + ("" if pisot_powers else " (no Pisot power found)"))
    params = {"x": _describe(x), "l": rat(l), "N": N, "prec": prec, "power_cap": power_cap,
              "density": rat(density)}
    return ExperimentReport("thm1", params,
                            ("n", "nearest", "dist_lo", "dist_hi", "l_pow", "hit"),
                            tuple(rows), status, verdict, tuple(notes),
                            series=("dist_lo", "dist_hi", "l_pow"),
                            metadata={"precision_cap": cap})


def _observed_log_rate(rows) -> float | None:
    # slope of ln(dist) against n over the last quarter, from the printed bounds
    pts = [(r[0], float(r[3])) for r in rows if r[3] is not None and float(r[3]) > 0]
    pts = pts[len(pts) - max(2, len(pts) // 4):]
    if len(pts) < 2 or pts[-1][0] == pts[0][0]:
        return None
    (n0, d0), (n1, d1) = pts[0], pts[-1]
    return (math.log(d1) - math.log(d0)) / (n1 - n0)


# Theorem 2: periods of continued fractions of powers -----------------------


def _running_max_increases(values) -> tuple[list[int], int]:
    best, out, increases = None, [], 0
    for v in values:
        if best is None or v > best:
            if best is not None:
                increases += 1
            best = v
        out.append(best)
    return out, increases


def exp_theorem2(x: QuadIrr, N: int, min_increases: int = 4) -> ExperimentReport:
    """Period lengths of the expansions of x**n, n = 1..N, checked against the trichotomy.

    Units must match the closed forms exactly (period at most 2).  Square
    roots of rationals must give finite expansions at even n.  Otherwise the
    period should grow; "grows" is proxied by at least ``min_increases``
    strict increases of the running maximum, over odd n for square roots.
    """
    if not isinstance(x, QuadIrr):
        raise ValueError("x must be a quadratic irrational")
    if x.sign() <= 0:
        raise ValueError("x must be positive")
    cls = x.classify()
    kind = "unit" if cls.is_unit else "sqrt-rational" if cls.is_sqrt_of_rational else "other"
    table = period_of_power_table(x, N)
    tracked = [r for r in table if kind != "sqrt-rational" or r.n % 2]
    running, increases = _running_max_increases([r.period_length for r in tracked])
    run_by_n = dict(zip((r.n for r in tracked), running))
    rows = []
    mismatches = []
    traces = unit_traces(x, N) if kind == "unit" else None
    for r in table:
        note = None
        if kind == "unit" and x > 1:
            try:
                closed = unit_cf_closed_form(x, r.n)
            except ValueError:
                note = "below threshold"
            else:
                ok = expand(x ** r.n).canonical() == closed
                note = "matches" if ok else "MISMATCH"
                if not ok:
                    mismatches.append(r.n)
        rows.append((r.n, r.preperiod_length, r.period_length, run_by_n.get(r.n),
                     traces[r.n] if traces else None, note))
    notes = [f"x is classified {kind} (trace {rat(cls.trace)}, norm {rat(cls.norm)})"]
    if kind == "unit":
        worst = max(r.period_length for r in table)
        if mismatches or worst > 2:
            status, verdict = INCONSISTENT, f"unit powers leave the closed forms at n = {mismatches}"
        else:
            status, verdict = CONSISTENT, "bounded (unit): every period is at most 2"
    elif kind == "sqrt-rational":
        bad = [r.n for r in table if r.n % 2 == 0 and r.period_length != 0]
        if bad:
            status, verdict = INCONSISTENT, f"even powers should be rational, not at n = {bad}"
        elif increases >= min_increases:
            status = CONSISTENT
            verdict = f"unbounded trend (odd n): running max increased {increases} times"
        else:
            status = INCONCLUSIVE
            verdict = f"odd-n running max increased only {increases} times; extend N"
    else:
        if increases >= min_increases:
            status = CONSISTENT
            verdict = f"unbounded trend (non-unit): running max increased {increases} times"
        else:
            status = INCONCLUSIVE
            verdict = f"running max increased only {increases} times; extend N"
    if kind != "unit":
        notes.append(f"growth proxy: >= {min_increases} strict increases of the running max")
    params = {"x": x.format(), "N": N, "min_increases": min_increases}
    return ExperimentReport("thm2", params,
                            ("n", "preperiod", "period", "running_max", "trace", "closed_form"),
                            tuple(rows), status, verdict, tuple(notes),
                            series=("period", "running_max"))


# Mahler: frac((p/q)^n) > l^n with finitely many exceptions ------------------


def exp_mahler_rational(r, l, N: int) -> ExperimentReport:
    """Exact table of frac(r**n) against l**n; a row is a violation when frac <= l**n."""
    r, l = Fraction(r), Fraction(l)
    if r.denominator == 1:
        raise ValueError("r must be rational but not an integer")
    if r <= 1:
        raise ValueError("r must exceed 1")
    if not 0 < l < 1:
        raise ValueError("l must lie in (0, 1)")
    rows = []
    violations = []
    p = Fraction(1)
    ln = Fraction(1)
    for n in range(1, N + 1):
        p *= r
        ln *= l
        f = p - math.floor(p)
        bad = f <= ln
        if bad:
            violations.append(n)
        rows.append((n, rat(f), rat(ln), bad))
    verdict = (f"{len(violations)} violation(s) up to n = {N}"
               + (f": n in {violations}, last at n = {violations[-1]}" if violations else ""))
    params = {"r": rat(r), "l": rat(l), "N": N}
    return ExperimentReport("mahler", params, ("n", "frac", "l_pow", "violation"), tuple(rows),
                            CONSISTENT, verdict,
                            ("a finite range cannot refute a finiteness statement",),
                            series=("frac", "l_pow"))


def mahler_violations(r, l, N: int) -> list[int]:
    rep = exp_mahler_rational(r, l, N)
    return [row[0] for row in rep.rows if row[3]]


# Main Theorem scan: 0 < ||delta q u|| < H(u)^-eps q^(-d-eps) --------------


def _pow_frac_exponent(v: DyadicInterval, num: int, den: int, prec: int) -> DyadicInterval:
    """Enclosure of v**(num/den) for v >= 1 and num >= 0."""
    if num == 0:
        return DyadicInterval.exact(1, 1, prec)
    p = iv_pow(v.with_prec(prec), num, prec)
    return rational_root(p.lo, p.hi, den, prec) if den > 1 else p


def _rhs(H: DyadicInterval, n: int, q: int, d: int, eps: Fraction, prec: int) -> DyadicInterval:
    # H^{-eps n} * q^{-d-eps}, all factors >= 1 before the reciprocal
    a, b = eps.numerator, eps.denominator
    hn = _pow_frac_exponent(H, a * n, b, prec)
    qd = _pow_frac_exponent(DyadicInterval.exact(q, q, prec), a + d * b, b, prec)
    return (hn * qd).reciprocal(prec)


def scan_main_theorem(x: AlgebraicReal, delta, eps, n_max: int, q_max: int = 1,
                      prec: int = 64, cap: int = PRECISION_CAP,
                      tail_share=Fraction(1, 2)) -> ExperimentReport:
    """Certified scan of 0 < ||delta q x^n|| < H(x^n)^-eps q^(-d-eps) over q <= q_max, n <= n_max.

    Only the cyclic group generated by x is scanned.  d is the degree of
    u = x^n and H(u) = H(x)^n.  Each certified solution is classified; the
    verdict is "inconsistent" only when non-pseudo-Pisot solutions fill at
    least ``tail_share`` of the last quarter of the n range (the theorem
    allows finitely many).
    """
    delta, eps = Fraction(delta), Fraction(eps)
    if delta == 0:
        raise ValueError("delta must be nonzero")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if x.is_rational:
        raise ValueError("x must be irrational")
    x = certify_outside_unit_interval(x)
    H = weil_height(x, prec)
    h_hi = float(H.hi)
    rows = []
    solutions = []
    rhs_values = []
    for n in range(1, n_max + 1):
        u_poly = power_poly(x, n)
        d = u_poly.degree
        for q in range(1, q_max + 1):
            scale = delta * q
            need = _bits_for(float(eps) * n * math.log2(h_hi) + (d + float(eps)) * math.log2(q)
                             + max(0, floor_log2(abs(scale)) + 1), prec)
            rhs = _rhs(H, n, q, d, eps, need + 16)
            if d == 1:
                # u is rational, so ||delta q u|| is exact
                u = Fraction(-u_poly.coeffs[0], u_poly.coeffs[1])
                v = scale * u
                dist = abs(v - round(v))
                d_lo = d_hi = dist
            else:
                fp = frac_power(x, n, prec=need, scale=scale, cap=cap)
                if fp.ambiguous:
                    d_lo = d_hi = None
                else:
                    d_lo, d_hi = fp.dist.lo, fp.dist.hi
            if d_lo is None:
                sol = "undecided"
            elif d_hi == 0 or (d == 1 and d_lo >= rhs.hi):
                sol = "no"
            elif d_lo > 0 and d_hi < rhs.lo:
                sol = "yes"
            elif d_lo >= rhs.hi:
                sol = "no"
            else:
                sol = "undecided"
            kind = None
            if sol == "yes":
                kind = _classify_scaled_power(x, n, scale)
                solutions.append((n, q, kind))
            rhs_values.append(rhs.hi)
            rows.append((q, n, d, sci(d_lo, rounding="floor"), sci(d_hi, rounding="ceil"),
                         sci(rhs.lo, rounding="floor"), sci(rhs.hi, rounding="ceil"), sol, kind))
    pp = {PisotKind.PISOT.value, PisotKind.PSEUDO_PISOT_NON_INTEGER.value,
          PisotKind.PSEUDO_PISOT_NEGATIVE.value}
    bad = [(n, q) for n, q, k in solutions if k not in pp]
    # only rows whose bound is restrictive (a random distance would pass
    # less than half the time) say anything about persistence
    tail_start = n_max - max(1, n_max // 4) + 1
    tail = {(r[1], r[0]) for r, rhs in zip(rows, rhs_values)
            if r[1] >= tail_start and rhs <= RESTRICTIVE_RHS}
    bad_tail = sum(1 for key in bad if key in tail)
    undecided_tail = sum(1 for r in rows if (r[1], r[0]) in tail and r[7] == "undecided")
    notes = [f"H(x) in [{sci(H.lo, 12, 'floor')}, {sci(H.hi, 12, 'ceil')}]",
             "only the cyclic group generated by x is scanned",
             f"{len(solutions)} certified solution(s), {len(bad)} not pseudo-Pisot",
             f"persistence proxy: non-pseudo-Pisot solutions in >= {tail_share} of the rows "
             f"n >= {tail_start} with bound <= {RESTRICTIVE_RHS}"]
    if tail and bad_tail >= tail_share * len(tail):
        status = INCONSISTENT
        verdict = "non-pseudo-Pisot solutions persist into the last quarter of the range"
    elif tail and bad_tail + undecided_tail >= tail_share * len(tail):
        status = INCONCLUSIVE
        verdict = f"{undecided_tail} undecided row(s) could change the verdict; raise precision"
    elif bad and not tail:
        status = INCONCLUSIVE
        verdict = (f"{len(bad)} non-pseudo-Pisot solution(s) but the bound is not yet "
                   "restrictive in the last quarter; extend n_max")
    elif solutions and not bad:
        status = CONSISTENT
        verdict = (f"{len(solutions)} solution(s), all pseudo-Pisot: "
                   "consistent with the Main Theorem and its converse")
    else:
        status = CONSISTENT
        verdict = (f"{len(bad)} non-pseudo-Pisot solution(s)"
                   + (f" (last at n = {max(n for n, _ in bad)})" if bad else "")
                   + ": finitely many within range, consistent with the Main Theorem")
    params = {"x": _describe(x), "delta": rat(delta), "eps": rat(eps), "n_max": n_max,
              "q_max": q_max, "prec": prec}
    return ExperimentReport("scan11", params,
                            ("q", "n", "deg_u", "dist_lo", "dist_hi", "rhs_lo", "rhs_hi",
                             "solution", "kind"),
                            tuple(rows), status, verdict, tuple(notes),
                            series=("dist_hi", "rhs_lo"), metadata={"precision_cap": cap})


def _classify_scaled_power(x: AlgebraicReal, n: int, scale: Fraction) -> str:
    u = power_as_algebraic(x, n, scale)
    try:
        return classify_pisot(u, screen=False).kind.value
    except ValueError:
        # |delta q x^n| <= 1 rules out pseudo-Pisot
        return PisotKind.NEITHER.value


# Liouville-type construction -----------------------------------------------


def exp_liouville(schedule: BetaSchedule, depth: int, prec: int | None = None,
                  max_depth: int = DEFAULT_MAX_DEPTH) -> ExperimentReport:
    """Build the nested-interval trace and certify every level's fractional part."""
    trace = construct(schedule, depth, max_depth=max_depth)
    certs = verify_certificates(trace, prec)
    rows = []
    for s, c in zip(trace.steps[1:], certs):
        rows.append((s.n, s.b, s.B, str(s.q), rat(s.beta), c.status, c.method,
                     sci(c.frac_lo, rounding="floor"), sci(c.frac_hi, rounding="ceil"),
                     c.norm_claim, c.norm_ok))
    statuses = {c.status for c in certs}
    if "violated" in statuses or any(c.norm_ok is False for c in certs):
        status, verdict = INCONSISTENT, "a level failed its certificate"
    elif "inconclusive" in statuses:
        status, verdict = INCONCLUSIVE, "some levels need more precision"
    else:
        status = CONSISTENT
        verdict = f"all {len(certs)} levels certified"
    params = {"schedule": schedule.name, "depth": depth,
              "prec": "auto" if prec is None else prec}
    return ExperimentReport("liouville", params,
                            ("n", "b", "B", "q", "beta", "status", "method", "frac_lo",
                             "frac_hi", "norm_claim", "norm_ok"),
                            tuple(rows), status, verdict,
                            (f"trace:\n{trace.format()}",),
                            series=("B",))
