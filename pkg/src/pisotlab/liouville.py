"""A transcendental alpha >= 2 whose powers come very close to integers along
a sparse subsequence, built by nested intervals.

Start from I_0 = [2, 3] and b_0 = 1.  At step n + 1 pick the least multiple
b of n + 1 for which I_n**b is longer than 2, put B_{n+1} = B_n * b, and let
I_{n+1} be the lowest interval [q + beta, q + beta + 2**-B_{n+1}] that fits
inside I_n**b.  Every alpha in the intersection of J_n = I_n**(1/B_n) then has
frac(alpha**B_n) in [beta_n, beta_n + 2**-B_n].

All interval endpoints are exact rationals.  Dyadic arithmetic is only used
for alpha itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .exactnum import DyadicInterval, iv_pow, rational_root

DEFAULT_MAX_DEPTH = 8


class TraceError(ValueError):
    """A construction trace violates one of its defining conditions."""


class TraceConsistencyError(RuntimeError):
    """Enclosures that must nest came out disjoint (a bug, never a math fact)."""


def _default_beta(n: int) -> Fraction:
    return Fraction(1, 3) if n % 2 else Fraction(0)


def _zero_beta(n: int) -> Fraction:
    return Fraction(0)


@dataclass(frozen=True)
class BetaSchedule:
    """Targets beta_n in [0, 1/2] for the fractional parts of alpha**B_n, n >= 1."""

    name: str
    rule: Callable[[int], Fraction] = field(compare=False, repr=False)
    values: tuple[Fraction, ...] | None = None

    @classmethod
    def default(cls) -> BetaSchedule:
        """beta_n = 1/3 for odd n and 0 for even n."""
        return cls("default", _default_beta)

    @classmethod
    def zeros(cls) -> BetaSchedule:
        return cls("zeros", _zero_beta)

    @classmethod
    def from_values(cls, values: Sequence, name: str = "file") -> BetaSchedule:
        vals = tuple(Fraction(v) for v in values)
        for i, v in enumerate(vals, start=1):
            if not 0 <= v <= Fraction(1, 2):
                raise ValueError(f"beta_{i} = {v} is outside [0, 1/2]")

        def rule(n: int) -> Fraction:
            if n > len(vals):
                raise ValueError(f"schedule {name!r} has no beta_{n} (only {len(vals)} values)")
            return vals[n - 1]

        return cls(name, rule, vals)

    @classmethod
    def from_file(cls, path: str | Path) -> BetaSchedule:
        """One rational per line (beta_1 first); blank lines and '#' comments skipped."""
        vals = []
        for line in Path(path).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                vals.append(Fraction(line))
        return cls.from_values(vals, name=f"file:{Path(path).name}")

    @classmethod
    def named(cls, name: str, path: str | Path | None = None) -> BetaSchedule:
        if name == "default":
            return cls.default()
        if name == "zeros":
            return cls.zeros()
        if name == "file":
            if path is None:
                raise ValueError("schedule 'file' needs a path")
            return cls.from_file(path)
        raise ValueError(f"unknown schedule {name!r}")

    def beta(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("beta is indexed from 1")
        v = Fraction(self.rule(n))
        if not 0 <= v <= Fraction(1, 2):
            raise ValueError(f"beta_{n} = {v} is outside [0, 1/2]")
        return v


@dataclass(frozen=True)
class Step:
    """One level of the construction: I_n = [lo, hi], lo = q + beta, hi - lo = 2**-B.

    Level 0 is the seed [2, 3] with b = B = 1, q = 2 and beta = 0; it is the
    only level whose width is not 2**-B.
    """

    n: int
    b: int
    B: int
    q: int
    lo: Fraction
    hi: Fraction
    beta: Fraction

    def format(self) -> str:
        return " ".join(str(v) for v in (self.n, self.b, self.B, self.q, self.lo, self.hi, self.beta))

    @classmethod
    def parse(cls, line: str) -> Step:
        parts = line.split()
        if len(parts) != 7:
            raise TraceError(f"expected 7 fields, got {len(parts)}: {line!r}")
        n, b, B, q = (int(x) for x in parts[:4])
        lo, hi, beta = (Fraction(x) for x in parts[4:])
        return cls(n, b, B, q, lo, hi, beta)


SEED = Step(0, 1, 1, 2, Fraction(2), Fraction(3), Fraction(0))

_HEADER = "# liouville-trace v1"


@dataclass(frozen=True)
class ConstructionTrace:
    schedule: str
    steps: tuple[Step, ...]

    @property
    def depth(self) -> int:
        return self.steps[-1].n

    def __getitem__(self, n: int) -> Step:
        return self.steps[n]

    def format(self) -> str:
        lines = [f"{_HEADER} schedule={self.schedule}", "# n b B q lo hi beta"]
        lines += [s.format() for s in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> ConstructionTrace:
        lines = text.splitlines()
        if not lines or not lines[0].startswith(_HEADER):
            raise TraceError("missing trace header")
        schedule = lines[0][len(_HEADER):].strip()
        if not schedule.startswith("schedule="):
            raise TraceError("missing schedule name in header")
        steps = tuple(Step.parse(ln) for ln in lines[1:] if ln.strip() and not ln.startswith("#"))
        if not steps:
            raise TraceError("trace has no steps")
        return cls(schedule[len("schedule="):], steps)


def _next_step(prev: Step, beta: Fraction) -> Step:
    n = prev.n + 1
    b = n
    while prev.hi ** b - prev.lo ** b <= 2:
        b += n
    lo_p, hi_p = prev.lo ** b, prev.hi ** b
    B = prev.B * b
    width = Fraction(1, 1 << B)
    q = math.ceil(lo_p - beta)
    lo = q + beta
    if lo + width > hi_p:
        # cannot happen when hi_p - lo_p > 2; kept as a guard
        raise TraceConsistencyError(f"no room for I_{n} inside I_{n - 1}**{b}")
    return Step(n, b, B, q, lo, lo + width, beta)


def construct(schedule: BetaSchedule, depth: int,
              max_depth: int = DEFAULT_MAX_DEPTH) -> ConstructionTrace:
    """Run the construction to ``depth`` levels with minimal b and minimal q.

    Endpoint sizes grow like B_n bits and B_n grows at least factorially, so
    depths above ``max_depth`` are refused unless the cap is raised.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > max_depth:
        raise ValueError(f"depth {depth} exceeds the cost cap {max_depth}; raise max_depth to override")
    steps = [SEED]
    for n in range(1, depth + 1):
        steps.append(_next_step(steps[-1], schedule.beta(n)))
    return ConstructionTrace(schedule.name, tuple(steps))


def validate_trace(trace: ConstructionTrace, check_minimal: bool = True) -> None:
    """Re-check every defining condition from the raw numbers; raise TraceError on the first failure.

    This does not call :func:`construct`, so it also catches construction bugs.
    """
    steps = trace.steps
    if steps[0] != SEED:
        raise TraceError(f"level 0 must be {SEED.format()!r}")
    for prev, cur in zip(steps, steps[1:]):
        n = cur.n
        if n != prev.n + 1:
            raise TraceError(f"levels out of order at {n}")
        if cur.b < 1 or cur.b % n:
            raise TraceError(f"b_{n} = {cur.b} is not a positive multiple of {n}")
        if cur.B != prev.B * cur.b:
            raise TraceError(f"B_{n} != B_{n - 1} * b_{n}")
        if not 0 <= cur.beta <= Fraction(1, 2):
            raise TraceError(f"beta_{n} outside [0, 1/2]")
        if cur.lo != cur.q + cur.beta or cur.hi - cur.lo != Fraction(1, 1 << cur.B):
            raise TraceError(f"I_{n} is not [q + beta, q + beta + 2**-B]")
        if cur.lo < 2:
            raise TraceError(f"I_{n} is not inside [2, oo)")
        lo_p, hi_p = prev.lo ** cur.b, prev.hi ** cur.b
        if hi_p - lo_p <= 2:
            raise TraceError(f"I_{n - 1}**b_{n} has length <= 2")
        if not (lo_p <= cur.lo and cur.hi <= hi_p):
            raise TraceError(f"I_{n} is not inside I_{n - 1}**b_{n}")
        if check_minimal:
            for smaller in range(n, cur.b, n):
                if prev.hi ** smaller - prev.lo ** smaller > 2:
                    raise TraceError(f"b_{n} = {cur.b} is not minimal ({smaller} works)")
            if cur.q - 1 + cur.beta >= lo_p:
                raise TraceError(f"q_{n} = {cur.q} is not minimal")


def alpha_enclosure(trace: ConstructionTrace, prec: int) -> DyadicInterval:
    """Outer dyadic enclosure of the intersection of J_n = I_n**(1/B_n) over the trace."""
    acc: DyadicInterval | None = None
    for s in trace.steps:
        j = rational_root(s.lo, s.hi, s.B, prec)
        if acc is None:
            acc = j
            continue
        lo = max(acc.lo, j.lo)
        hi = min(acc.hi, j.hi)
        if lo > hi:
            raise TraceConsistencyError(f"J_{s.n} misses the earlier enclosures")
        acc = acc.intersect(j)
    return acc


def required_precision(trace: ConstructionTrace) -> int:
    """Bits for :func:`alpha_enclosure` so that powering it settles every level below the last.

    Level n is settled once the error in x**B_n drops below the room left
    between I_{n+1}**(1/b_{n+1}) and the ends of I_n.  Levels with no room
    (alpha on an endpoint) are skipped; they need the exact test anyway.
    """
    bits = 64
    steps = trace.steps
    for s, nxt in zip(steps[1:-1], steps[2:]):
        slack = min(nxt.lo - s.lo ** nxt.b, s.hi ** nxt.b - nxt.hi)
        if slack <= 0:
            continue
        need = (nxt.q.bit_length() + (1 / slack).__ceil__().bit_length()
                + 2 * s.B.bit_length() + nxt.b.bit_length() + 32)
        bits = max(bits, need)
    return bits


@dataclass(frozen=True)
class Certificate:
    """Verdict on frac(alpha**B_n) in [beta_n, beta_n + 2**-B_n] for level n.

    ``status`` is "certified", "violated" or "inconclusive".  ``method`` says
    which check settled it: "interval" powers the dyadic alpha enclosure,
    "exact" compares I_N with rational powers of the level's target interval
    (N the last level), which needs no rounding at all.
    """

    n: int
    B: int
    beta: Fraction
    q: int
    status: str
    method: str
    frac_lo: Fraction | None
    frac_hi: Fraction | None
    norm_lo: Fraction | None
    norm_hi: Fraction | None
    norm_claim: str | None
    norm_ok: bool | None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _norm_bounds(f0: Fraction, f1: Fraction) -> tuple[Fraction, Fraction]:
    # distance to the nearest integer over fractional parts in [f0, f1] within [0, 1]
    lo = min(f0, 1 - f1)
    if f0 <= Fraction(1, 2) <= f1:
        hi = Fraction(1, 2)
    else:
        hi = max(min(f0, 1 - f0), min(f1, 1 - f1))
    return lo, hi


def _norm_claim(s: Step) -> str | None:
    """Which jaw of the argument the level's beta supports."""
    if s.beta == 0:
        return "<= 2^-B"
    if s.beta >= Fraction(1, 6) and s.beta + Fraction(1, 1 << s.B) <= Fraction(5, 6):
        return ">= 1/6"
    return None


def _exact_level_check(last: Step, s: Step) -> bool:
    # every x in J_N has x**B_N in I_N; with m = B_N / B_n,
    # x**B_n in [L, U] for all such x iff I_N lies in [L**m, U**m]
    m = last.B // s.B
    lo_t = s.q + s.beta
    hi_t = lo_t + Fraction(1, 1 << s.B)
    return lo_t ** m <= last.lo and last.hi <= hi_t ** m


def verify_certificates(trace: ConstructionTrace, prec: int | None = None,
                        exact_fallback: bool = True) -> list[Certificate]:
    """Certify frac(x**B_n) in [beta_n, beta_n + 2**-B_n] for all x in the trace's alpha enclosure.

    Each level is first checked by powering the dyadic enclosure of alpha.
    The last level (and any level where alpha sits on an endpoint, as with
    the all-zero schedule) can never be settled that way, because the outer
    enclosure always spills past I_N.  Those levels use the exact rational
    test unless ``exact_fallback`` is off, in which case they come back
    "inconclusive".
    """
    validate_trace(trace, check_minimal=False)
    if prec is None:
        prec = required_precision(trace)
    enc = alpha_enclosure(trace, prec)
    last = trace.steps[-1]
    out = []
    for s in trace.steps[1:]:
        width = Fraction(1, 1 << s.B)
        lo_t = s.q + s.beta
        hi_t = lo_t + width
        mant = prec + 2 * s.B.bit_length() + 8
        p = iv_pow(enc, s.B, mant)
        status, method = "inconclusive", "interval"
        f0 = f1 = None
        if lo_t <= p.lo and p.hi <= hi_t:
            status = "certified"
            f0, f1 = p.lo - s.q, p.hi - s.q
        elif p.hi < lo_t or p.lo > hi_t:
            status = "violated"
        elif exact_fallback:
            method = "exact"
            if _exact_level_check(last, s):
                status = "certified"
                f0, f1 = s.beta, s.beta + width
            else:
                status = "violated"
        claim = _norm_claim(s)
        n_lo = n_hi = None
        ok = None
        if f0 is not None:
            n_lo, n_hi = _norm_bounds(f0, f1)
            if claim == "<= 2^-B":
                ok = n_hi <= width
            elif claim == ">= 1/6":
                ok = n_lo >= Fraction(1, 6)
        out.append(Certificate(s.n, s.B, s.beta, s.q, status, method, f0, f1, n_lo, n_hi, claim, ok))
    return out
