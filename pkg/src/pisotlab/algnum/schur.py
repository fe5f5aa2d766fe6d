"""Exact counting of roots inside the unit disk.

The Schur transform ``T p = p(0) p - lead(p) p*`` (``p*`` the reversal) has
degree below ``deg p``; by Rouche on the unit circle, p and ``T p`` have the
same number of roots inside the disk when ``|p(0)| > |lead|``, and
``deg p - inside(T p)`` roots when ``|p(0)| < |lead|``.  Everything is
integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from .poly import IntPolynomial, poly_div, poly_gcd, squarefree_part
from .roots import count_roots, sturm_chain


class UnitCircleRootError(ValueError):
    """The polynomial has a root of modulus exactly 1."""


def unit_circle_factor(p: IntPolynomial) -> IntPolynomial:
    """gcd(p, reversal of p): holds every root z whose inverse 1/z is also a root.

    All unit-circle roots of a real polynomial lie in this factor.  A constant
    result certifies that there are none.
    """
    p = _strip_zero_roots(p)
    return poly_gcd(p, p.reversal())


def unit_circle_roots(p: IntPolynomial) -> int:
    """Number of distinct roots of p on the unit circle, decided exactly.

    The self-inversive factor g is stripped of z = +-1; what remains is
    palindromic of even degree 2m, g(z) = z^m h(z + 1/z), and its circle
    roots correspond to real roots of h in (-2, 2), counted with Sturm.
    """
    g = unit_circle_factor(squarefree_part(p))
    if g.degree == 0:
        return 0
    count = 0
    for r in (1, -1):
        lin = IntPolynomial([-r, 1])
        if g.sign_at(Fraction(r)) == 0:
            g = poly_div(g, lin)
            count += 1
    if g.degree == 0:
        return count
    h = _palindromic_to_trace_poly(g)
    chain = sturm_chain(h)
    return count + 2 * count_roots(chain, Fraction(-2), Fraction(2))


def _palindromic_to_trace_poly(g: IntPolynomial) -> IntPolynomial:
    c = g.coeffs
    if c != c[::-1] and c != tuple(-x for x in c[::-1]):
        raise AssertionError("expected a self-inversive factor")
    m = g.degree // 2
    # z^-m g(z) = c_m + sum_k c_{m+k} (z^k + z^-k), and z^k + z^-k = V_k(w)
    v_prev, v = [2], [0, 1]
    acc = [Fraction(c[m])]
    for k in range(1, m + 1):
        acc = _add(acc, [c[m + k] * x for x in v])
        v_prev, v = v, _sub(_shift(v), v_prev)
    return IntPolynomial(acc)


def _shift(a):
    return [0] + list(a)


def _add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _sub(a, b):
    return _add(a, [-x for x in b])


def _strip_zero_roots(p: IntPolynomial) -> IntPolynomial:
    c = list(p.coeffs)
    while len(c) > 1 and c[0] == 0:
        c.pop(0)
    return IntPolynomial(c)


def schur_cohn_inside(p: IntPolynomial) -> int:
    """Exact number of roots (with multiplicity) of p with |z| < 1.

    Raises :class:`UnitCircleRootError` if any root has modulus 1.
    """
    if unit_circle_roots(p):
        raise UnitCircleRootError(f"{p} has roots on the unit circle; strip unit_circle_factor first")
    c = list(p.coeffs)
    zeros = 0
    while c[0] == 0:
        c.pop(0)
        zeros += 1
    return zeros + _schur_count(c)


def _schur_count(c: list[int]) -> int:
    # inside(original) = sign * inside(current) + offset
    sign, offset = 1, 0
    padded = 0
    while len(c) > 1:
        n = len(c) - 1
        a0, an = c[0], c[-1]
        gamma = a0 * a0 - an * an
        t = [a0 * c[i] - an * c[n - i] for i in range(n)]
        if gamma == 0:
            if not any(t):
                # self-inversive without circle roots: roots pair up z <-> 1/z
                return sign * (n // 2) + offset
            # multiplying by (z - 2) adds no root in or on the disk
            padded += 1
            if padded > 4 * len(c) + 16:
                raise RuntimeError("Schur-Cohn recursion failed to make progress")
            c = [-2 * c[0]] + [c[i - 1] - 2 * c[i] for i in range(1, n + 1)] + [c[n]]
            continue
        while t and t[-1] == 0:
            t.pop()
        g = reduce(math.gcd, t)
        t = [x // g for x in t]
        if gamma < 0:
            offset += sign * n
            sign = -sign
        c = t
    return offset
