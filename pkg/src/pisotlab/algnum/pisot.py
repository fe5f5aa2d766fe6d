"""Pisot and pseudo-Pisot classification of a selected real root."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import IntPolynomial, squarefree_part
from .roots import AlgebraicReal, rational_roots
from .schur import schur_cohn_inside, unit_circle_roots


class ReducibleError(ValueError):
    """The defining polynomial visibly factors over Q."""


class PisotKind(enum.Enum):
    PISOT = "Pisot"
    PSEUDO_PISOT_NON_INTEGER = "PseudoPisotNonInteger"
    # algebraic integer below -1 whose conjugates lie inside the disk
    PSEUDO_PISOT_NEGATIVE = "PseudoPisotNegative"
    NEITHER = "Neither"


@dataclass(frozen=True)
class PisotClassification:
    kind: PisotKind
    trace: Fraction
    degree: int
    monic: bool
    inside_count: int | None
    unit_circle_roots: int
    root_enclosure: tuple[Fraction, Fraction]
    notes: tuple[str, ...] = field(default=())

    @property
    def is_pseudo_pisot(self) -> bool:
        return self.kind is not PisotKind.NEITHER

    @property
    def is_pisot(self) -> bool:
        return self.kind is PisotKind.PISOT

    @property
    def others_inside(self) -> bool:
        return self.inside_count == self.degree - 1 and self.unit_circle_roots == 0


def check_irreducible_screen(p: IntPolynomial) -> None:
    """Reject polynomials with a rational root or a repeated factor.

    This is a screen, not a proof, beyond degree 3.
    """
    if p.degree >= 2 and rational_roots(p):
        raise ReducibleError(f"{p} has a rational root")
    if squarefree_part(p) != p:
        raise ReducibleError(f"{p} is not squarefree")


def certify_outside_unit_interval(x: AlgebraicReal, max_steps: int = 4096) -> AlgebraicReal:
    """Refine x until its isolate lies in (-inf, -1) or (1, inf); error if |x| <= 1."""
    r = x
    for _ in range(max_steps):
        if r.lo > 1 or r.hi < -1:
            return r
        if -1 <= r.lo and r.hi <= 1:
            raise ValueError(f"selected root has |x| <= 1: {x}")
        r = r.bisect()
    raise ValueError("could not separate the root from +-1")


def classify_pisot(x: AlgebraicReal, screen: bool = True) -> PisotClassification:
    """Decide Pisot / pseudo-Pisot for the selected root of a minimal polynomial.

    The modulus conditions are exact: unit-circle roots are counted by
    :func:`unit_circle_roots` and the remaining roots by Schur-Cohn.  The
    selected root is outside the closed disk, so "all other conjugates inside"
    means exactly ``degree - 1`` roots inside.
    """
    p = x.poly
    if screen:
        check_irreducible_screen(p)
    r = certify_outside_unit_interval(x)
    d = p.degree
    trace = Fraction(-p.coeffs[d - 1], p.coeffs[d])
    monic = p.is_monic
    circle = unit_circle_roots(p)
    enclosure = (r.lo, r.hi)
    if circle:
        return PisotClassification(PisotKind.NEITHER, trace, d, monic, None, circle, enclosure,
                                   ("conjugate on the unit circle",))
    inside = schur_cohn_inside(p)
    notes = []
    if inside != d - 1:
        kind = PisotKind.NEITHER
        notes.append(f"{d - 1 - inside} other conjugate(s) outside the unit disk")
    elif monic:
        kind = PisotKind.PISOT if r.lo > 1 else PisotKind.PSEUDO_PISOT_NEGATIVE
    elif trace.denominator == 1:
        kind = PisotKind.PSEUDO_PISOT_NON_INTEGER
    else:
        kind = PisotKind.NEITHER
        notes.append("trace is not an integer")
    return PisotClassification(kind, trace, d, monic, inside, circle, enclosure, tuple(notes))
